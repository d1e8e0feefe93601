#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <random>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fode/analysis_kernels.hpp"
#include "fode/caputo_operator.hpp"
#include "fode/grid.hpp"
#include "fode/solver.hpp"
#include "fode/special_functions.hpp"
#include "fode/weights.hpp"

namespace fode {

struct Violation {
    std::string item;
    double nu = 0;
    long index = 0;
    long sub = -1;  // secondary index (k in d_k^j, m in the P identity, ...)
    double lhs = 0;
    double rhs = 0;
};

struct CheckReport {
    std::string name;
    std::string grid;  // human-readable description of what was sampled
    std::vector<Violation> violations;
    std::size_t evaluated = 0;
    std::vector<std::pair<std::string, double>> metrics;

    bool passed() const noexcept { return violations.empty(); }
};

struct VerificationConfig {
    double pi_b = 9;
    std::vector<double> nu_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::size_t index_max = 200;
    std::size_t kernel_n_max = 64;
    double kernel_dx = 1.0 / 64;
    double tolerance = 1e-12;
    std::vector<double> appendix_nu_grid{0.01, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30,
                                         0.35, 0.40, 0.45, 0.50, 0.55, 0.60, 0.65,
                                         0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.99};
    std::size_t appendix_k_max = 500;
    std::vector<double> mu_grid{0.5, 1.0, 5.0};
    unsigned seed = 20190611u;
    std::size_t random_trials = 8;

    void validate() const {
        if (!(pi_b > 0)) throw ConfigError("verification: pi_b must be positive");
        if (nu_grid.empty()) throw ConfigError("verification: empty nu grid");
        for (double nu : nu_grid)
            if (!(nu > 0 && nu < 1)) throw ConfigError("verification: nu grid must lie in (0, 1)");
        for (double nu : appendix_nu_grid)
            if (!(nu > 0 && nu < 1)) throw ConfigError("verification: nu grid must lie in (0, 1)");
        if (index_max < 4) throw ConfigError("verification: index_max must be at least 4");
        if (kernel_n_max < 3) throw ConfigError("verification: kernel_n_max must be at least 3");
        if (appendix_k_max < 2) throw ConfigError("verification: appendix_k_max must be >= 2");
        if (!(kernel_dx > 0)) throw ConfigError("verification: kernel_dx must be positive");
        if (!(tolerance >= 0)) throw ConfigError("verification: tolerance must be >= 0");
    }
};

namespace detail {

inline std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

inline std::string nu_range(const std::vector<double>& g) {
    return fmt("nu in [%g, %g] (%g points)", g.front(), g.back(), double(g.size()));
}

// Records lhs >= rhs (or lhs > rhs) allowing tol * scale of roundoff.
struct Recorder {
    CheckReport& r;
    double tol;

    void ge(const std::string& item, double nu, long idx, double lhs, double rhs,
            double scale = 0, long sub = -1) {
        ++r.evaluated;
        const double s = std::max({1.0, std::abs(lhs), std::abs(rhs), scale});
        if (!(lhs >= rhs - tol * s)) r.violations.push_back({item, nu, idx, sub, lhs, rhs});
    }
    void le(const std::string& item, double nu, long idx, double lhs, double rhs,
            double scale = 0, long sub = -1) {
        ++r.evaluated;
        const double s = std::max({1.0, std::abs(lhs), std::abs(rhs), scale});
        if (!(lhs <= rhs + tol * s)) r.violations.push_back({item, nu, idx, sub, lhs, rhs});
    }
    void near(const std::string& item, double nu, long idx, double lhs, double rhs,
              double atol, long sub = -1) {
        ++r.evaluated;
        if (!(std::abs(lhs - rhs) <= atol))
            r.violations.push_back({item, nu, idx, sub, lhs, rhs});
    }
};

}  // namespace detail

// Lemma on the normalized coefficients d_k^j, j >= 4.
inline CheckReport check_lemma_3_1(const VerificationConfig& cfg = {}) {
    cfg.validate();
    CheckReport rep{"lemma_3_1", detail::nu_range(cfg.nu_grid) +
                                     detail::fmt(", j in [4, %g]", double(cfg.index_max)),
                    {}, 0, {}};
    detail::Recorder rec{rep, cfg.tolerance};
    const double nu0 = critical_order();
    rep.metrics.emplace_back("nu0", nu0);
    double worst2 = std::numeric_limits<double>::infinity();
    for (double nu : cfg.nu_grid) {
        const Order<double> order(nu);
        const double a0 = order.alpha0();
        const double g1 = gamma_fn(1 - nu);
        for (std::size_t j = 4; j <= cfg.index_max; ++j) {
            const auto r = normalized_row(order, j);
            const long J = static_cast<long>(j);
            double sum = 0;
            for (double d : r.d) sum += d;
            // (1) roundoff of the closed forms grows with j
            rec.near("(1) sum d_k = 1", nu, J, sum, 1.0,
                     cfg.tolerance * static_cast<double>(j));
            // (2)
            for (std::size_t k = 2; k + 3 <= j; ++k) {
                const double bound = 2 * nu / (3 * a0 * g1) *
                                     std::pow(static_cast<double>(j - k), -nu - 1);
                rec.ge("(2) d_k lower bound", nu, J, r.d[k], bound, 0, long(k));
                worst2 = std::min(worst2, r.d[k] / bound);
            }
            // (3)
            rec.ge("(3) d_{j-1} > 0", nu, J, r.d[j - 1], 0);
            rec.ge("(3) d_0 > 0", nu, J, r.d[0], 0);
            rec.ge("(3) d_1 > 0", nu, J, r.d[1], 0);
            // (4) sign of d_{j-2} against the bisected nu0
            if (nu < nu0)
                rec.ge("(4) d_{j-2} > 0 below nu0", nu, J, r.d[j - 2], 0);
            else
                rec.le("(4) d_{j-2} < 0 above nu0", nu, J, r.d[j - 2], 0);
            // (5)
            const double lhs5 = 0.25 * r.d[j - 1] * r.d[j - 1] + r.d[j - 2];
            rec.ge("(5) quadratic lower bound", nu, J, lhs5,
                   std::pow(2.0, -nu) * nu / (8 * a0 * g1));
        }
    }
    // smallest d_k / bound seen in (2); below 1 means the bound is too strong
    rep.metrics.emplace_back("min_ratio_item2", worst2);
    return rep;
}

// Lemma on the transformed coefficients dbar_k^j.
inline CheckReport check_lemma_3_2(const VerificationConfig& cfg = {}) {
    cfg.validate();
    CheckReport rep{"lemma_3_2", detail::nu_range(cfg.nu_grid) +
                                     detail::fmt(", j in [3, %g]", double(cfg.index_max)),
                    {}, 0, {}};
    detail::Recorder rec{rep, cfg.tolerance};
    for (double nu : cfg.nu_grid) {
        const Order<double> order(nu);
        const double th = order.theta();
        // (1)
        const auto t3 = transformed_row(order, 3);
        rec.ge("(1) dbar_2^3 > 0", nu, 3, t3.dbar[2], 0);
        rec.le("(1) dbar_2^3 < theta", nu, 3, t3.dbar[2], th);
        rec.le("(1) theta < 2/3", nu, 3, th, 2.0 / 3);
        // closed forms against the recurrence from dbar_3^3 = -1
        const auto n3 = normalized_row(order, 3);
        const double r2 = -th + n3.d[2];
        const double r1 = th * r2 + n3.d[1];
        const double r0 = th * r1 + n3.d[0];
        rec.near("j=3 closed form = recurrence (k=2)", nu, 3, t3.dbar[2], r2, 1e-12);
        rec.near("j=3 closed form = recurrence (k=1)", nu, 3, t3.dbar[1], r1, 1e-12);
        rec.near("j=3 closed form = recurrence (k=0)", nu, 3, t3.dbar[0], r0, 1e-12);
        for (std::size_t j = 3; j <= cfg.index_max; ++j) {
            const auto t = j == 3 ? t3 : transformed_row(order, j);
            const long J = static_cast<long>(j);
            double sum = th;
            for (std::size_t k = 0; k + 2 <= j; ++k) {
                // (2)
                rec.ge("(2) dbar_k > 0", nu, J, t.dbar[k], 0, 0, long(k));
                sum += t.dbar[k];
            }
            // (3): the margin decays like theta^(j-1) and reaches roundoff for
            // moderate j, hence the slack
            rec.le("(3) theta + sum dbar_k < 1", nu, J, sum, 1.0);
        }
    }
    return rep;
}

// Bbar monotonicity and lower bound, P kernel sign, identity and bounds.
inline CheckReport check_kernel_bounds(const VerificationConfig& cfg = {}) {
    cfg.validate();
    const double dx = cfg.kernel_dx;
    CheckReport rep{"kernel_bounds",
                    detail::nu_range(cfg.nu_grid) +
                        detail::fmt(", n in [3, %g], dx = %g", double(cfg.kernel_n_max), dx),
                    {}, 0, {}};
    detail::Recorder rec{rep, cfg.tolerance};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    double worst_identity = 0;
    for (double nu : cfg.nu_grid) {
        const Order<double> order(nu);
        const KernelFamily<double> fam(order, dx, cfg.kernel_n_max);
        const double g2 = gamma_fn(2 - nu);
        const double g1 = gamma_fn(1 - nu);
        const double dxnu = std::pow(dx, nu);
        for (std::size_t n = 3; n <= cfg.kernel_n_max; ++n) {
            const long N = static_cast<long>(n);
            const auto& B = fam.bbar_row(n);
            for (std::size_t k = 0; k < n; ++k) {
                                if (k + 1 < n) rec.ge("Bbar strictly decreasing", nu, N, B[k] - B[k + 1], 0, B[k], long(k));
                rec.ge("Bbar positive", nu, N, B[k], 0, 0, long(k));
                const double lb = (std::pow(k + 1.0, 1 - nu) - std::pow(double(k), 1 - nu)) /
                                  (cfg.pi_b * dxnu * g2);
                rec.ge("Bbar lower bound", nu, N, B[k], lb, 0, long(k));
            }

            const auto P = fam.p(n).p;
            rec.near("P_{n-2} = 0", nu, N, P[n - 2], 0, 0);
            rec.near("P_{n-1} = 0", nu, N, P[n - 1], 0, 0);
            const double pmax = cfg.pi_b * g2 * dxnu;
            for (std::size_t j = 3; j <= n; ++j) {
                rec.ge("P non-negative", nu, N, P[n - j], 0, pmax, long(j));
                rec.le("P upper bound", nu, N, P[n - j], pmax, 0, long(j));
            }
            for (std::size_t m = 3; m <= n; ++m) {
                double s = 0;
                for (std::size_t j = m; j <= n; ++j) s += P[n - j] * fam.bbar(j, j - m);
                worst_identity = std::max(worst_identity, std::abs(s - 1));
                rec.near("sum P Bbar = 1", nu, N, s, 1.0, 1e-10, long(m));
            }
            double s_omega = 0, s_m1 = 0, s_m2 = 0;
            for (std::size_t j = 3; j <= n; ++j) {
                const double xj = j * dx;
                s_omega += P[n - j] * std::pow(xj, -nu) / g1;
                s_m1 += P[n - j] * fam.bbar(j, j - 1);
                s_m2 += P[n - j] * fam.bbar(j, j - 2);
            }
            rec.le("sum P omega_{1-nu} <= pi_B", nu, N, s_omega, cfg.pi_b);
            rec.le("sum P Bbar_{j-1}^j <= 1", nu, N, s_m1, 1.0);
            rec.le("sum P Bbar_{j-2}^j <= 1", nu, N, s_m2, 1.0);

            // sums of P against Caputo derivatives of x^s (monotone v')
            const double xn = n * dx;
            for (double s : {0.5, 1.0, 2.0}) {
                double acc = 0;
                const std::size_t top = s > 1 ? n - 1 : n;
                for (std::size_t j = 3; j <= top; ++j)
                    acc += P[n - j] * monomial_caputo(nu, s, j * dx);
                rec.le(s > 1 ? "sum P D^nu v <= pi_B v(x_n), v' increasing"
                             : "sum P D^nu v <= pi_B v(x_n), v' decreasing",
                       nu, N, acc, cfg.pi_b * std::pow(xn, s));
            }

            // discrete energy inequality on random ebar vectors
            for (std::size_t trial = 0; trial < cfg.random_trials; ++trial) {
                std::vector<double> e(n + 1, 0.0);
                for (std::size_t k = 2; k <= n; ++k) e[k] = unif(rng);
                double lhs = 0, rhs = 0;
                for (std::size_t k = 3; k <= n; ++k) {
                    lhs += B[n - k] * (e[k] - e[k - 1]);
                    rhs += B[n - k] * (e[k] * e[k] - e[k - 1] * e[k - 1]);
                }
                lhs *= 2 * e[n];
                rec.ge("energy inequality", nu, N, lhs, rhs, B[0]);
            }
        }
    }
    rep.metrics.emplace_back("max_identity_residual", worst_identity);
    return rep;
}

namespace detail {

using LD = long double;

inline LD binom(LD a, int k) {
    LD r = 1;
    for (int i = 0; i < k; ++i) r *= (a - i) / (i + 1);
    return r;
}

inline LD gineq_f(LD nu, LD a1, LD a2, LD a3, LD b, LD m) {
    const LD M = 2 * m;
    return (2 - nu) * (a1 * std::pow(M, 1 - nu) + a2 * std::pow(M + b, 1 - nu)) +
           a3 * (std::pow(M, 2 - nu) - std::pow(M + b, 2 - nu));
}

}  // namespace detail

// Technical inequalities of the appendix, evaluated in long double.
inline CheckReport check_appendix_a(const VerificationConfig& cfg = {}) {
    cfg.validate();
    using detail::LD;
    CheckReport rep{"appendix_a", detail::nu_range(cfg.appendix_nu_grid) +
                                      detail::fmt(", k in [2, %g]", double(cfg.appendix_k_max)),
                    {}, 0, {}};
    detail::Recorder rec{rep, cfg.tolerance};
    for (double nud : cfg.appendix_nu_grid) {
        const LD nu = nud;
        for (std::size_t kk = 2; kk <= cfg.appendix_k_max; ++kk) {
            const LD k = static_cast<LD>(kk);
            const long K = static_cast<long>(kk);
            // (1) with the coefficient implied by its proof, (1 - nu) / k^2
            {
                const LD lhs = std::pow(1 - 1 / k, 1 - nu) + std::pow(1 + 1 / k, 1 - nu);
                const LD rhs =
                    2 - (1 - nu) / (k * k) * (std::pow(LD(2), nu) - std::pow(LD(2) / 3, nu));
                rec.ge("A.1 (1)", nud, K, double(lhs - rhs), 0);
            }
            // (2)
            {
                const LD lhs = std::pow(1 - 1 / k, 2 - nu) - std::pow(1 + 1 / k, 2 - nu);
                const LD rhs = -2 * (2 - nu) / k + (2 - nu) * (1 - nu) * nu / (3 * k * k * k);
                rec.ge("A.1 (2)", nud, K, double(lhs - rhs), 0);
            }
            // (3)
            {
                const LD h = 1 / (2 * k);
                const LD t = (2 - nu) / 2 * h *
                                 (std::pow(1 - 2 * h, 1 - nu) + 3 - 4 * std::pow(1 + h, 1 - nu)) +
                             std::pow(1 - 2 * h, 2 - nu) - 3 + 2 * std::pow(1 + h, 2 - nu);
                rec.ge("A.1 (3)", nud, K, double(t), 0);
            }
        }
        const LD q = std::pow(LD(2) / 3, nu);
        rec.ge("A.1 (4)", nud, 0, double(-nu * nu - 12 + 3 * q * (nu * nu + 2 * nu + 4)), 0);
        rec.le("A.1 (5)", nud, 0,
               double(6 - nu - (2 + nu / 2) * std::pow(LD(2), nu) * std::pow(LD(3), 1 - nu)), 0);
        rec.le("A.1 (6)", nud, 0,
               double(-2 * nu * nu * nu + 12 * nu * nu - 56 * nu - 48 +
                      3 * q * (3 * nu * nu * nu + 4 * nu * nu + 20 * nu + 16)),
               0);
        rec.le("A.1 (7)", nud, 0,
               double(std::pow(LD(2), 1 - nu) * (4 - nu - (2 + nu) * std::pow(LD(2), 1 - nu)) -
                      (2 * nu - 3) * (2 - nu) * (1 - nu) * nu / 27),
               0);
        rec.ge("A.1 (8)", nud, 0,
               double(12 - nu * nu - (12 + 8 * nu + nu * nu) * std::pow(LD(2), -nu) -
                      (2 + nu) * (2 - nu) * (1 - nu) * nu / 16),
               0);

        // A.2 on generated parameter sets satisfying each case's hypotheses
        const LD bs[] = {0.25L, 0.5L, 1, 1.5L, 2, 3};
        const LD a1s[] = {-1, 0, 1, 3};
        for (int m : {1, 2, 3, 5, 10, 50}) {
            for (LD b : bs) {
                if (!(b < 2 * m)) continue;
                const LD M = 2 * m;
                const LD base = (2 - nu) * std::pow(M, 1 - nu);
                for (LD a1 : a1s) {
                    for (LD a2 : {LD(-2), LD(-1), LD(-0.5)}) {
                        for (LD r : {LD(-2), LD(-1), LD(0), LD(0.5), LD(1), LD(1.5)}) {
                            const LD a3 = r * a2 / b;
                            const LD f = detail::gineq_f(nu, a1, a2, a3, b, m);
                            LD S = 0;
                            for (int kk = 1; kk <= 2; ++kk)
                                S += detail::binom(1 - nu, kk) * (a2 - a3 * b / (kk + 1)) *
                                     std::pow(b / M, LD(kk));
                            const LD u1 = base * (a1 + a2 - a3 * b + S);
                            const LD u2 = base * (a1 + a2 - a3 * b);
                            rec.le("A.2 case 1 (refined)", nud, m, double(f / base),
                                   double(u1 / base));
                            rec.le("A.2 case 1", nud, m, double(u1 / base), double(u2 / base));
                        }
                    }
                    for (LD a2 : {LD(0.5), LD(1), LD(2)}) {
                        const LD a3 = 2 * a2 / b;
                        const LD f = detail::gineq_f(nu, a1, a2, a3, b, m);
                        const LD u = base * (a1 + a2 - a3 * b -
                                             a2 * (b / M) * (b / M) * (1 - nu) * nu / 6 *
                                                 (1 - (nu + 1) / 2 * b / M));
                        rec.le("A.2 case 2", nud, m, double(f / base), double(u / base));
                    }
                }
            }
        }
    }
    return rep;
}

// sum_{j=3}^{n-1} P_{n-j}^n E_nu(mu x_j^nu) <= pi_B / mu (E_nu(mu x_n^nu) - 1)
inline CheckReport check_mittag_leffler_bound(const VerificationConfig& cfg = {}) {
    cfg.validate();
    const double dx = cfg.kernel_dx;
    CheckReport rep{"mittag_leffler_bound",
                    detail::nu_range(cfg.nu_grid) +
                        detail::fmt(", n in [3, %g], dx = %g, %g mu values",
                                    double(cfg.kernel_n_max), dx, double(cfg.mu_grid.size())),
                    {}, 0, {}};
    detail::Recorder rec{rep, cfg.tolerance};
    std::size_t skipped = 0;
    for (double nu : cfg.nu_grid) {
        const Order<double> order(nu);
        const KernelFamily<double> fam(order, dx, cfg.kernel_n_max);
        // E_nu(z) grows like exp(z^(1/nu)); past z^(1/nu) = 300 the series is
        // neither representable nor summable within the term cap.
        const double z_max = std::min(50.0, std::pow(300.0, nu));
        for (double mu : cfg.mu_grid) {
            std::vector<double> E(cfg.kernel_n_max + 1);
            std::size_t n_top = 2;
            for (std::size_t j = 0; j <= cfg.kernel_n_max; ++j) {
                const double z = mu * std::pow(j * dx, nu);
                if (z > z_max) break;
                E[j] = mittag_leffler(nu, z);
                n_top = j;
            }
            skipped += cfg.kernel_n_max - std::max<std::size_t>(n_top, 2);
            for (std::size_t n = 3; n <= n_top; ++n) {
                const auto P = fam.p(n).p;
                double lhs = 0;
                for (std::size_t j = 3; j < n; ++j) lhs += P[n - j] * E[j];
                rec.le("mlineq mu=" + detail::fmt("%g", mu), nu, static_cast<long>(n), lhs,
                       cfg.pi_b / mu * (E[n] - 1));
            }
        }
    }
    rep.metrics.emplace_back("skipped_overflow", static_cast<double>(skipped));
    return rep;
}

// Test function with its exact Caputo derivative.
struct TruncationCase {
    std::string name;
    double nu;
    std::function<double(double)> y;
    std::function<double(double)> caputo;
    double T = 1;
    double expected_order;  // usually 3 - nu
};

// max_j |D_dx y(x_j) - D y(x_j)| on dyadic grids dx = T 2^-l; the least-squares
// slope of log2(error) against l must be within slope_tol of expected_order.
// Errors below exact_floor everywhere mean the operator is exact on y.
inline CheckReport empirical_truncation_order(const TruncationCase& tc,
                                              const std::vector<int>& levels,
                                              double slope_tol = 0.1,
                                              double exact_floor = 1e-11) {
    if (levels.size() < 2) throw ConfigError("truncation order: need at least two levels");
    CheckReport rep{"truncation_order:" + tc.name,
                    detail::fmt("nu = %g, levels %g..%g", tc.nu, double(levels.front()),
                                double(levels.back())),
                    {}, 0, {}};
    const Order<double> order(tc.nu);
    std::vector<double> ls, errs;
    for (int l : levels) {
        const std::size_t steps = std::size_t(1) << l;
        const Grid<double> grid(tc.T, steps / 2);
        std::vector<double> y(grid.points());
        for (std::size_t j = 0; j < y.size(); ++j) y[j] = tc.y(grid.x(j));
        RowBuilder<double> rows(order);
        const double s = std::pow(grid.dx(), -tc.nu);
        double err = 0, scale = 0;
        for (std::size_t j = 1; j <= grid.last(); ++j) {
            const auto row = rows.row(j);
            double acc = 0;
            for (std::size_t i = 0; i < row.size(); ++i) acc += row[i] * y[i];
            const double exact = tc.caputo(grid.x(j));
            err = std::max(err, std::abs(s * acc - exact));
            scale = std::max(scale, std::abs(exact));
        }
        ls.push_back(l);
        errs.push_back(err / std::max(1.0, scale));
        rep.metrics.emplace_back(detail::fmt("error_l%g", double(l)), err);
    }
    ++rep.evaluated;
    if (*std::max_element(errs.begin(), errs.end()) <= exact_floor) {
        rep.metrics.emplace_back("exact", 1.0);
        return rep;
    }
    const double n = static_cast<double>(ls.size());
    double sl = 0, se = 0, sll = 0, sle = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const double e = std::log2(errs[i]);
        sl += ls[i];
        se += e;
        sll += ls[i] * ls[i];
        sle += ls[i] * e;
    }
    const double slope = -(n * sle - sl * se) / (n * sll - sl * sl);
    const double last_ratio = std::log2(errs[errs.size() - 2] / errs.back()) /
                              (ls.back() - ls[ls.size() - 2]);
    rep.metrics.emplace_back("slope", slope);
    rep.metrics.emplace_back("last_order", last_ratio);
    if (!(std::abs(slope - tc.expected_order) <= slope_tol))
        rep.violations.push_back(
            {"fitted slope", tc.nu, levels.back(), -1, slope, tc.expected_order});
    return rep;
}

// f = -lambda y, y0 = 1, scheme with its coupled start; max |y_j| against
// (2 + nu) / (2 - nu).
inline CheckReport stability_experiment(const Order<double>& order, double lambda, double dx,
                                        std::size_t steps, double slack = 1e-10) {
    if (!(lambda > 0)) throw ConfigError("stability_experiment: lambda must be positive");
    if (steps < 2 || steps % 2) throw ConfigError("stability_experiment: steps must be even");
    const double nu = order.nu();
    CheckReport rep{"stability",
                    detail::fmt("nu = %g, lambda = %g, dx = %g, steps = %g", nu, lambda, dx,
                                double(steps)),
                    {}, 0, {}};
    Problem<double> p{order, 1.0, [lambda](double, double y) { return -lambda * y; },
                      [lambda](double, double) { return -lambda; }, {}, {}};
    const Grid<double> grid(dx * static_cast<double>(steps), steps / 2);
    const auto t = solve(p, grid);
    double mx = 0;
    for (double v : t.values) mx = std::max(mx, std::abs(v));
    const double bound = (2 + nu) / (2 - nu);
    rep.metrics.emplace_back("max_abs_y", mx);
    rep.metrics.emplace_back("bound", bound);
    rep.metrics.emplace_back("lambda_dx_nu", lambda * std::pow(dx, nu));
    ++rep.evaluated;
    if (!(mx <= bound + slack))
        rep.violations.push_back({"max |y_j| <= (2+nu)/(2-nu)", nu, long(steps), -1, mx, bound});
    return rep;
}

// 27 runs: nu in {0.1..0.9} x lambda dx^nu in {1e-3, 1, 1e3} on dx in {0.01, 0.1, 1}, T = 10.
inline CheckReport stability_sweep() {
    CheckReport rep{"stability_sweep", "nu in [0.1, 0.9] x lambda dx^nu in {1e-3, 1, 1e3}, T = 10",
                    {}, 0, {}};
    const std::pair<double, double> cases[] = {{1e-3, 0.01}, {1.0, 0.1}, {1e3, 1.0}};
    double worst = -1e300;
    for (int i = 1; i <= 9; ++i) {
        const double nu = i / 10.0;
        for (auto [target, dx] : cases) {
            const std::size_t steps = static_cast<std::size_t>(std::lround(10.0 / dx));
            const double lambda = target / std::pow(dx, nu);
            auto r = stability_experiment(Order<double>(nu), lambda, dx, steps);
            rep.evaluated += r.evaluated;
            worst = std::max(worst, r.metrics[0].second / r.metrics[1].second);
            for (auto& v : r.violations) rep.violations.push_back(v);
        }
    }
    rep.metrics.emplace_back("worst_max_over_bound", worst);
    return rep;
}

// Default truncation cases: y = x^(3+nu) for the given orders.
inline std::vector<TruncationCase> default_truncation_cases(
    const std::vector<double>& nus = {0.3, 0.5, 0.8}) {
    std::vector<TruncationCase> out;
    for (double nu : nus) {
        const double s = 3 + nu;
        out.push_back({detail::fmt("x^(3+nu), nu=%g", nu), nu,
                       [s](double x) { return std::pow(x, s); },
                       [nu, s](double x) { return monomial_caputo(nu, s, x); }, 1.0, 3 - nu});
    }
    return out;
}

// Every lemma check plus the default experiments, ordered by name.
inline std::vector<CheckReport> run_all(const VerificationConfig& cfg = {}) {
    std::vector<CheckReport> out;
    out.push_back(check_lemma_3_1(cfg));
    out.push_back(check_lemma_3_2(cfg));
    out.push_back(check_kernel_bounds(cfg));
    out.push_back(check_appendix_a(cfg));
    out.push_back(check_mittag_leffler_bound(cfg));
    out.push_back(stability_sweep());
    for (const auto& tc : default_truncation_cases())
        out.push_back(empirical_truncation_order(tc, {4, 5, 6, 7, 8}));
    std::sort(out.begin(), out.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
    return out;
}

}  // namespace fode
