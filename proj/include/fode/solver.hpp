#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fode/corrections.hpp"
#include "fode/errors.hpp"
#include "fode/grid.hpp"
#include "fode/weights.hpp"

namespace fode {

// D^nu y = f(x, y), y(0) = y0.
template <std::floating_point Real = double>
struct Problem {
    Order<Real> order;
    Real y0 = 0;
    std::function<Real(Real, Real)> rhs;
    std::function<Real(Real, Real)> rhs_dy;  // optional df/dy
    std::function<Real(Real)> exact;         // optional
    std::optional<Real> lipschitz_hint;
};

template <std::floating_point Real = double>
struct NewtonConfig {
    Real tol = Real(1e-13);  // on the Newton update, relative to 1 + |y|
    int max_iter = 50;
    Real fd_eps = Real(1e-7);
    int max_halvings = 30;

    void validate() const {
        if (!(tol > 0)) throw ConfigError("NewtonConfig: tol must be positive");
        if (max_iter < 1) throw ConfigError("NewtonConfig: max_iter must be at least 1");
        if (!(fd_eps > 0)) throw ConfigError("NewtonConfig: fd_eps must be positive");
        if (max_halvings < 0) throw ConfigError("NewtonConfig: max_halvings must be >= 0");
    }
};

// How y_1, y_2 are obtained: the coupled 2x2 solve of the scheme, or seeded
// from the exact solution (the problem must provide one).
enum class StartMode { coupled, exact_seed };

template <std::floating_point Real = double>
struct Trajectory {
    Grid<Real> grid;
    std::vector<Real> values;     // y_0 .. y_2N
    std::vector<int> newton_iters;  // per index; 0 for y_0 and seeded values
    std::vector<std::string> warnings;
};

template <std::floating_point Real = double>
struct InitialPair {
    Real y1;
    Real y2;
    int iters;
};

template <std::floating_point Real = double>
struct StepResult {
    Real y;
    int iters;
};

namespace detail {

template <std::floating_point Real>
Real rhs_dy(const Problem<Real>& p, Real x, Real y, const NewtonConfig<Real>& cfg) {
    if (p.rhs_dy) return p.rhs_dy(x, y);
    const Real h = std::max(cfg.fd_eps, cfg.fd_eps * std::abs(y));
    return (p.rhs(x, y + h) - p.rhs(x, y - h)) / (2 * h);
}

// Scalar equation s * (hist + a * y) - f(x, y) = 0 for one step.
// hist_abs bounds the magnitude of the terms summed into hist.
template <std::floating_point Real>
StepResult<Real> newton_scalar(const Problem<Real>& p, Real x, Real s, Real hist, Real hist_abs,
                               Real a, Real guess, const NewtonConfig<Real>& cfg,
                               std::size_t step) {
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    auto resid = [&](Real y) { return s * (hist + a * y) - p.rhs(x, y); };
    Real y = guess;
    Real r = resid(y);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const Real jac = s * a - rhs_dy(p, x, y, cfg);
        if (!(std::isfinite(jac)) || jac == 0)
            throw SingularJacobianError("Newton derivative vanished at step " +
                                            std::to_string(step),
                                        step);
        const Real delta = r / jac;
        const Real floor =
            8 * eps * (s * (hist_abs + std::abs(a * y)) + std::abs(p.rhs(x, y))) / std::abs(jac);
        if (std::abs(delta) <= cfg.tol * (1 + std::abs(y)) || std::abs(delta) <= floor)
            return {y - delta, it};
        Real lambda = 1;
        Real y_try = y - delta;
        Real r_try = resid(y_try);
        int halvings = 0;
        while (!(std::abs(r_try) < std::abs(r)) && halvings < cfg.max_halvings) {
            lambda /= 2;
            y_try = y - lambda * delta;
            r_try = resid(y_try);
            ++halvings;
        }
        if (!(std::abs(r_try) < std::abs(r)))
            throw NonConvergenceError("damped Newton stalled at step " + std::to_string(step),
                                      step, static_cast<double>(std::abs(r)));
        y = y_try;
        r = r_try;
    }
    throw NonConvergenceError("Newton iteration cap reached at step " + std::to_string(step),
                              step, static_cast<double>(std::abs(r)));
}

// Coupled Newton for unknowns y_n, n in idx, with equations
// s * (C.row(e) . y) - f(x_n, y_n) = 0 where e enumerates idx.
// C has one column per value y_0 .. y_K; knowns are read from y.
template <std::floating_point Real>
int newton_block(const Problem<Real>& p, const Grid<Real>& grid, Real s,
                 const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& C,
                 const std::vector<std::size_t>& idx, std::vector<Real>& y,
                 const NewtonConfig<Real>& cfg) {
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    const std::size_t K = idx.size();
    const std::size_t cols = static_cast<std::size_t>(C.cols());

    auto residual = [&](const std::vector<Real>& v) {
        Vec r(K);
        for (std::size_t e = 0; e < K; ++e) {
            Real acc = 0;
            for (std::size_t i = 0; i < cols; ++i) acc += C(e, i) * v[i];
            const std::size_t n = idx[e];
            r(e) = s * acc - p.rhs(grid.x(n), v[n]);
        }
        return r;
    };
    auto scale_of = [&](const std::vector<Real>& v) {
        Real m = 0;
        for (std::size_t n : idx) m = std::max(m, std::abs(v[n]));
        return m;
    };
    auto floor_of = [&](const std::vector<Real>& v) {
        Real m = 0;
        for (std::size_t e = 0; e < K; ++e) {
            Real acc = 0;
            for (std::size_t i = 0; i < cols; ++i) acc += std::abs(C(e, i) * v[i]);
            m = std::max(m, s * acc + std::abs(p.rhs(grid.x(idx[e]), v[idx[e]])));
        }
        return 8 * eps * m;
    };

    Vec r = residual(y);
    for (int it = 1; it <= cfg.max_iter; ++it) {
        Mat J(K, K);
        for (std::size_t e = 0; e < K; ++e)
            for (std::size_t f = 0; f < K; ++f) J(e, f) = s * C(e, idx[f]);
        for (std::size_t e = 0; e < K; ++e)
            J(e, e) -= rhs_dy(p, grid.x(idx[e]), y[idx[e]], cfg);
        Eigen::PartialPivLU<Mat> lu(J);
        const Real rc = lu.rcond();
        if (!(rc > 10 * eps))
            throw SingularJacobianError("coupled start: Newton matrix is numerically singular",
                                        idx.front());
        const Vec delta = lu.solve(r);
        // the floor is in residual units; map it through the inverse norm
        const Real jnorm = J.cwiseAbs().rowwise().sum().maxCoeff();
        const Real floor = floor_of(y) / (rc * jnorm);
        const Real dn = delta.cwiseAbs().maxCoeff();
        if (dn <= cfg.tol * (1 + scale_of(y)) || dn <= floor) {
            for (std::size_t e = 0; e < K; ++e) y[idx[e]] -= delta(e);
            return it;
        }
        Real lambda = 1;
        std::vector<Real> trial = y;
        Vec r_try;
        int halvings = 0;
        for (;;) {
            for (std::size_t e = 0; e < K; ++e) trial[idx[e]] = y[idx[e]] - lambda * delta(e);
            r_try = residual(trial);
            if (r_try.cwiseAbs().maxCoeff() < r.cwiseAbs().maxCoeff() ||
                halvings >= cfg.max_halvings)
                break;
            lambda /= 2;
            ++halvings;
        }
        if (!(r_try.cwiseAbs().maxCoeff() < r.cwiseAbs().maxCoeff()))
            throw NonConvergenceError("damped Newton stalled in coupled start", idx.front(),
                                      static_cast<double>(r.cwiseAbs().maxCoeff()));
        y = trial;
        r = r_try;
    }
    throw NonConvergenceError("Newton iteration cap reached in coupled start", idx.front(),
                              static_cast<double>(r.cwiseAbs().maxCoeff()));
}

template <std::floating_point Real>
void check_problem(const Problem<Real>& p) {
    if (!p.rhs) throw ConfigError("Problem: rhs is not set");
    if (p.lipschitz_hint && !(*p.lipschitz_hint > 0))
        throw ConfigError("Problem: lipschitz_hint must be positive");
}

template <std::floating_point Real>
Trajectory<Real> start_trajectory(const Problem<Real>& p, const Grid<Real>& grid) {
    Trajectory<Real> t{grid, std::vector<Real>(grid.points(), Real(0)),
                       std::vector<int>(grid.points(), 0), {}};
    t.values[0] = p.y0;
    if (p.lipschitz_hint) {
        const Real lhs = std::pow(grid.dx(), p.order.nu());
        const Real bound = 1 / (24 * 9 * *p.lipschitz_hint);
        if (lhs > bound) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "step size guard: dx^nu = %.4g exceeds 1/(24*9*L) = %.4g", double(lhs),
                          double(bound));
            t.warnings.emplace_back(buf);
        }
    }
    return t;
}

template <std::floating_point Real>
void seed_exact(const Problem<Real>& p, const Grid<Real>& grid, Trajectory<Real>& t,
                std::size_t upto) {
    if (!p.exact) throw ConfigError("exact_seed start requires an exact solution");
    for (std::size_t n = 1; n <= upto; ++n) t.values[n] = p.exact(grid.x(n));
}

}  // namespace detail

// (y1, y2) from the two coupled first-step equations.
template <std::floating_point Real>
InitialPair<Real> solve_initial_pair(const Problem<Real>& problem, const Grid<Real>& grid,
                                     const NewtonConfig<Real>& cfg = {}) {
    detail::check_problem(problem);
    cfg.validate();
    const auto fs = first_step_weights(problem.order);
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> C(2, 3);
    for (int i = 0; i < 3; ++i) {
        C(0, i) = fs.dhat[i];
        C(1, i) = fs.dtilde[i];
    }
    std::vector<Real> y{problem.y0, problem.y0, problem.y0};
    const Real s = std::pow(grid.dx(), -problem.order.nu());
    const int iters = detail::newton_block(problem, grid, s, C, {1, 2}, y, cfg);
    return {y[1], y[2], iters};
}

// y_j for j >= 3 given y_0 .. y_{j-1}.
template <std::floating_point Real>
StepResult<Real> advance_step(const Problem<Real>& problem, const Grid<Real>& grid,
                              std::span<const Real> values_so_far, std::size_t j,
                              const NewtonConfig<Real>& cfg = {}) {
    detail::check_problem(problem);
    cfg.validate();
    if (j < 3 || j > grid.last()) throw IndexError("advance_step: j outside 3..2N");
    if (values_so_far.size() < j) throw LengthError("advance_step: need y_0 .. y_{j-1}");
    const auto row = history_row(problem.order, j);
    Real hist = 0, hist_abs = 0;
    for (std::size_t k = 0; k < j; ++k) {
        hist += row.coeffs[k] * values_so_far[k];
        hist_abs += std::abs(row.coeffs[k] * values_so_far[k]);
    }
    const Real s = std::pow(grid.dx(), -problem.order.nu());
    return detail::newton_scalar(problem, grid.x(j), s, hist, hist_abs, row.coeffs[j],
                                 values_so_far[j - 1], cfg, j);
}

namespace detail {

// Scalar steps j = first..2N, optionally with starting-weight corrections.
template <std::floating_point Real>
void march(const Problem<Real>& problem, const Grid<Real>& grid, const NewtonConfig<Real>& cfg,
           std::size_t first, const StartingWeights<Real>* sw, Trajectory<Real>& t) {
    RowBuilder<Real> rows(problem.order);
    const Real s = std::pow(grid.dx(), -problem.order.nu());
    auto& y = t.values;
    for (std::size_t j = first; j <= grid.last(); ++j) {
        const auto row = rows.row(j);
        Real hist = 0, hist_abs = 0;
        for (std::size_t k = 0; k < j; ++k) {
            const Real term = row[k] * y[k];
            hist += term;
            hist_abs += std::abs(term);
        }
        if (sw) {
            for (std::size_t k = 0; k < sw->m(); ++k) {
                const Real term = sw->weight(j, k) * (y[k + 1] - y[0]);
                hist += term;
                hist_abs += std::abs(term);
            }
        }
        const auto r = newton_scalar(problem, grid.x(j), s, hist, hist_abs, row[j], y[j - 1],
                                     cfg, j);
        y[j] = r.y;
        t.newton_iters[j] = r.iters;
    }
}

}  // namespace detail

template <std::floating_point Real>
Trajectory<Real> solve(const Problem<Real>& problem, const Grid<Real>& grid,
                       const NewtonConfig<Real>& cfg = {}, StartMode start = StartMode::coupled) {
    detail::check_problem(problem);
    cfg.validate();
    auto t = detail::start_trajectory(problem, grid);
    if (start == StartMode::exact_seed) {
        detail::seed_exact(problem, grid, t, 2);
    } else {
        const auto pair = solve_initial_pair(problem, grid, cfg);
        t.values[1] = pair.y1;
        t.values[2] = pair.y2;
        t.newton_iters[1] = t.newton_iters[2] = pair.iters;
    }
    detail::march(problem, grid, cfg, 3, static_cast<const StartingWeights<Real>*>(nullptr), t);
    return t;
}

// Scheme with starting weights for the exponents sigma.  The first
// K = max(m, 2) values are solved as one coupled system (coupled start), or
// y_1, y_2 are seeded and y_3 .. y_m solved jointly (exact_seed).
template <std::floating_point Real>
Trajectory<Real> solve_corrected(const Problem<Real>& problem, const Grid<Real>& grid,
                                 const NewtonConfig<Real>& cfg, const std::vector<Real>& sigma,
                                 StartMode start = StartMode::coupled) {
    if (sigma.empty()) return solve(problem, grid, cfg, start);
    detail::check_problem(problem);
    cfg.validate();
    validate_sigma(sigma);
    const std::size_t m = sigma.size();
    const std::size_t K = std::max<std::size_t>(m, 2);
    if (K > grid.last())
        throw ConfigError("solve_corrected: grid too coarse for " + std::to_string(m) +
                          " correction terms");
    const auto sw = starting_weights(problem.order, grid, sigma);
    auto t = detail::start_trajectory(problem, grid);

    std::size_t first_unknown = 1;
    if (start == StartMode::exact_seed) {
        detail::seed_exact(problem, grid, t, 2);
        first_unknown = 3;
    }
    if (first_unknown <= K) {
        using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
        std::vector<std::size_t> idx;
        for (std::size_t n = first_unknown; n <= K; ++n) idx.push_back(n);
        Mat C = Mat::Zero(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(K + 1));
        RowBuilder<Real> rows(problem.order);
        for (std::size_t e = 0; e < idx.size(); ++e) {
            const std::size_t n = idx[e];
            const auto row = rows.row(n);
            for (std::size_t i = 0; i < row.size(); ++i) C(e, i) += row[i];
            for (std::size_t k = 0; k < m; ++k) {
                C(e, k + 1) += sw.weight(n, k);
                C(e, 0) -= sw.weight(n, k);
            }
        }
        std::vector<Real> y(t.values.begin(), t.values.begin() + K + 1);
        for (std::size_t n : idx) y[n] = y[first_unknown - 1];
        const Real s = std::pow(grid.dx(), -problem.order.nu());
        const int iters = detail::newton_block(problem, grid, s, C, idx, y, cfg);
        for (std::size_t n : idx) {
            t.values[n] = y[n];
            t.newton_iters[n] = iters;
        }
    }
    detail::march(problem, grid, cfg, K + 1, &sw, t);
    return t;
}

// max_{k>=1} |exact(x_k) - y_k|
template <std::floating_point Real>
Real max_error(const Trajectory<Real>& t, const std::function<Real(Real)>& exact) {
    if (!exact) throw ConfigError("max_error: no exact solution");
    Real e = 0;
    for (std::size_t k = 1; k < t.values.size(); ++k)
        e = std::max(e, std::abs(exact(t.grid.x(k)) - t.values[k]));
    return e;
}

}  // namespace fode
