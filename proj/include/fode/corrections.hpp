#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fode/errors.hpp"
#include "fode/grid.hpp"
#include "fode/special_functions.hpp"
#include "fode/weights.hpp"

namespace fode {

// Starting weights W_{n,k}, n = 1..2N, k = 0..m-1 (k indexes sigma and y_{k+1}).
template <std::floating_point Real = double>
struct StartingWeights {
    Real nu = 0;
    std::vector<Real> sigma;
    std::size_t half_steps = 0;
    Real T = 0;
    std::vector<Real> W;  // row-major, 2N rows of m entries; row n-1 holds W_{n,.}
    Real condition = 1;   // 1-norm condition estimate of the scaled system

    std::size_t m() const noexcept { return sigma.size(); }
    Real weight(std::size_t n, std::size_t k) const { return W[(n - 1) * sigma.size() + k]; }
    bool matches(const Order<Real>& order, const Grid<Real>& grid) const {
        return nu == order.nu() && half_steps == grid.N() && T == grid.T();
    }
};

inline constexpr std::size_t kMaxCorrectionTerms = 8;
inline constexpr double kMaxStartingCondition = 1e12;

template <std::floating_point Real>
void validate_sigma(const std::vector<Real>& sigma) {
    if (sigma.size() > kMaxCorrectionTerms)
        throw DomainError("sigma: at most 8 correction exponents are supported");
    for (std::size_t k = 0; k < sigma.size(); ++k) {
        if (!(sigma[k] > 0)) throw DomainError("sigma: exponents must be positive");
        if (k > 0 && !(sigma[k] > sigma[k - 1]))
            throw DomainError("sigma: exponents must be strictly increasing");
    }
}

// Solves, for every n, the m x m system that makes the corrected operator
// exact on x^sigma_k.  Everything is evaluated on the unit grid (x_j = j),
// where the dx powers cancel.
template <std::floating_point Real>
StartingWeights<Real> starting_weights(const Order<Real>& order, const Grid<Real>& grid,
                                       const std::vector<Real>& sigma) {
    if (sigma.empty()) throw DomainError("starting_weights: sigma list is empty");
    validate_sigma(sigma);
    const std::size_t m = sigma.size();
    const std::size_t last = grid.last();
    if (m > last) throw DomainError("starting_weights: grid has fewer points than sigma terms");

    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

    // pw[k][i] = i^sigma_k on the unit grid
    std::vector<std::vector<Real>> pw(m, std::vector<Real>(last + 1, Real(0)));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 1; i <= last; ++i) pw[k][i] = std::pow(Real(i), sigma[k]);

    // row k scaled by m^-sigma_k
    Mat A(m, m);
    std::vector<Real> scale(m);
    for (std::size_t k = 0; k < m; ++k) {
        scale[k] = std::pow(Real(m), -sigma[k]);
        for (std::size_t j = 0; j < m; ++j) A(k, j) = pw[k][j + 1] * scale[k];
    }
    Eigen::PartialPivLU<Mat> lu(A);
    const Real rcond = lu.rcond();
    const Real cond = rcond > 0 ? Real(1) / rcond : std::numeric_limits<Real>::infinity();
    if (!(cond <= Real(kMaxStartingCondition)))
        throw IllConditionedError("starting_weights: system condition estimate " +
                                      std::to_string(static_cast<double>(cond)) + " exceeds 1e12",
                                  static_cast<double>(cond));

    std::vector<Real> c(m);
    for (std::size_t k = 0; k < m; ++k)
        c[k] = gamma_fn(1 + sigma[k]) / gamma_fn(1 - order.nu() + sigma[k]);

    StartingWeights<Real> sw;
    sw.nu = order.nu();
    sw.sigma = sigma;
    sw.half_steps = grid.N();
    sw.T = grid.T();
    sw.condition = cond;
    sw.W.resize(last * m);

    RowBuilder<Real> rows(order);
    Vec rhs(m);
    for (std::size_t n = 1; n <= last; ++n) {
        const auto row = rows.row(n);
        for (std::size_t k = 0; k < m; ++k) {
            Real applied = 0;
            for (std::size_t i = 1; i < row.size(); ++i) applied += row[i] * pw[k][i];
            const Real exact = c[k] * std::pow(Real(n), sigma[k] - order.nu());
            rhs(k) = (exact - applied) * scale[k];
        }
        const Vec w = lu.solve(rhs);
        for (std::size_t k = 0; k < m; ++k) sw.W[(n - 1) * m + k] = w(k);
    }
    return sw;
}

// sigma_k = k * nu, k = 1..m
template <std::floating_point Real>
std::vector<Real> sigma_multiples(Real nu, std::size_t m) {
    std::vector<Real> s(m);
    for (std::size_t k = 0; k < m; ++k) s[k] = static_cast<Real>(k + 1) * nu;
    return s;
}

}  // namespace fode
