#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fode/corrections.hpp"
#include "fode/errors.hpp"
#include "fode/grid.hpp"
#include "fode/weights.hpp"

namespace fode {

namespace detail {

template <std::floating_point Real>
void check_query(const Grid<Real>& grid, std::size_t samples, std::size_t j, std::size_t need) {
    if (j == 0 || j > grid.last())
        throw IndexError("discrete_caputo: index " + std::to_string(j) + " outside 1.." +
                         std::to_string(grid.last()));
    if (samples < need)
        throw LengthError("discrete_caputo: need " + std::to_string(need) + " samples, got " +
                          std::to_string(samples));
}

template <std::floating_point Real>
Real dot(std::span<const Real> w, std::span<const Real> y) {
    Real s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * y[i];
    return s;
}

}  // namespace detail

// dx^-nu * (row_j . y); row 1 also consumes y_2.
template <std::floating_point Real>
Real discrete_caputo(const Order<Real>& order, const Grid<Real>& grid,
                     std::span<const Real> samples, std::size_t j) {
    detail::check_query(grid, samples.size(), j, std::max<std::size_t>(j, 2) + 1);
    const auto row = operator_row(order, j);
    return std::pow(grid.dx(), -order.nu()) * detail::dot<Real>(row, samples);
}

template <std::floating_point Real>
Real discrete_caputo(const Order<Real>& order, const Grid<Real>& grid,
                     const std::vector<Real>& samples, std::size_t j) {
    return discrete_caputo(order, grid, std::span<const Real>(samples), j);
}

// Plain operator plus dx^-nu * sum_k W_{j,k} (y_k - y_0).
template <std::floating_point Real>
Real corrected_discrete_caputo(const Order<Real>& order, const Grid<Real>& grid,
                               std::span<const Real> samples, std::size_t j,
                               const StartingWeights<Real>& weights) {
    if (weights.m() == 0) return discrete_caputo(order, grid, samples, j);
    if (!weights.matches(order, grid))
        throw MismatchError("corrected_discrete_caputo: weights built for another grid or order");
    detail::check_query(grid, samples.size(), j,
                        std::max<std::size_t>({j, 2, weights.m()}) + 1);
    const auto row = operator_row(order, j);
    Real s = detail::dot<Real>(row, samples);
    for (std::size_t k = 0; k < weights.m(); ++k)
        s += weights.weight(j, k) * (samples[k + 1] - samples[0]);
    return std::pow(grid.dx(), -order.nu()) * s;
}

template <std::floating_point Real>
Real corrected_discrete_caputo(const Order<Real>& order, const Grid<Real>& grid,
                               const std::vector<Real>& samples, std::size_t j,
                               const StartingWeights<Real>& weights) {
    return corrected_discrete_caputo(order, grid, std::span<const Real>(samples), j, weights);
}

}  // namespace fode
