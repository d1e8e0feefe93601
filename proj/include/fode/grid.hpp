#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>

#include "fode/errors.hpp"

namespace fode {

// Uniform mesh x_j = j dx, j = 0..2N, dx = T / (2N).
template <std::floating_point Real = double>
class Grid {
public:
    Grid(Real T, std::size_t half_steps) : T_(T), N_(half_steps) {
        if (!(T > 0) || !std::isfinite(T)) throw DomainError("Grid: T must be positive");
        if (half_steps == 0) throw DomainError("Grid: N must be positive");
        dx_ = T / static_cast<Real>(2 * half_steps);
    }

    // Grid with step dx; T / dx must be an even integer.
    static Grid from_step(Real T, Real dx) {
        if (!(dx > 0)) throw DomainError("Grid: dx must be positive");
        const Real steps = T / dx;
        const Real r = std::round(steps);
        if (std::abs(steps - r) > 1e-9 * r || r < 2 || std::fmod(r, Real(2)) != 0)
            throw DomainError("Grid: T / dx must be an even integer");
        return Grid(T, static_cast<std::size_t>(r) / 2);
    }

    Real T() const noexcept { return T_; }
    std::size_t N() const noexcept { return N_; }
    std::size_t last() const noexcept { return 2 * N_; }
    std::size_t points() const noexcept { return 2 * N_ + 1; }
    Real dx() const noexcept { return dx_; }
    Real x(std::size_t j) const noexcept { return static_cast<Real>(j) * dx_; }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.T_ == b.T_ && a.N_ == b.N_;
    }

private:
    Real T_;
    std::size_t N_;
    Real dx_;
};

}  // namespace fode
