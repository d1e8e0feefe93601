#pragma once

#include <cmath>
#include <concepts>
#include <limits>

#include "fode/errors.hpp"

namespace fode {

template <std::floating_point Real = double>
struct MLParams {
    Real nu;
    Real z;
};

template <std::floating_point Real>
Real gamma_fn(Real x) {
    if (!(x > 0)) throw DomainError("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

template <std::floating_point Real>
Real log_gamma(Real x) {
    if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
    return std::lgamma(x);
}

// E_nu(z) = sum_k z^k / Gamma(1 + k nu) by direct summation in long double.
// Cancellation for z < 0 grows like max_k |z|^k / Gamma(1 + k nu); accurate
// to ~1e-12 absolute for |z| up to a few units, which covers every use here.
template <std::floating_point Real>
Real mittag_leffler(const MLParams<Real>& p) {
    using LD = long double;
    if (!(p.nu > 0 && p.nu <= 1)) throw DomainError("mittag_leffler: nu must lie in (0, 1]");
    if (!(std::abs(p.z) <= 50)) throw DomainError("mittag_leffler: |z| must not exceed 50");
    if (p.z == 0) return Real(1);

    constexpr int kMaxTerms = 10000;
    const LD nu = p.nu;
    const LD z = p.z;
    const LD logz = std::log(std::abs(z));
    LD sum = 1, comp = 0;  // Neumaier summation
    int small = 0;
    for (int k = 1; k < kMaxTerms; ++k) {
        const LD arg = 1 + k * nu;
        LD term;
        if (arg < 150)
            term = std::pow(z, static_cast<LD>(k)) / gamma_fn(arg);
        else {
            term = std::exp(k * logz - log_gamma(arg));
            if (z < 0 && (k & 1)) term = -term;
        }
        const LD s = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - s) + term : (term - s) + sum;
        sum = s;
        // Terms eventually decrease monotonically; require two small ones in a row.
        if (std::abs(term) <= 1e-16L * std::abs(sum + comp)) {
            if (++small == 2) return static_cast<Real>(sum + comp);
        } else {
            small = 0;
        }
    }
    throw NonConvergenceError("mittag_leffler: term cap reached", kMaxTerms, 0.0);
}

template <std::floating_point Real>
Real mittag_leffler(Real nu, Real z) {
    return mittag_leffler(MLParams<Real>{nu, z});
}

// Caputo derivative of order nu of x^sigma.
template <std::floating_point Real>
Real monomial_caputo(Real nu, Real sigma, Real x) {
    if (!(sigma > 0)) throw DomainError("monomial_caputo: sigma must be positive");
    if (!(nu > 0 && nu <= 1)) throw DomainError("monomial_caputo: nu must lie in (0, 1]");
    if (!(x >= 0)) throw DomainError("monomial_caputo: x must be non-negative");
    const Real c = gamma_fn(1 + sigma) / gamma_fn(1 - nu + sigma);
    if (sigma == nu) return c;
    if (x == 0) return sigma > nu ? Real(0) : std::numeric_limits<Real>::infinity();
    return c * std::pow(x, sigma - nu);
}

}  // namespace fode
