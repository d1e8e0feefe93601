#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <vector>

#include "fode/errors.hpp"
#include "fode/weights.hpp"

namespace fode {

template <std::floating_point Real = double>
struct NormalizedRow {
    std::size_t j = 0;
    std::vector<Real> d;  // d_k^j, k = 0..j-1
    Real theta = 0;
    Real alpha0 = 0;
};

template <std::floating_point Real = double>
struct TransformedRow {
    std::size_t j = 0;
    std::vector<Real> dbar;  // dbar_k^j, k = 0..j-1 (dbar_j^j = -1 implied)
};

template <std::floating_point Real = double>
struct BbarKernel {
    std::size_t n = 0;
    Real dx = 0;
    std::vector<Real> bbar;  // Bbar_k^n, k = 0..n-1
};

template <std::floating_point Real = double>
struct PKernel {
    std::size_t n = 0;
    Real dx = 0;
    std::vector<Real> p;  // P_j^n, j = 0..n-1
};

template <std::floating_point Real>
NormalizedRow<Real> normalized_row(const Order<Real>& order, std::size_t j) {
    if (j < 3) throw IndexError("normalized_row: j must be at least 3");
    const auto row = history_row(order, j);
    NormalizedRow<Real> r{j, std::vector<Real>(j), order.theta(), order.alpha0()};
    for (std::size_t k = 0; k < j; ++k) r.d[k] = -row.coeffs[k] / order.alpha0();
    return r;
}

// Closed forms of dbar_2^3, dbar_1^3, dbar_0^3.
template <std::floating_point Real>
std::array<Real, 3> transformed_row3_closed_form(const Order<Real>& order) {
    const Real nu = order.nu();
    const Real q = std::pow(Real(2) / 3, nu);
    const Real d2 = (nu + 6) / (nu + 2) - (4 + nu) / (nu + 2) * std::pow(Real(2) / 3, nu - 1);
    const Real d1 = (-nu * nu - 12 + 3 * (nu * nu + 2 * nu + 4) * q) / ((2 + nu) * (2 + nu));
    const Real d0 = Real(0.5) * (nu - 2) * (nu - 2) / ((nu + 2) * (nu + 2) * (nu + 2)) *
                    (4 - 2 * nu + 3 * nu * q);
    return {d0, d1, d2};
}

// Backward recurrence dbar_k = theta dbar_{k+1} + d_k.  For j >= 4 it starts
// from dbar_{j-1} = theta, dbar_{j-2} = theta^2 + d_{j-2}.
template <std::floating_point Real>
TransformedRow<Real> transformed_row(const Order<Real>& order, std::size_t j) {
    if (j < 3) throw IndexError("transformed_row: j must be at least 3");
    TransformedRow<Real> t{j, std::vector<Real>(j)};
    if (j == 3) {
        const auto c = transformed_row3_closed_form(order);
        t.dbar.assign(c.begin(), c.end());
        return t;
    }
    const auto nr = normalized_row(order, j);
    const Real th = nr.theta;
    t.dbar[j - 1] = th;
    t.dbar[j - 2] = th * th + nr.d[j - 2];
    for (std::size_t k = j - 2; k-- > 0;) t.dbar[k] = th * t.dbar[k + 1] + nr.d[k];
    return t;
}

template <std::floating_point Real>
BbarKernel<Real> bbar_kernel(const Order<Real>& order, Real dx, std::size_t n) {
    if (n < 3) throw IndexError("bbar_kernel: n must be at least 3");
    if (!(dx > 0)) throw DomainError("bbar_kernel: dx must be positive");
    const auto t = transformed_row(order, n);
    const Real b0 = std::pow(dx, -order.nu()) * order.alpha0();
    BbarKernel<Real> b{n, dx, std::vector<Real>(n)};
    b.bbar[0] = b0;
    for (std::size_t i = 1; i < n; ++i) b.bbar[i] = b.bbar[i - 1] - b0 * t.dbar[n - i];
    return b;
}

// All Bbar^n' for 3 <= n' <= n_max on one step size, and P^n built from them.
template <std::floating_point Real = double>
class KernelFamily {
public:
    KernelFamily(const Order<Real>& order, Real dx, std::size_t n_max)
        : order_(order), dx_(dx), rows_(n_max + 1) {
        if (n_max < 3) throw IndexError("KernelFamily: n_max must be at least 3");
        for (std::size_t n = 3; n <= n_max; ++n) rows_[n] = bbar_kernel(order, dx, n).bbar;
    }

    const Order<Real>& order() const noexcept { return order_; }
    Real dx() const noexcept { return dx_; }
    std::size_t n_max() const noexcept { return rows_.size() - 1; }

    // Bbar_k^n
    Real bbar(std::size_t n, std::size_t k) const { return rows_.at(n).at(k); }
    const std::vector<Real>& bbar_row(std::size_t n) const { return rows_.at(n); }

    PKernel<Real> p(std::size_t n) const {
        if (n < 3 || n > n_max()) throw IndexError("KernelFamily::p: n outside 3..n_max");
        PKernel<Real> out{n, dx_, std::vector<Real>(n, Real(0))};
        auto& P = out.p;
        P[0] = 1 / rows_[n][0];
        for (std::size_t j = 1; j + 3 <= n; ++j) {
            Real acc = 0;
            for (std::size_t k = 0; k < j; ++k)
                acc += (rows_[n - k][j - k - 1] - rows_[n - k][j - k]) * P[k];
            P[j] = acc / rows_[n - j][0];
        }
        return out;  // P_{n-2} = P_{n-1} = 0
    }

private:
    Order<Real> order_;
    Real dx_;
    std::vector<std::vector<Real>> rows_;
};

template <std::floating_point Real>
PKernel<Real> p_kernel(const Order<Real>& order, Real dx, std::size_t n) {
    if (n < 3) throw IndexError("p_kernel: n must be at least 3");
    return KernelFamily<Real>(order, dx, n).p(n);
}

// Root in (0, 1) of 3(2 - nu) - (6 + nu) 2^-nu; d_{j-2}^j changes sign there.
inline double critical_order() {
    static const double root = [] {
        auto h = [](double nu) { return 3 * (2 - nu) - (6 + nu) * std::pow(2.0, -nu); };
        double lo = 0.05, hi = 1.0;  // h(lo) > 0 > h(hi)
        while (hi - lo > 1e-15) {
            const double mid = 0.5 * (lo + hi);
            (h(mid) > 0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return root;
}

}  // namespace fode
