#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fode/errors.hpp"
#include "fode/special_functions.hpp"

namespace fode {

// Fractional order nu in (0, 1] with the constants every row needs.
template <std::floating_point Real = double>
class Order {
public:
    explicit Order(Real nu) : nu_(nu) {
        if (!(nu > 0 && nu <= 1)) throw DomainError("Order: nu must lie in (0, 1]");
        g_ = gamma_fn(Real(3) - nu);
        alpha0_ = (nu + 2) / (g_ * std::pow(Real(2), nu));
        theta_ = 2 * nu / (2 + nu);
    }

    Real nu() const noexcept { return nu_; }
    Real gamma_3mnu() const noexcept { return g_; }
    // Diagonal weight shared by every row with j >= 2.
    Real alpha0() const noexcept { return alpha0_; }
    Real theta() const noexcept { return theta_; }

    friend bool operator==(const Order& a, const Order& b) { return a.nu_ == b.nu_; }

private:
    Real nu_;
    Real g_;
    Real alpha0_;
    Real theta_;
};

template <std::floating_point Real = double>
struct FirstStepWeights {
    std::array<Real, 3> dhat;    // row for j = 1, applied to (y0, y1, y2)
    std::array<Real, 3> dtilde;  // row for j = 2
};

template <std::floating_point Real = double>
struct HistoryRow {
    std::size_t j = 0;
    std::vector<Real> coeffs;  // j + 1 weights for y_0 .. y_j
};

template <std::floating_point Real>
FirstStepWeights<Real> first_step_weights(const Order<Real>& order) {
    const Real nu = order.nu();
    const Real g = order.gamma_3mnu();
    const Real h = std::pow(Real(2), nu) * g;
    FirstStepWeights<Real> w;
    w.dhat = {(3 * nu - 4) / (2 * g), 2 * (1 - nu) / g, nu / (2 * g)};
    w.dtilde = {(3 * nu - 2) / h, -4 * nu / h, (nu + 2) / h};
    return w;
}

namespace detail {

// i^(1-nu) and i^(2-nu) with 0^e = 0, which is also the nu -> 1 limit.
template <std::floating_point Real>
struct DirectPowers {
    Real nu;
    Real p1(std::size_t i) const { return i == 0 ? Real(0) : std::pow(Real(i), 1 - nu); }
    Real p2(std::size_t i) const { return i == 0 ? Real(0) : std::pow(Real(i), 2 - nu); }
};

// Closed-form weights of row j >= 3 written into out[0..j].  The differences
// of (2m)^(2-nu)-sized powers lose up to ~3 digits for m near 2^10.
template <std::floating_point Real, class Powers>
void fill_history_row(const Order<Real>& order, std::size_t j, const Powers& pw,
                      std::span<Real> out) {
    const Real nu = order.nu();
    const Real g = order.gamma_3mnu();
    const Real c = (2 - nu) / 2;
    auto p1 = [&](std::size_t i) { return pw.p1(i); };
    auto p2 = [&](std::size_t i) { return pw.p2(i); };

    // even row j = 2m+2, entries 0..2m+1
    auto even_entry = [&](std::size_t m, std::size_t idx) -> Real {
        if (idx == 0)
            return (-c * (p1(2 * m) + 3 * p1(2 * m + 2)) - (p2(2 * m) - p2(2 * m + 2))) / g;
        if (idx % 2 == 0) {
            const std::size_t k = idx / 2;
            const std::size_t a = 2 * m - 2 * k;
            return (-c * (p1(a) + 6 * p1(a + 2) + p1(a + 4)) - (p2(a) - p2(a + 4))) / g;
        }
        const std::size_t k = (idx - 1) / 2;
        const std::size_t a = 2 * m - 2 * k;
        return 2 * ((2 - nu) * (p1(a) + p1(a + 2)) + p2(a) - p2(a + 2)) / g;
    };

    if (j % 2 == 0) {
        const std::size_t m = (j - 2) / 2;
        for (std::size_t i = 0; i + 1 < j + 1; ++i) out[i] = even_entry(m, i);
    } else {
        const std::size_t m = (j - 1) / 2;
        out[0] = (c * (p1(2 * m) - 3 * p1(2 * m + 1)) - p2(2 * m) + p2(2 * m + 1)) / g;
        out[1] = (-c * (p1(2 * m - 2) + 3 * p1(2 * m) - 4 * p1(2 * m + 1)) - p2(2 * m - 2) +
                  3 * p2(2 * m) - 2 * p2(2 * m + 1)) /
                 g;
        out[2] = (c * (4 * p1(2 * m - 2) + 3 * p1(2 * m) - p1(2 * m + 1)) + 2 * p2(2 * m - 2) -
                  3 * p2(2 * m) + p2(2 * m + 1)) /
                 g;
        // remaining odd-row weights coincide with the even-row formulas
        for (std::size_t k = 2; k <= m; ++k) {
            out[2 * k] = even_entry(m, 2 * k + 1);
            out[2 * k - 1] = even_entry(m, 2 * k);
        }
    }
    out[j] = order.alpha0();
}

}  // namespace detail

template <std::floating_point Real>
HistoryRow<Real> history_row(const Order<Real>& order, std::size_t j) {
    if (j < 3) throw IndexError("history_row: j must be at least 3");
    HistoryRow<Real> row{j, std::vector<Real>(j + 1)};
    detail::fill_history_row(order, j, detail::DirectPowers<Real>{order.nu()},
                             std::span<Real>(row.coeffs));
    return row;
}

// Weights of the discrete operator at x_j for any j >= 1.  Rows 1 and 2 have
// three entries (row 1 reaches forward to y_2).
template <std::floating_point Real>
std::vector<Real> operator_row(const Order<Real>& order, std::size_t j) {
    if (j == 0) throw IndexError("operator_row: j must be at least 1");
    if (j <= 2) {
        const auto fs = first_step_weights(order);
        const auto& a = j == 1 ? fs.dhat : fs.dtilde;
        return {a.begin(), a.end()};
    }
    return history_row(order, j).coeffs;
}

// Reusable row builder for one sweep over j: caches i^(1-nu), i^(2-nu) so a
// row costs O(j) arithmetic instead of O(j) pow calls.  Not thread-safe.
template <std::floating_point Real = double>
class RowBuilder {
public:
    explicit RowBuilder(const Order<Real>& order) : order_(order), fs_(first_step_weights(order)) {}

    const Order<Real>& order() const noexcept { return order_; }

    // Row j written into a buffer owned by the builder; valid until the next call.
    std::span<const Real> row(std::size_t j) {
        if (j == 0) throw IndexError("RowBuilder: j must be at least 1");
        if (j <= 2) {
            buf_.assign(3, Real(0));
            const auto& a = j == 1 ? fs_.dhat : fs_.dtilde;
            std::copy(a.begin(), a.end(), buf_.begin());
            return buf_;
        }
        grow(j + 1);
        buf_.resize(j + 1);
        detail::fill_history_row(order_, j, *this, std::span<Real>(buf_));
        return buf_;
    }

    Real p1(std::size_t i) const { return p1_[i]; }
    Real p2(std::size_t i) const { return p2_[i]; }

private:
    void grow(std::size_t n) {
        const detail::DirectPowers<Real> d{order_.nu()};
        for (std::size_t i = p1_.size(); i <= n; ++i) {
            p1_.push_back(d.p1(i));
            p2_.push_back(d.p2(i));
        }
    }

    Order<Real> order_;
    FirstStepWeights<Real> fs_;
    std::vector<Real> p1_, p2_, buf_;
};

// Thread-safe cache of rows keyed by (nu, j); used where rows are revisited.
template <std::floating_point Real = double>
class WeightCache {
public:
    std::shared_ptr<const std::vector<Real>> row(const Order<Real>& order, std::size_t j) {
        const Key key{order.nu(), j};
        {
            std::shared_lock lock(mu_);
            if (auto it = rows_.find(key); it != rows_.end()) return it->second;
        }
        auto built = std::make_shared<const std::vector<Real>>(operator_row(order, j));
        std::unique_lock lock(mu_);
        return rows_.emplace(key, std::move(built)).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return rows_.size();
    }

    void clear() {
        std::unique_lock lock(mu_);
        rows_.clear();
    }

private:
    using Key = std::pair<Real, std::size_t>;
    mutable std::shared_mutex mu_;
    std::map<Key, std::shared_ptr<const std::vector<Real>>> rows_;
};

}  // namespace fode
