#include <cmath>
#include <numeric>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "fode/errors.hpp"
#include "fode/weights.hpp"
#include "quadrature_oracle.hpp"

using namespace fode;

TEST(FirstStepWeights, ClosedForms) {
    const Order<double> o(0.5);
    const auto w = first_step_weights(o);
    EXPECT_NEAR(w.dhat[1], 0.75225277806367504926, 1e-15);
    EXPECT_NEAR(w.dtilde[2], 1.3298076013381089265, 1e-15);
    for (double nu : {0.1, 0.5, 0.9, 1.0}) {
        const auto v = first_step_weights(Order<double>(nu));
        EXPECT_NEAR(v.dhat[0] + v.dhat[1] + v.dhat[2], 0.0, 1e-15);
        EXPECT_NEAR(v.dtilde[0] + v.dtilde[1] + v.dtilde[2], 0.0, 1e-15);
    }
}

TEST(Order, Constants) {
    const Order<double> o(0.5);
    EXPECT_NEAR(o.alpha0(), 2.5 / (std::sqrt(2.0) * std::tgamma(2.5)), 1e-15);
    EXPECT_NEAR(o.theta(), 0.4, 1e-16);
    EXPECT_THROW(Order<double>(0.0), DomainError);
    EXPECT_THROW(Order<double>(1.01), DomainError);
}

TEST(HistoryRow, Examples) {
    const Order<double> o(0.5);
    const auto r = history_row(o, 5);
    ASSERT_EQ(r.coeffs.size(), 6u);
    EXPECT_NEAR(std::accumulate(r.coeffs.begin(), r.coeffs.end(), 0.0), 0.0, 1e-14);
    EXPECT_NEAR(r.coeffs[5], o.alpha0(), 1e-15);

    const Order<double> o3(0.3);
    const auto r7 = history_row(o3, 7);
    EXPECT_NEAR(-r7.coeffs[6] / o3.alpha0(), 0.5217391304347826, 1e-13);
    EXPECT_THROW(history_row(o, 2), IndexError);
    EXPECT_THROW(operator_row(o, 0), IndexError);
}

TEST(HistoryRow, RowSumsVanish) {
    for (double nu : {0.1, 0.5, 0.9}) {
        const Order<double> o(nu);
        for (std::size_t j = 3; j <= 200; ++j) {
            const auto r = history_row(o, j);
            EXPECT_NEAR(std::accumulate(r.coeffs.begin(), r.coeffs.end(), 0.0), 0.0, 1e-11)
                << nu << ' ' << j;
        }
    }
}

TEST(HistoryRow, ExactOnQuadratics) {
    for (double nu : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const Order<double> o(nu);
        for (std::size_t j = 1; j <= 120; ++j) {
            const auto r = operator_row(o, j);
            double lin = 0, quad = 0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                lin += r[i] * double(i);
                quad += r[i] * double(i) * double(i);
            }
            const double x = double(j);
            EXPECT_NEAR(lin, std::pow(x, 1 - nu) / std::tgamma(2 - nu), 1e-12 * x) << nu << ' ' << j;
            EXPECT_NEAR(quad, 2 * std::pow(x, 2 - nu) / std::tgamma(3 - nu), 1e-12 * x * x)
                << nu << ' ' << j;
        }
    }
}

TEST(HistoryRow, MatchesQuadrature) {
    for (double nu : {0.2, 0.5, 0.8}) {
        const Order<double> o(nu);
        for (std::size_t j = 1; j <= 12; ++j) {
            const auto want = oracle::quadrature_row(nu, j);
            const auto got = operator_row(o, j);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t i = 0; i < got.size(); ++i)
                EXPECT_NEAR(got[i], want[i], 1e-8) << nu << ' ' << j << ' ' << i;
        }
    }
}

TEST(HistoryRow, OrderOneIsBdf2) {
    const Order<double> o(1.0);
    const auto r1 = operator_row(o, 1);
    EXPECT_NEAR(r1[0], -0.5, 1e-15);
    EXPECT_NEAR(r1[1], 0.0, 1e-15);
    EXPECT_NEAR(r1[2], 0.5, 1e-15);
    for (std::size_t j = 2; j <= 9; ++j) {
        const auto r = operator_row(o, j);
        for (std::size_t i = 0; i + 2 < j; ++i) EXPECT_NEAR(r[i], 0.0, 1e-14) << j << ' ' << i;
        EXPECT_NEAR(r[j - 2], 0.5, 1e-14) << j;
        EXPECT_NEAR(r[j - 1], -2.0, 1e-14) << j;
        EXPECT_NEAR(r[j], 1.5, 1e-14) << j;
    }
}

TEST(RowBuilder, MatchesDirectRows) {
    for (double nu : {0.25, 0.75}) {
        const Order<double> o(nu);
        RowBuilder<double> b(o);
        for (std::size_t j : {1, 2, 3, 4, 7, 50, 301, 300, 5}) {
            const auto want = operator_row(o, j);
            const auto got = b.row(j);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t i = 0; i < want.size(); ++i) EXPECT_DOUBLE_EQ(got[i], want[i]);
        }
    }
}

TEST(WeightCache, ConcurrentReadersShareRows) {
    WeightCache<double> cache;
    const Order<double> o(0.4);
    std::vector<std::thread> pool;
    std::vector<std::vector<const std::vector<double>*>> seen(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t j = 1; j <= 40; ++j) seen[t].push_back(cache.row(o, j).get());
        });
    for (auto& th : pool) th.join();
    EXPECT_EQ(cache.size(), 40u);
    for (int t = 1; t < 8; ++t) EXPECT_EQ(seen[t], seen[0]);
    EXPECT_EQ(*cache.row(o, 17), operator_row(o, 17));
    cache.clear();
    EXPECT_EQ(cache.size(), 0u);
}
