#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fode/caputo_operator.hpp"
#include "fode/corrections.hpp"
#include "fode/errors.hpp"
#include "fode/special_functions.hpp"

using namespace fode;

TEST(StartingWeights, SingleTermFormula) {
    // W_n = Gamma(1+nu) - sum_i row_n[i] i^nu on the unit grid
    for (double nu : {0.3, 0.6, 0.9}) {
        const Order<double> o(nu);
        const Grid<double> g(1.0, 10);
        const auto w = starting_weights(o, g, std::vector<double>{nu});
        ASSERT_EQ(w.m(), 1u);
        for (std::size_t n = 1; n <= g.last(); ++n) {
            const auto row = operator_row(o, n);
            double d = 0;
            for (std::size_t i = 1; i < row.size(); ++i) d += row[i] * std::pow(double(i), nu);
            EXPECT_NEAR(w.weight(n, 0), std::tgamma(1 + nu) - d, 1e-12) << nu << ' ' << n;
        }
    }
}

TEST(StartingWeights, IndependentOfStepSize) {
    const Order<double> o(0.45);
    const auto sigma = sigma_multiples(0.45, 3);
    const auto a = starting_weights(o, Grid<double>(1.0, 12), sigma);
    const auto b = starting_weights(o, Grid<double>(7.5, 12), sigma);
    ASSERT_EQ(a.W.size(), b.W.size());
    for (std::size_t i = 0; i < a.W.size(); ++i) EXPECT_DOUBLE_EQ(a.W[i], b.W[i]);
    EXPECT_TRUE(a.matches(o, Grid<double>(1.0, 12)));
    EXPECT_FALSE(a.matches(o, Grid<double>(7.5, 12)));
}

TEST(StartingWeights, CorrectedOperatorExactOnEachExponent) {
    for (double nu : {0.3, 0.6, 0.9}) {
        for (std::size_t m : {2u, 3u, 4u}) {
            const Order<double> o(nu);
            const auto g = Grid<double>::from_step(1.0, 1.0 / 32);
            const auto sigma = sigma_multiples(nu, m);
            const auto w = starting_weights(o, g, sigma);
            EXPECT_LT(w.condition, kMaxStartingCondition);
            for (double s : sigma) {
                std::vector<double> y(g.points());
                for (std::size_t j = 0; j < y.size(); ++j) y[j] = std::pow(g.x(j), s);
                for (std::size_t n = m; n <= g.last(); ++n)
                    EXPECT_NEAR(corrected_discrete_caputo(o, g, y, n, w),
                                monomial_caputo(nu, s, g.x(n)), 1e-9)
                        << nu << ' ' << m << ' ' << s << ' ' << n;
            }
        }
    }
}

TEST(StartingWeights, SigmaValidation) {
    const Order<double> o(0.5);
    const Grid<double> g(1.0, 8);
    EXPECT_THROW(starting_weights(o, g, std::vector<double>{}), DomainError);
    EXPECT_THROW(starting_weights(o, g, std::vector<double>{0.5, 0.4}), DomainError);
    EXPECT_THROW(starting_weights(o, g, std::vector<double>{-0.1}), DomainError);
    EXPECT_THROW(starting_weights(o, g, sigma_multiples(0.5, 9)), DomainError);
    EXPECT_THROW(starting_weights(o, Grid<double>(1.0, 1), sigma_multiples(0.5, 3)), DomainError);
}

TEST(StartingWeights, NearlyEqualExponentsAreIllConditioned) {
    const Order<double> o(0.5);
    const Grid<double> g(1.0, 32);
    EXPECT_THROW(starting_weights(o, g, std::vector<double>{0.5, 0.5 + 1e-13}), IllConditionedError);
}

TEST(SigmaMultiples, Values) {
    const auto s = sigma_multiples(0.3, 4);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_DOUBLE_EQ(s[0], 0.3);
    EXPECT_DOUBLE_EQ(s[3], 4 * 0.3);
}
