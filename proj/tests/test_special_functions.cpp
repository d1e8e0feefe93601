#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fode/errors.hpp"
#include "fode/special_functions.hpp"

using namespace fode;

TEST(Gamma, KnownValues) {
    EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
    EXPECT_NEAR(gamma_fn(0.5), 1.7724538509055160, 1e-15);
    EXPECT_NEAR(gamma_fn(2.5), 1.3293403881791370, 1e-15);
    EXPECT_NEAR(gamma_fn(1.3), 0.89747069630627718849, 1e-15);
    EXPECT_NEAR(gamma_fn(4.5) / 6, 1.9386213994279081549, 2e-15);
    EXPECT_DOUBLE_EQ(gamma_fn(6.0), 120.0);
}

TEST(Gamma, SmallAndNonPositive) {
    EXPECT_NEAR(gamma_fn(0.1), 9.5135076986687318397, 1e-13);
    for (double x : {0.0, -0.5, -2.0}) EXPECT_THROW(gamma_fn(x), DomainError) << x;
    EXPECT_THROW(log_gamma(0.0), DomainError);
}

TEST(Gamma, MatchesStdAcrossRange) {
    for (double x = 0.05; x < 30; x += 0.37)
        EXPECT_NEAR(gamma_fn(x) / std::tgamma(x), 1.0, 1e-13) << x;
    for (double x = 0.5; x < 300; x += 3.1)
        EXPECT_NEAR(log_gamma(x), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x))))
            << x;
}

TEST(MittagLeffler, TrivialCases) {
    for (double nu : {0.1, 0.3, 0.5, 0.9, 1.0}) EXPECT_EQ(mittag_leffler(nu, 0.0), 1.0);
    EXPECT_NEAR(mittag_leffler(1.0, -1.0), 0.36787944117144233, 1e-15);
}

TEST(MittagLeffler, HalfOrderClosedForm) {
    // E_{1/2}(z) = exp(z^2) erfc(-z)
    EXPECT_NEAR(mittag_leffler(0.5, -1.0), 0.42758357615580700441, 1e-14);
    for (double z = -1; z <= 1.0001; z += 0.05)
        EXPECT_NEAR(mittag_leffler(0.5, z), std::exp(z * z) * std::erfc(-z), 1e-12) << z;
}

TEST(MittagLeffler, OrderOneIsExp) {
    for (int i = 0; i <= 100; ++i) {
        const double z = -5 + 0.1 * i;
        EXPECT_NEAR(mittag_leffler(1.0, z) / std::exp(z), 1.0, 1e-13) << z;
    }
}

TEST(MittagLeffler, MonotoneForPositiveArgument) {
    for (double nu : {0.2, 0.5, 0.8, 1.0}) {
        double prev = mittag_leffler(nu, 0.0);
        for (double z = 0.05; z <= 3; z += 0.05) {
            const double v = mittag_leffler(nu, z);
            EXPECT_GT(v, prev) << nu << ' ' << z;
            prev = v;
        }
    }
}

TEST(MittagLeffler, DomainErrors) {
    EXPECT_THROW(mittag_leffler(0.0, 0.5), DomainError);
    EXPECT_THROW(mittag_leffler(1.5, 0.5), DomainError);
    EXPECT_THROW(mittag_leffler(0.5, 51.0), DomainError);
    EXPECT_THROW(mittag_leffler(0.5, std::nan("")), DomainError);
}

TEST(MittagLeffler, TermCapReported) {
    // E_0.1(20) would need far more than the term cap
    EXPECT_THROW(mittag_leffler(0.1, 20.0), NonConvergenceError);
}

TEST(MonomialCaputo, Examples) {
    EXPECT_NEAR(monomial_caputo(0.5, 3.5, 1.0), gamma_fn(4.5) / 6, 1e-14);
    EXPECT_EQ(monomial_caputo(0.4, 1.0, 0.0), 0.0);
    EXPECT_NEAR(monomial_caputo(0.3, 0.3, 2.0), gamma_fn(1.3), 1e-15);
    EXPECT_NEAR(monomial_caputo(1.0, 2.0, 3.0), 6.0, 1e-14);
}

TEST(MonomialCaputo, Errors) {
    EXPECT_THROW(monomial_caputo(0.5, 0.0, 1.0), DomainError);
    EXPECT_THROW(monomial_caputo(0.5, 1.0, -1.0), DomainError);
    EXPECT_TRUE(std::isinf(monomial_caputo(0.5, 0.2, 0.0)));
}
