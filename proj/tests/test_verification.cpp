#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "fode/errors.hpp"
#include "fode/verification.hpp"

using namespace fode;

namespace {

double metric(const CheckReport& r, const std::string& key) {
    for (const auto& [k, v] : r.metrics)
        if (k == key) return v;
    ADD_FAILURE() << "no metric " << key << " in " << r.name;
    return std::nan("");
}

}  // namespace

TEST(Checks, DefaultGridsPass) {
    EXPECT_TRUE(check_lemma_3_2().passed());
    const auto k = check_kernel_bounds();
    EXPECT_TRUE(k.passed());
    EXPECT_LE(metric(k, "max_identity_residual"), 1e-10);
    EXPECT_TRUE(check_appendix_a().passed());
    EXPECT_TRUE(check_mittag_leffler_bound().passed());
}

// The d_k lower bound is violated where j - k is even; every other item holds.
TEST(Checks, LemmaOnNormalizedRowsOnlyFailsTheLowerBound) {
    const auto r = check_lemma_3_1();
    EXPECT_GT(r.evaluated, 100000u);
    for (const auto& v : r.violations) {
        ASSERT_EQ(v.item, "(2) d_k lower bound");
        EXPECT_EQ((v.index - v.sub) % 2, 0);
        EXPECT_GT(v.lhs / v.rhs, 0.9);
    }
    EXPECT_FALSE(r.passed());
    EXPECT_GT(metric(r, "min_ratio_item2"), 0.9);
    EXPECT_NEAR(metric(r, "nu0"), 0.21822134515771745893, 1e-12);
}

TEST(Checks, ZeroToleranceExposesRoundoff) {
    VerificationConfig def;
    def.nu_grid = {0.1, 0.5};
    const auto d = check_lemma_3_1(def);
    EXPECT_TRUE(std::none_of(d.violations.begin(), d.violations.end(),
                             [](const Violation& v) { return v.item == "(1) sum d_k = 1"; }));

    VerificationConfig cfg = def;
    cfg.tolerance = 0;
    const auto r = check_lemma_3_1(cfg);
    EXPECT_GE(r.violations.size(), d.violations.size());
}

TEST(Checks, SinglePointGrid) {
    VerificationConfig cfg;
    cfg.nu_grid = {0.5};
    cfg.index_max = 4;
    const auto r = check_lemma_3_1(cfg);
    EXPECT_GT(r.evaluated, 0u);
    EXPECT_TRUE(r.passed());
}

TEST(Checks, MittagLefflerSkipsOverflowingCells) {
    VerificationConfig cfg;
    cfg.nu_grid = {0.1, 0.5};
    const auto r = check_mittag_leffler_bound(cfg);
    EXPECT_TRUE(r.passed());
    EXPECT_GT(metric(r, "skipped_overflow"), 0);
    cfg.nu_grid = {0.5};
    EXPECT_EQ(metric(check_mittag_leffler_bound(cfg), "skipped_overflow"), 0);
}

TEST(Checks, ConfigValidation) {
    VerificationConfig cfg;
    cfg.nu_grid = {};
    EXPECT_THROW(check_lemma_3_1(cfg), ConfigError);
    cfg = {};
    cfg.pi_b = 0;
    EXPECT_THROW(check_kernel_bounds(cfg), ConfigError);
    cfg = {};
    cfg.nu_grid = {1.5};
    EXPECT_THROW(check_lemma_3_2(cfg), ConfigError);
}

TEST(Truncation, MonomialSlopes) {
    for (const auto& tc : default_truncation_cases({0.5, 0.8})) {
        const auto r = empirical_truncation_order(tc, {4, 5, 6, 7, 8});
        EXPECT_TRUE(r.passed()) << r.name;
        EXPECT_NEAR(metric(r, "slope"), 3 - tc.nu, 0.1);
    }
}

TEST(Truncation, QuadraticIsExact) {
    TruncationCase tc{"x^2", 0.4, [](double x) { return x * x; },
                      [](double x) { return monomial_caputo(0.4, 2.0, x); }, 1.0, 2.6};
    const auto r = empirical_truncation_order(tc, {3, 4, 5, 6});
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(metric(r, "exact"), 1.0);
    EXPECT_THROW(empirical_truncation_order(tc, {3}), ConfigError);
}

TEST(Stability, Examples) {
    const auto r = stability_experiment(Order<double>(0.5), 1.0, 0.1, 100);
    EXPECT_TRUE(r.passed());
    EXPECT_NEAR(metric(r, "bound"), 5.0 / 3, 1e-15);

    const auto stiff = stability_experiment(Order<double>(0.5), 1000.0, 1.0, 10);
    EXPECT_TRUE(stiff.passed());

    const auto mild = stability_experiment(Order<double>(0.5), 1e-9, 0.1, 20);
    EXPECT_NEAR(metric(mild, "max_abs_y"), 1.0, 1e-6);

    EXPECT_THROW(stability_experiment(Order<double>(0.5), -1.0, 0.1, 10), ConfigError);
    EXPECT_THROW(stability_experiment(Order<double>(0.5), 1.0, 0.1, 7), ConfigError);
}

TEST(Stability, Sweep) {
    const auto r = stability_sweep();
    EXPECT_EQ(r.evaluated, 27u);
    EXPECT_TRUE(r.passed());
}

TEST(RunAll, SortedAndComplete) {
    const auto all = run_all();
    ASSERT_EQ(all.size(), 9u);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.name < b.name;
    }));
    for (const auto& r : all) {
        if (r.name != "lemma_3_1") {
            EXPECT_TRUE(r.passed()) << r.name;
        }
    }
}
