#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "fode/errors.hpp"
#include "fode/solver.hpp"
#include "fode/special_functions.hpp"

namespace fode::harness {

struct RegisteredProblem {
    std::string id;
    std::string description;
    std::function<Problem<double>(double nu)> make;
};

namespace detail {

inline Problem<double> example1(double nu) {
    const double c = gamma_fn(4 + nu) / 6;
    return {Order<double>(nu), 0.0, [c](double x, double) { return c * x * x * x; },
            [](double, double) { return 0.0; },
            [nu](double x) { return std::pow(x, 3 + nu); }, {}};
}

inline Problem<double> example2_linear(double nu) {
    const double c = gamma_fn(4 + nu) / 6;
    return {Order<double>(nu), 0.0,
            [c, nu](double x, double y) { return c * x * x * x + std::pow(x, 3 + nu) - y; },
            [](double, double) { return -1.0; },
            [nu](double x) { return std::pow(x, 3 + nu); }, 1.0};
}

inline Problem<double> example2_nonlinear(double nu) {
    const double c = gamma_fn(4 + nu) / 6;
    return {Order<double>(nu), 0.0,
            [c, nu](double x, double y) { return c * x * x * x + std::pow(x, 6 + 2 * nu) - y * y; },
            [](double, double y) { return -2 * y; },
            [nu](double x) { return std::pow(x, 3 + nu); }, {}};
}

inline constexpr double kLambda = -1.0;
inline constexpr double kY0 = 1.0;

inline Problem<double> example3(double nu) {
    return {Order<double>(nu), kY0, [](double, double y) { return kLambda * y; },
            [](double, double) { return kLambda; },
            [nu](double x) { return kY0 * mittag_leffler(nu, kLambda * std::pow(x, nu)); },
            std::abs(kLambda)};
}

inline Problem<double> example3_nu1(double nu) {
    if (nu != 1.0) throw ConfigError("example3-nu1 is defined for nu = 1 only");
    auto p = example3(1.0);
    p.exact = [](double x) { return kY0 * std::exp(kLambda * x); };
    return p;
}

}  // namespace detail

inline const std::vector<RegisteredProblem>& registry() {
    static const std::vector<RegisteredProblem> problems = {
        {"example1", "f = Gamma(4+nu)/6 x^3, y(0) = 0, y = x^(3+nu)", detail::example1},
        {"example2-linear", "f = Gamma(4+nu)/6 x^3 + x^(3+nu) - y, y(0) = 0, y = x^(3+nu)",
         detail::example2_linear},
        {"example2-nonlinear", "f = Gamma(4+nu)/6 x^3 + x^(6+2nu) - y^2, y(0) = 0, y = x^(3+nu)",
         detail::example2_nonlinear},
        {"example3", "f = -y, y(0) = 1, y = E_nu(-x^nu)", detail::example3},
        {"example3-nu1", "f = -y, y(0) = 1, nu = 1, y = exp(-x)", detail::example3_nu1},
    };
    return problems;
}

inline const RegisteredProblem& find_problem(const std::string& id) {
    for (const auto& p : registry())
        if (p.id == id) return p;
    throw ConfigError("unknown problem '" + id + "'");
}

}  // namespace fode::harness
