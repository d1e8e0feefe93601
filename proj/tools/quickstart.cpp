// Solve D^nu y = -y, y(0) = 1 on [0, 1] and compare with E_nu(-x^nu).
#include <cstdio>

#include "fode/fode.hpp"

int main() {
    const double nu = 0.6;
    fode::Problem<double> p{fode::Order<double>(nu), 1.0,
                            [](double, double y) { return -y; },
                            [](double, double) { return -1.0; },
                            [nu](double x) { return fode::mittag_leffler(nu, -std::pow(x, nu)); },
                            1.0};
    std::printf("%8s %12s %12s\n", "dx", "plain", "corrected");
    for (int l = 4; l <= 9; ++l) {
        const auto grid = fode::Grid<double>::from_step(1.0, std::ldexp(1.0, -l));
        const auto plain = fode::solve(p, grid);
        const auto corr = fode::solve_corrected(p, grid, {}, fode::sigma_multiples(nu, 3));
        std::printf("1/%-6d %12.4e %12.4e\n", 1 << l, fode::max_error(plain, p.exact),
                    fode::max_error(corr, p.exact));
    }
}
