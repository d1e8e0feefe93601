#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fode/corrections.hpp"
#include "fode/errors.hpp"
#include "fode/grid.hpp"
#include "fode/harness/registry.hpp"
#include "fode/solver.hpp"

namespace fode::harness {

// sigma_k = k nu, k = 1..m
struct SigmaRule {
    std::size_t m = 0;
    std::vector<double> sigma(double nu) const { return sigma_multiples(nu, m); }
};

// Accepts "k*nu:m".
inline SigmaRule parse_sigma_rule(const std::string& text) {
    const std::string prefix = "k*nu:";
    if (text.rfind(prefix, 0) != 0) throw ConfigError("sigma rule must look like k*nu:m");
    const std::string tail = text.substr(prefix.size());
    std::size_t pos = 0;
    long m = -1;
    try {
        m = std::stol(tail, &pos);
    } catch (const std::exception&) {
        throw ConfigError("sigma rule: m is not an integer");
    }
    if (pos != tail.size() || m < 1 || m > static_cast<long>(kMaxCorrectionTerms))
        throw ConfigError("sigma rule: m must be an integer in 1..8");
    return SigmaRule{static_cast<std::size_t>(m)};
}

struct StudySpec {
    std::string problem;
    std::vector<double> nus;
    std::vector<int> levels;  // dx = 2^-l
    double T = 1;
    bool corrected = false;
    SigmaRule sigma_rule{3};
    StartMode start = StartMode::coupled;
    NewtonConfig<double> newton{};
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const {
        find_problem(problem);
        if (nus.empty()) throw ConfigError("study: no nu values");
        if (levels.empty()) throw ConfigError("study: no levels");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i] < 1 || levels[i] > 20) throw ConfigError("study: levels must be in 1..20");
            if (i > 0 && levels[i] <= levels[i - 1])
                throw ConfigError("study: levels must be increasing");
        }
        if (!(T > 0)) throw ConfigError("study: T must be positive");
        for (int l : levels) {
            const double steps = T * std::ldexp(1.0, l);
            if (steps != std::round(steps) || std::fmod(steps, 2.0) != 0)
                throw ConfigError("study: T / dx must be an even integer");
        }
        if (corrected && sigma_rule.m == 0) throw ConfigError("study: corrected run needs m >= 1");
        newton.validate();
    }
};

struct ConvergenceRow {
    int level = 0;
    double dx = 0;
    double max_error = 0;
    std::optional<double> order;  // log2(e_prev / e) per level step; empty on the first row
};

struct ConvergenceReport {
    std::string problem;
    double nu = 0;
    std::vector<ConvergenceRow> rows;
};

// Solver failure annotated with the study cell.
class StudyError : public NonConvergenceError {
public:
    StudyError(const std::string& what, std::size_t step, double residual, double nu, int level)
        : NonConvergenceError(what, step, residual), nu_(nu), level_(level) {}
    double nu() const noexcept { return nu_; }
    int level() const noexcept { return level_; }

private:
    double nu_;
    int level_;
};

// Max error over x_1..x_2N for one (nu, level) cell.
inline double run_cell(const StudySpec& spec, double nu, int level) {
    const auto problem = find_problem(spec.problem).make(nu);
    if (!problem.exact) throw ConfigError("study: problem has no exact solution");
    const auto grid = Grid<double>::from_step(spec.T, std::ldexp(1.0, -level));
    const std::string where = " (nu = " + std::to_string(nu) + ", level " + std::to_string(level) + ")";
    try {
        const auto t = spec.corrected ? solve_corrected(problem, grid, spec.newton,
                                                        spec.sigma_rule.sigma(nu), spec.start)
                                      : solve(problem, grid, spec.newton, spec.start);
        return max_error(t, problem.exact);
    } catch (const NonConvergenceError& e) {
        throw StudyError(e.what() + where, e.step(), e.residual(), nu, level);
    } catch (const SingularJacobianError& e) {
        throw StudyError(e.what() + where, e.step(), 0.0, nu, level);
    }
}

inline ConvergenceReport assemble(const StudySpec& spec, double nu, const std::vector<double>& errs) {
    ConvergenceReport rep{spec.problem, nu, {}};
    for (std::size_t i = 0; i < spec.levels.size(); ++i) {
        ConvergenceRow row{spec.levels[i], std::ldexp(1.0, -spec.levels[i]), errs[i], {}};
        if (i > 0)
            row.order = std::log2(errs[i - 1] / errs[i]) / (spec.levels[i] - spec.levels[i - 1]);
        rep.rows.push_back(row);
    }
    return rep;
}

// One report per nu; cells run in parallel, results assembled in order.
inline std::vector<ConvergenceReport> run_studies(const StudySpec& spec) {
    spec.validate();
    const std::size_t nl = spec.levels.size();
    const std::size_t cells = spec.nus.size() * nl;
    std::vector<double> errs(cells, 0.0);
    std::vector<std::exception_ptr> fails(cells);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c; (c = next.fetch_add(1)) < cells;) {
            try {
                errs[c] = run_cell(spec, spec.nus[c / nl], spec.levels[c % nl]);
            } catch (...) {
                fails[c] = std::current_exception();
            }
        }
    };
    unsigned nt = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    nt = static_cast<unsigned>(std::min<std::size_t>(nt, cells));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& f : fails)
        if (f) std::rethrow_exception(f);

    std::vector<ConvergenceReport> out;
    for (std::size_t i = 0; i < spec.nus.size(); ++i)
        out.push_back(assemble(
            spec, spec.nus[i],
            std::vector<double>(errs.begin() + i * nl, errs.begin() + (i + 1) * nl)));
    return out;
}

inline ConvergenceReport run_study(const StudySpec& spec) {
    if (spec.nus.size() != 1) throw ConfigError("run_study: exactly one nu expected");
    return run_studies(spec).front();
}

}  // namespace fode::harness
