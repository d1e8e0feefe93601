// Command-line front end: solve one problem, run convergence studies, or run
// the verification suite.
//
//   fode_cli study --problem example1 --nu 0.3,0.5 --levels 3-10 --format markdown
//   fode_cli solve --problem example3 --nu 0.6 --levels 6 --corrected --sigma-rule k*nu:3
//   fode_cli verify --format json --out checks.json
//
// Exit codes: 0 ok, 2 solver failure, 3 verification failure, 4 bad configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fode/fode.hpp"
#include "fode/harness/registry.hpp"
#include "fode/harness/report.hpp"
#include "fode/harness/study.hpp"

namespace {

using fode::ConfigError;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kSolverFailure = 2;
constexpr int kVerifyFailure = 3;
constexpr int kBadConfig = 4;

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(tok, &pos);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + tok + "'");
        }
        if (pos != tok.size()) throw ConfigError("not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty number list");
    return out;
}

// "3-10" or "3,4,6"
std::vector<int> parse_levels(const std::string& s) {
    std::vector<int> out;
    const auto dash = s.find('-');
    try {
        if (dash != std::string::npos) {
            const int a = std::stoi(s.substr(0, dash)), b = std::stoi(s.substr(dash + 1));
            if (b < a) throw ConfigError("level range is reversed");
            for (int l = a; l <= b; ++l) out.push_back(l);
        } else {
            for (double v : parse_doubles(s)) {
                if (v != static_cast<int>(v)) throw ConfigError("levels must be integers");
                out.push_back(static_cast<int>(v));
            }
        }
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad level list '" + s + "'");
    }
    return out;
}

fode::StartMode parse_start(const std::string& s) {
    if (s == "coupled") return fode::StartMode::coupled;
    if (s == "exact") return fode::StartMode::exact_seed;
    throw ConfigError("start must be coupled or exact");
}

struct Options {
    std::string config;
    std::string problem;
    std::string nu;
    std::string levels;
    double T = 1;
    bool corrected = false;
    std::string sigma_rule;
    std::string start;
    std::string format;
    std::string out;
    unsigned threads = 0;
};

// Values from the JSON config, overridden by flags that were given.
struct Resolved {
    std::string problem = "example1";
    std::vector<double> nus{0.5};
    std::vector<int> levels{3, 4, 5, 6, 7, 8, 9, 10};
    double T = 1;
    bool corrected = false;
    fode::harness::SigmaRule sigma{3};
    fode::StartMode start = fode::StartMode::coupled;
    fode::harness::Format format = fode::harness::Format::csv;
    std::string out;
    unsigned threads = 0;
    fode::NewtonConfig<double> newton{};
    fode::VerificationConfig verify{};
};

Resolved resolve(const Options& o, const CLI::App& cmd) {
    Resolved r;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw ConfigError("cannot read config file " + o.config);
        json j;
        try {
            in >> j;
            if (j.contains("problem")) r.problem = j["problem"].get<std::string>();
            if (j.contains("nu")) {
                r.nus.clear();
                if (j["nu"].is_array())
                    for (auto& v : j["nu"]) r.nus.push_back(v.get<double>());
                else
                    r.nus.push_back(j["nu"].get<double>());
            }
            if (j.contains("levels")) r.levels = j["levels"].get<std::vector<int>>();
            if (j.contains("T")) r.T = j["T"].get<double>();
            if (j.contains("corrected")) r.corrected = j["corrected"].get<bool>();
            if (j.contains("sigma_rule"))
                r.sigma = fode::harness::parse_sigma_rule(j["sigma_rule"].get<std::string>());
            if (j.contains("start")) r.start = parse_start(j["start"].get<std::string>());
            if (j.contains("format"))
                r.format = fode::harness::parse_format(j["format"].get<std::string>());
            if (j.contains("out")) r.out = j["out"].get<std::string>();
            if (j.contains("threads")) r.threads = j["threads"].get<unsigned>();
            if (j.contains("newton")) {
                const auto& n = j["newton"];
                r.newton.tol = n.value("tol", r.newton.tol);
                r.newton.max_iter = n.value("max_iter", r.newton.max_iter);
                r.newton.fd_eps = n.value("fd_eps", r.newton.fd_eps);
                r.newton.max_halvings = n.value("max_halvings", r.newton.max_halvings);
            }
            if (j.contains("verification")) {
                const auto& v = j["verification"];
                auto& c = r.verify;
                c.pi_b = v.value("pi_b", c.pi_b);
                c.nu_grid = v.value("nu_grid", c.nu_grid);
                c.index_max = v.value("index_max", c.index_max);
                c.kernel_n_max = v.value("kernel_n_max", c.kernel_n_max);
                c.kernel_dx = v.value("kernel_dx", c.kernel_dx);
                c.tolerance = v.value("tolerance", c.tolerance);
                c.appendix_k_max = v.value("appendix_k_max", c.appendix_k_max);
            }
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    auto given = [&](const char* name) {
        const auto* opt = cmd.get_option_no_throw(name);
        return opt && opt->count() > 0;
    };
    if (given("--problem")) r.problem = o.problem;
    if (given("--nu")) r.nus = parse_doubles(o.nu);
    if (given("--levels")) r.levels = parse_levels(o.levels);
    if (given("--T")) r.T = o.T;
    if (given("--corrected")) r.corrected = o.corrected;
    if (given("--sigma-rule")) {
        r.sigma = fode::harness::parse_sigma_rule(o.sigma_rule);
        r.corrected = true;
    }
    if (given("--start")) r.start = parse_start(o.start);
    if (given("--format")) r.format = fode::harness::parse_format(o.format);
    if (given("--out")) r.out = o.out;
    if (given("--threads")) r.threads = o.threads;
    return r;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

fode::harness::StudySpec to_spec(const Resolved& r) {
    fode::harness::StudySpec s;
    s.problem = r.problem;
    s.nus = r.nus;
    s.levels = r.levels;
    s.T = r.T;
    s.corrected = r.corrected;
    s.sigma_rule = r.sigma;
    s.start = r.start;
    s.newton = r.newton;
    s.threads = r.threads;
    return s;
}

int run_solve(const Resolved& r) {
    if (r.nus.size() != 1 || r.levels.size() != 1)
        throw ConfigError("solve takes a single --nu and a single --levels value");
    const auto problem = fode::harness::find_problem(r.problem).make(r.nus[0]);
    const auto grid = fode::Grid<double>::from_step(r.T, std::ldexp(1.0, -r.levels[0]));
    const auto t = r.corrected ? fode::solve_corrected(problem, grid, r.newton,
                                                       r.sigma.sigma(r.nus[0]), r.start)
                               : fode::solve(problem, grid, r.newton, r.start);
    for (const auto& w : t.warnings) std::cerr << "warning: " << w << '\n';
    write_output(fode::harness::emit_trajectory(t, problem.exact), r.out);
    return kOk;
}

int run_study(const Resolved& r) {
    const auto reps = fode::harness::run_studies(to_spec(r));
    write_output(fode::harness::emit_table(reps, r.format), r.out);
    return kOk;
}

int run_verify(const Resolved& r) {
    const auto reps = fode::run_all(r.verify);
    write_output(fode::harness::emit_checks(reps, r.format), r.out);
    bool ok = true;
    for (const auto& c : reps) {
        if (c.passed()) continue;
        ok = false;
        std::cerr << c.name << ": " << c.violations.size() << " violation(s), first: "
                  << c.violations.front().item << " at nu=" << c.violations.front().nu
                  << " index=" << c.violations.front().index << '\n';
    }
    return ok ? kOk : kVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Caputo fractional ODE solver, convergence studies and coefficient checks"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--config", o.config, "JSON config file; flags override it");
        c->add_option("--format", o.format, "csv, markdown or json");
        c->add_option("--out", o.out, "output file (default stdout)");
    };
    auto add_problem = [&](CLI::App* c) {
        c->add_option("--problem", o.problem, "problem id (see 'list')");
        c->add_option("--nu", o.nu, "order(s), comma separated");
        c->add_option("--levels", o.levels, "dx = 2^-l; a range 3-10 or a list 3,4,5");
        c->add_option("--T", o.T, "final time");
        c->add_flag("--corrected", o.corrected, "use starting-weight corrections");
        c->add_option("--sigma-rule", o.sigma_rule, "correction exponents, k*nu:m");
        c->add_option("--start", o.start, "coupled (scheme) or exact (seed y1, y2)");
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve one problem on one grid");
    add_common(solve_cmd);
    add_problem(solve_cmd);
    auto* study_cmd = app.add_subcommand("study", "max error and observed order per level");
    add_common(study_cmd);
    add_problem(study_cmd);
    study_cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
    auto* verify_cmd = app.add_subcommand("verify", "run the coefficient and kernel checks");
    add_common(verify_cmd);
    auto* list_cmd = app.add_subcommand("list", "list registered problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadConfig;
    }

    try {
        if (list_cmd->parsed()) {
            for (const auto& p : fode::harness::registry())
                std::cout << p.id << "\t" << p.description << '\n';
            return kOk;
        }
        if (solve_cmd->parsed()) return run_solve(resolve(o, *solve_cmd));
        if (study_cmd->parsed()) return run_study(resolve(o, *study_cmd));
        if (verify_cmd->parsed()) return run_verify(resolve(o, *verify_cmd));
    } catch (const fode::NonConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (residual " << e.residual() << ")\n";
        return kSolverFailure;
    } catch (const fode::SingularJacobianError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadConfig;
    }
    return kBadConfig;
}
