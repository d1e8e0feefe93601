#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fode/errors.hpp"
#include "fode/harness/study.hpp"
#include "fode/solver.hpp"
#include "fode/verification.hpp"

namespace fode::harness {

enum class Format { csv, markdown, json };

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "markdown" || s == "md") return Format::markdown;
    if (s == "json") return Format::json;
    throw ConfigError("unknown format '" + s + "' (csv, markdown, json)");
}

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

inline std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// 1.6782e-03 -> 1.6782e-3, the way the tables print it
inline std::string paper_sci(double v) {
    std::string s = sci(v);
    const auto e = s.find('e');
    std::size_t i = e + 2;
    while (i + 1 < s.size() && s[i] == '0') s.erase(i, 1);
    return s;
}

inline std::string dx_label(const ConvergenceRow& r) {
    return r.level > 0 ? "1/" + std::to_string(1L << r.level) : sci(r.dx);
}

inline nlohmann::json to_json(const ConvergenceReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json j{{"level", row.level}, {"dx", row.dx}, {"max_error", row.max_error}};
        j["order"] = row.order ? nlohmann::json(*row.order) : nlohmann::json(nullptr);
        rows.push_back(j);
    }
    return {{"problem", r.problem}, {"nu", r.nu}, {"rows", rows}};
}

}  // namespace detail

// Single report: CSV columns dx,max_error,order; markdown dx | error | order.
inline std::string emit_report(const ConvergenceReport& r, Format f) {
    std::ostringstream os;
    switch (f) {
    case Format::csv:
        os << "dx,max_error,order\n";
        for (const auto& row : r.rows)
            os << detail::sci(row.dx) << ',' << detail::sci(row.max_error) << ','
               << (row.order ? detail::fixed4(*row.order) : "") << '\n';
        break;
    case Format::markdown:
        os << "| dx | nu=" << r.nu << " | order |\n|---|---|---|\n";
        for (const auto& row : r.rows)
            os << "| " << detail::dx_label(row) << " | " << detail::paper_sci(row.max_error)
               << " | " << (row.order ? detail::fixed4(*row.order) : "-") << " |\n";
        break;
    case Format::json:
        os << detail::to_json(r).dump(2) << '\n';
        break;
    }
    return os.str();
}

inline std::string emit_report(const ConvergenceReport& r, const std::string& format) {
    const Format f = parse_format(format);
    if (f == Format::json) throw ConfigError("emit_report: use csv or markdown");
    return emit_report(r, f);
}

// Several nu columns side by side.  CSV is long-form with a leading nu column.
inline std::string emit_table(const std::vector<ConvergenceReport>& reps, Format f) {
    std::ostringstream os;
    if (f == Format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reps) arr.push_back(detail::to_json(r));
        os << arr.dump(2) << '\n';
        return os.str();
    }
    if (f == Format::csv) {
        os << "nu,dx,max_error,order\n";
        for (const auto& r : reps)
            for (const auto& row : r.rows)
                os << r.nu << ',' << detail::sci(row.dx) << ',' << detail::sci(row.max_error) << ','
                   << (row.order ? detail::fixed4(*row.order) : "") << '\n';
        return os.str();
    }
    os << "| dx |";
    for (const auto& r : reps) os << " nu=" << r.nu << " | order |";
    os << "\n|---|";
    for (std::size_t i = 0; i < reps.size(); ++i) os << "---|---|";
    os << '\n';
    const std::size_t nrows = reps.empty() ? 0 : reps.front().rows.size();
    for (std::size_t i = 0; i < nrows; ++i) {
        os << "| " << detail::dx_label(reps.front().rows[i]) << " |";
        for (const auto& r : reps) {
            const auto& row = r.rows.at(i);
            os << ' ' << detail::paper_sci(row.max_error) << " | "
               << (row.order ? detail::fixed4(*row.order) : "-") << " |";
        }
        os << '\n';
    }
    return os.str();
}

// Inverse of the single-report CSV.  Levels are recovered from dyadic dx.
inline ConvergenceReport parse_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "dx,max_error,order")
        throw ConfigError("parse_csv: missing header dx,max_error,order");
    ConvergenceReport r;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (cells.size() != 3) throw ConfigError("parse_csv: expected 3 columns: " + line);
        ConvergenceRow row;
        try {
            row.dx = std::stod(cells[0]);
            row.max_error = std::stod(cells[1]);
            if (!cells[2].empty()) row.order = std::stod(cells[2]);
        } catch (const std::exception&) {
            throw ConfigError("parse_csv: bad number in: " + line);
        }
        const double l = -std::log2(row.dx);
        row.level = std::abs(l - std::round(l)) < 1e-9 ? static_cast<int>(std::round(l)) : 0;
        r.rows.push_back(row);
    }
    return r;
}

inline nlohmann::json to_json(const CheckReport& r) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : r.violations)
        v.push_back({{"item", x.item}, {"nu", x.nu}, {"index", x.index}, {"sub", x.sub},
                     {"lhs", x.lhs}, {"rhs", x.rhs}});
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, val] : r.metrics) m[k] = val;
    return {{"name", r.name},          {"grid", r.grid},       {"passed", r.passed()},
            {"evaluated", r.evaluated}, {"violations", v},      {"metrics", m}};
}

inline std::string emit_checks(const std::vector<CheckReport>& reps, Format f) {
    std::ostringstream os;
    if (f == Format::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reps) arr.push_back(to_json(r));
        os << arr.dump(2) << '\n';
        return os.str();
    }
    if (f == Format::csv) {
        os << "name,passed,evaluated,violations\n";
        for (const auto& r : reps)
            os << r.name << ',' << (r.passed() ? "true" : "false") << ',' << r.evaluated << ','
               << r.violations.size() << '\n';
        return os.str();
    }
    os << "| check | result | evaluated | violations | grid |\n|---|---|---|---|---|\n";
    for (const auto& r : reps)
        os << "| " << r.name << " | " << (r.passed() ? "pass" : "FAIL") << " | " << r.evaluated
           << " | " << r.violations.size() << " | " << r.grid << " |\n";
    return os.str();
}

template <std::floating_point Real>
std::string emit_trajectory(const Trajectory<Real>& t, const std::function<Real(Real)>& exact) {
    std::ostringstream os;
    os << (exact ? "x,y,exact,error\n" : "x,y\n");
    char buf[128];
    for (std::size_t j = 0; j < t.values.size(); ++j) {
        const double x = t.grid.x(j), y = t.values[j];
        if (exact) {
            const double e = exact(x);
            std::snprintf(buf, sizeof buf, "%.10g,%.16e,%.16e,%.4e\n", x, y, e, std::abs(e - y));
        } else {
            std::snprintf(buf, sizeof buf, "%.10g,%.16e\n", x, y);
        }
        os << buf;
    }
    return os.str();
}

}  // namespace fode::harness
