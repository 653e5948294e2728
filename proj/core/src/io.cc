// Copyright 2026 The LOCC Estimation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locc/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "locc/errors.h"

namespace locc {

using nlohmann::json;

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

json vec_json(const Vec3 &v) {
    return json::array({v.x, v.y, v.z});
}

// NaN is not representable in JSON.
json number_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

[[noreturn]] void field_error(const std::string &field, const std::string &msg) {
    throw ValidationError("strategy field '" + field + "': " + msg);
}

}  // namespace

json strategy_to_json(const StrategyTree &tree) {
    json nodes = json::array();
    for (int depth = 0; depth < tree.copies(); ++depth) {
        for (std::uint64_t h = 0; h < (std::uint64_t{1} << depth); ++h) {
            nodes.push_back({{"history", OutcomeHistory{h, depth}.to_string()},
                             {"direction", vec_json(tree.direction(depth, h).vec())}});
        }
    }
    return {{"geometry", geometry_name(tree.geometry())}, {"N", tree.copies()}, {"nodes", std::move(nodes)}};
}

StrategyTree strategy_from_json(const json &doc) {
    if (!doc.is_object()) {
        throw ValidationError("strategy document must be a JSON object");
    }
    for (const char *key : {"geometry", "N", "nodes"}) {
        if (!doc.contains(key)) {
            field_error(key, "missing");
        }
    }
    if (!doc["geometry"].is_string()) {
        field_error("geometry", "expected a string");
    }
    Geometry g;
    try {
        g = parse_geometry(doc["geometry"].get<std::string>());
    } catch (const ValidationError &e) {
        field_error("geometry", e.what());
    }
    if (!doc["N"].is_number_integer()) {
        field_error("N", "expected an integer");
    }
    const auto n = doc["N"].get<std::int64_t>();
    if (n < 1 || n > kMaxTreeCopies) {
        field_error("N", "must be in [1, " + std::to_string(kMaxTreeCopies) + "]");
    }
    const int copies = static_cast<int>(n);
    const json &nodes = doc["nodes"];
    if (!nodes.is_array()) {
        field_error("nodes", "expected an array");
    }
    const std::size_t count = (std::size_t{1} << copies) - 1;
    if (nodes.size() != count) {
        field_error("nodes", "expected " + std::to_string(count) + " entries for N = " + std::to_string(copies) +
                                 ", got " + std::to_string(nodes.size()));
    }
    std::vector<BlochVector> dirs(count);
    std::vector<bool> seen(count, false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string where = "nodes[" + std::to_string(i) + "]";
        const json &node = nodes[i];
        if (!node.is_object() || !node.contains("history") || !node.contains("direction")) {
            field_error(where, "expected an object with 'history' and 'direction'");
        }
        if (!node["history"].is_string()) {
            field_error(where + ".history", "expected a bit string");
        }
        OutcomeHistory h;
        try {
            h = OutcomeHistory::parse(node["history"].get<std::string>());
        } catch (const ValidationError &e) {
            field_error(where + ".history", e.what());
        }
        if (h.length >= copies) {
            field_error(where + ".history", "length must be below N");
        }
        const json &d = node["direction"];
        if (!d.is_array() || d.size() != 3 || !d[0].is_number() || !d[1].is_number() || !d[2].is_number()) {
            field_error(where + ".direction", "expected [x, y, z]");
        }
        const Vec3 v{d[0].get<double>(), d[1].get<double>(), d[2].get<double>()};
        if (!(std::abs(norm(v) - 1) <= 1e-9)) {
            field_error(where + ".direction", "not a unit vector (|d| = " + format_number(norm(v)) + ")");
        }
        if (g == Geometry::Planar && v.z != 0) {
            field_error(where + ".direction", "planar strategies need z = 0");
        }
        const std::size_t idx = StrategyTree::index(h.length, h.bits);
        if (seen[idx]) {
            field_error(where + ".history", "duplicate history '" + node["history"].get<std::string>() + "'");
        }
        seen[idx] = true;
        dirs[idx] = BlochVector(v);
    }
    return StrategyTree(g, copies, std::move(dirs));
}

StrategyTree parse_strategy(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ValidationError("strategy JSON syntax error at line " + std::to_string(line) + ", column " +
                              std::to_string(col) + ": " + e.what());
    }
    return strategy_from_json(doc);
}

json to_json(const FidelityReport &r) {
    json branches = json::array();
    for (const auto &b : r.branches) {
        branches.push_back({{"id", b.id},
                            {"multiplicity", b.multiplicity},
                            {"probability", b.probability},
                            {"v_norm", b.v_norm},
                            {"guess", vec_json(b.guess.vec())}});
    }
    return {{"fidelity", r.fidelity},
            {"geometry", geometry_name(r.geometry)},
            {"N", r.copies},
            {"method", method_name(r.method)},
            {"quadrature_degree", r.quadrature_degree},
            {"guess", r.guess},
            {"total_probability", r.total_probability()},
            {"branches", std::move(branches)}};
}

std::string to_csv(const FidelityReport &r) {
    std::ostringstream out;
    out << "# F=" << format_number(r.fidelity) << " N=" << r.copies << " geometry=" << geometry_name(r.geometry)
        << " method=" << method_name(r.method) << " degree=" << r.quadrature_degree << " guess=" << r.guess << "\n";
    out << "id,multiplicity,probability,v_norm,guess_x,guess_y,guess_z\n";
    for (const auto &b : r.branches) {
        out << '"' << b.id << "\"," << format_number(b.multiplicity) << ',' << format_number(b.probability) << ','
            << format_number(b.v_norm) << ',' << format_number(b.guess.x()) << ',' << format_number(b.guess.y())
            << ',' << format_number(b.guess.z()) << "\n";
    }
    return out.str();
}

json to_json(const OptimizationResult &r) {
    json doc = strategy_to_json(r.strategy);
    for (auto &node : doc["nodes"]) {
        const OutcomeHistory h = OutcomeHistory::parse(node["history"].get<std::string>());
        const SphericalAngles a = vector_to_angles(r.strategy.geometry(), r.strategy.direction(h));
        node["polar"] = a.polar;
        node["azimuth"] = a.azimuth;
    }
    return {{"fidelity", r.fidelity},
            {"N", r.strategy.copies()},
            {"geometry", geometry_name(r.strategy.geometry())},
            {"iterations", r.iterations},
            {"best_restart", r.best_restart},
            {"converged", r.converged},
            {"restart_fidelities", r.restart_fidelities},
            {"strategy", std::move(doc)}};
}

json to_json(const AnsatzOptimum &r) {
    return {{"alpha", r.alpha}, {"beta", r.beta}, {"gamma", r.gamma}, {"fidelity", r.fidelity}};
}

json to_json(const McResult &r) {
    return {{"mean", r.mean},
            {"standard_error", r.standard_error},
            {"batch_standard_error", r.batch_standard_error},
            {"samples", r.samples},
            {"seed", r.seed}};
}

std::string trace_csv_header() {
    return "index,n_x,n_y,n_z,outcomes,guess_x,guess_y,guess_z,f\n";
}

std::string to_csv_row(const TraceRow &row) {
    std::string s = std::to_string(row.index);
    for (double v : {row.state.x, row.state.y, row.state.z}) {
        s += ',' + format_number(v);
    }
    s += ",\"" + row.outcomes + '"';
    for (double v : {row.guess.x(), row.guess.y(), row.guess.z(), row.fidelity}) {
        s += ',' + format_number(v);
    }
    return s + '\n';
}

std::string to_csv(const CoefficientSeries &s) {
    const bool stochastic = std::any_of(s.entries.begin(), s.entries.end(),
                                        [](const SeriesEntry &e) { return e.standard_error > 0; });
    std::string out = stochastic ? "N,F,c_N,c_N_stderr\n" : "N,F,c_N\n";
    for (const auto &e : s.entries) {
        out += std::to_string(e.copies) + ',' + format_number(e.fidelity) + ',' + format_number(e.coefficient);
        if (stochastic) {
            out += ',' + format_number(e.standard_error);
        }
        out += '\n';
    }
    return out;
}

json to_json(const CoefficientSeries &s) {
    json entries = json::array();
    for (const auto &e : s.entries) {
        entries.push_back({{"N", e.copies},
                           {"F", e.fidelity},
                           {"c_N", e.coefficient},
                           {"c_N_stderr", e.standard_error}});
    }
    return {{"scheme", scheme_name(s.scheme)}, {"entries", std::move(entries)}};
}

json to_json(const CmComparison &c) {
    return {{"scheme", scheme_name(c.scheme)},
            {"c_extrapolated", c.c_extrapolated},
            {"c_stderr", c.standard_error},
            {"condition", c.condition},
            {"cm_coefficient", c.cm_coefficient},
            {"ratio", c.ratio},
            {"analytic", c.analytic},
            {"tolerance", c.tolerance},
            {"saturates", c.saturates},
            {"pass", c.pass},
            {"c_without_last", number_or_null(c.c_without_last)},
            {"stable", c.stable},
            {"trend", c.trend}};
}

}  // namespace locc
