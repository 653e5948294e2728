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

#include "cli.h"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include "locc/asymptotics.h"
#include "locc/builtin.h"
#include "locc/errors.h"
#include "locc/estimator.h"
#include "locc/io.h"
#include "locc/montecarlo.h"
#include "locc/optimizer.h"
#include "locc/strategy.h"

namespace locc::cli {

namespace {

using nlohmann::json;

// --config files: nested objects map to subcommands, e.g.
// {"optimize": {"n": 5, "restarts": 4}}.
class JsonConfig : public CLI::Config {
   public:
    std::string to_config(const CLI::App *, bool, bool, std::string) const override {
        return {};
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        json doc;
        try {
            doc = json::parse(input);
        } catch (const json::parse_error &e) {
            throw CLI::ConversionError(std::string("config file: ") + e.what());
        }
        if (!doc.is_object()) {
            throw CLI::ConversionError("config file must hold a JSON object");
        }
        std::vector<CLI::ConfigItem> items;
        collect(doc, {}, items);
        return items;
    }

   private:
    static std::string scalar(const json &j, const std::string &name) {
        if (j.is_boolean()) {
            return j.get<bool>() ? "true" : "false";
        }
        if (j.is_string()) {
            return j.get<std::string>();
        }
        if (j.is_number()) {
            return j.dump();
        }
        throw CLI::ConversionError("config key '" + name + "' has an unsupported value");
    }

    static void collect(const json &obj, const std::vector<std::string> &parents, std::vector<CLI::ConfigItem> &out) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it->is_object()) {
                auto p = parents;
                p.push_back(it.key());
                collect(*it, p, out);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = it.key();
            if (it->is_array()) {
                for (const auto &v : *it) {
                    item.inputs.push_back(scalar(v, it.key()));
                }
            } else {
                item.inputs.push_back(scalar(*it, it.key()));
            }
            out.push_back(std::move(item));
        }
    }
};

json typed_value(const std::string &s) {
    if (s.empty()) {
        return nullptr;
    }
    try {
        json j = json::parse(s);
        if (j.is_number() || j.is_boolean()) {
            return j;
        }
    } catch (const json::parse_error &) {
    }
    return s;
}

// Fully resolved options of a subcommand: given values, else defaults.
json resolved_config(const CLI::App &sub) {
    json cfg = json::object();
    for (const CLI::Option *opt : sub.get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help" || name.empty()) {
            continue;
        }
        if (opt->get_expected_min() == 0) {
            cfg[name] = opt->count() > 0;
            continue;
        }
        std::vector<std::string> values = opt->count() > 0 ? opt->results() : std::vector<std::string>{};
        if (values.empty()) {
            cfg[name] = typed_value(opt->get_default_str());
        } else if (values.size() == 1 && opt->get_expected_max() <= 1) {
            cfg[name] = typed_value(values[0]);
        } else {
            json arr = json::array();
            for (const auto &v : values) {
                arr.push_back(typed_value(v));
            }
            cfg[name] = std::move(arr);
        }
    }
    return cfg;
}

std::filesystem::path resolve_output(const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char *dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void write_file(const std::string &path, const std::string &content, bool append = false) {
    const auto p = resolve_output(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(p, append ? std::ios::app : std::ios::trunc);
    if (!f) {
        throw ValidationError("cannot write '" + p.string() + "'");
    }
    f << content;
    if (!f) {
        throw ValidationError("write to '" + p.string() + "' failed");
    }
}

std::string read_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ValidationError("cannot read '" + path + "'");
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Output {
    std::string format = "json";
    std::string path;
};

void emit(const Output &o, const std::string &payload, std::ostream &out) {
    if (o.path.empty()) {
        out << payload;
    } else {
        write_file(o.path, payload);
    }
}

std::string config_comment(const json &cfg) {
    return "# config " + cfg.dump() + "\n";
}

std::string human_number(double x) {
    return format_number(x);
}

// Strategy selection shared by evaluate and simulate.
struct StrategyOptions {
    std::string file;
    std::string builtin;
    std::string geometry = "full";
    std::string guess = "og";
    int per_axis = 1;
    double alpha = kN4Alpha;
    double beta = kN4Beta;
    double gamma = kN4Gamma;
    int n = 144;
    int n0 = 0;
    double lambda = 1.0;
    CLI::Option *geometry_opt = nullptr;
};

void add_strategy_options(CLI::App *sub, StrategyOptions &s) {
    auto *file = sub->add_option("--strategy", s.file, "Strategy JSON file");
    auto *builtin = sub->add_option("--builtin", s.builtin, "Built-in strategy")
                        ->check(CLI::IsMember({"fixed-axes", "optimal-n2", "optimal-n3", "n4-ansatz", "two-stage"}));
    file->excludes(builtin);
    s.geometry_opt = sub->add_option("--geometry", s.geometry, "planar or full (fixed-axes, two-stage)");
    sub->add_option("--guess", s.guess, "Guess rule: og or cl");
    sub->add_option("--per-axis", s.per_axis, "Repetitions per axis (fixed-axes)")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", s.alpha, "n4-ansatz alpha");
    sub->add_option("--beta", s.beta, "n4-ansatz beta");
    sub->add_option("--gamma", s.gamma, "n4-ansatz gamma");
    sub->add_option("--n", s.n, "Total copies (two-stage)")->check(CLI::PositiveNumber);
    sub->add_option("--n0", s.n0, "Pilot copies (two-stage); 0 = round(sqrt(N)) adjusted for parity");
    sub->add_option("--lambda", s.lambda, "Variational parameter (two-stage)")->check(CLI::Range(0.0, 1.0));
}

struct Selected {
    std::optional<StrategyTree> tree;
    std::optional<FixedStrategy> fixed;
    std::optional<TwoStageStrategy> two_stage;
    GuessRule guess = GuessRule::optimal();
};

int pilot_size_for(const StrategyOptions &s, Geometry g) {
    if (s.n0 > 0) {
        return s.n0;
    }
    int n0 = two_stage_pilot_size(s.n);
    if (g == Geometry::Planar) {
        n0 = std::max(1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.n)))));
    }
    return n0;
}

Selected select_strategy(const StrategyOptions &s, int max_two_stage_copies) {
    Selected sel;
    sel.guess = GuessRule::parse(s.guess);
    if (s.file.empty() == s.builtin.empty()) {
        throw ValidationError("give exactly one of --strategy FILE or --builtin NAME");
    }
    if (!s.file.empty()) {
        sel.tree = parse_strategy(read_file(s.file));
        if (s.geometry_opt->count() > 0 && parse_geometry(s.geometry) != sel.tree->geometry()) {
            throw ValidationError("--geometry disagrees with the strategy file");
        }
        return sel;
    }
    const Geometry g = parse_geometry(s.geometry);
    const bool full_only = s.builtin == "optimal-n2" || s.builtin == "optimal-n3" || s.builtin == "n4-ansatz";
    if (full_only && s.geometry_opt->count() > 0 && g != Geometry::Full) {
        throw ValidationError("built-in '" + s.builtin + "' is defined for the full geometry only");
    }
    if (s.builtin == "fixed-axes") {
        sel.fixed = make_fixed_axes(g, s.per_axis);
    } else if (s.builtin == "optimal-n2") {
        sel.tree = optimal_n2_tree();
    } else if (s.builtin == "optimal-n3") {
        sel.tree = optimal_n3_tree();
    } else if (s.builtin == "n4-ansatz") {
        sel.tree = n4_ansatz_tree(s.alpha, s.beta, s.gamma);
    } else {
        if (s.n > max_two_stage_copies) {
            throw ResourceError("two-stage N for this command", static_cast<std::uint64_t>(s.n),
                                static_cast<std::uint64_t>(max_two_stage_copies));
        }
        const int n0 = pilot_size_for(s, g);
        if (n0 > kMaxGreedyCopies) {
            throw ResourceError("two-stage pilot size", static_cast<std::uint64_t>(n0), kMaxGreedyCopies);
        }
        if (s.guess != "og") {
            throw ValidationError("the two-stage scheme has its own final guess; --guess does not apply");
        }
        sel.two_stage = default_two_stage(g, s.n, n0, s.lambda);
    }
    return sel;
}

// ---- evaluate ----

struct EvaluateOptions {
    StrategyOptions strategy;
    std::string method = "auto";
    Output output;
};

std::string render(const FidelityReport &r, const std::string &command, const json &cfg, const Output &o) {
    if (o.format == "csv") {
        return config_comment(cfg) + to_csv(r);
    }
    if (o.format == "human") {
        std::ostringstream s;
        s << "F = " << human_number(r.fidelity) << "\n"
          << "N = " << r.copies << ", geometry " << geometry_name(r.geometry) << ", guess " << r.guess << "\n"
          << "method " << method_name(r.method) << ", quadrature degree " << r.quadrature_degree << ", "
          << r.branches.size() << " branches\n";
        return s.str();
    }
    return json{{"command", command}, {"config", cfg}, {"result", to_json(r)}}.dump(2) + "\n";
}

json strategy_config(const CLI::App &sub, const Selected &sel) {
    json cfg = resolved_config(sub);
    if (sel.two_stage) {
        cfg["n0"] = sel.two_stage->pilot_size;
    }
    return cfg;
}

int cmd_evaluate(const CLI::App &sub, const EvaluateOptions &o, std::ostream &out) {
    Selected sel = select_strategy(o.strategy, kMaxTreeCopies);
    FidelityReport report;
    if (sel.fixed) {
        if (o.method == "tree") {
            report = fidelity_exact_tree(tree_from_fixed(*sel.fixed), sel.guess);
        } else {
            report = fidelity_exact_aggregated(*sel.fixed, sel.guess);
        }
    } else if (sel.two_stage) {
        if (o.method == "aggregated") {
            throw ValidationError("aggregated evaluation needs a fixed-axes strategy");
        }
        ExpandedStrategy e = expand_two_stage(*sel.two_stage);
        report = fidelity_exact_tree(e.tree, e.guess);
    } else {
        if (o.method == "aggregated") {
            throw ValidationError("aggregated evaluation needs a fixed-axes strategy");
        }
        report = fidelity_exact_tree(*sel.tree, sel.guess);
    }
    emit(o.output, render(report, "evaluate", strategy_config(sub, sel), o.output), out);
    return kExitOk;
}

void append_table_row(const std::string &path, const std::string &row) {
    const bool fresh = !std::filesystem::exists(resolve_output(path));
    write_file(path, std::string(fresh ? "geometry,mode,N,F,converged\n" : "") + row, true);
}

// ---- optimize ----

struct OptimizeOptions {
    std::string geometry = "full";
    int n = 0;
    std::string mode = "full";
    std::string guess = "og";
    int restarts = 8;
    std::uint64_t seed = kDefaultOptimizerSeed;
    int max_iterations = 400;
    double tolerance = 1e-10;
    std::string gauge = "fix-root";
    int threads = 0;
    bool allow_large = false;
    std::string table;
    Output output;
};

int cmd_optimize(const CLI::App &sub, const OptimizeOptions &o, std::ostream &out) {
    const json cfg = resolved_config(sub);
    const Geometry g = parse_geometry(o.geometry);
    if (o.mode == "ansatz") {
        if (g != Geometry::Full || o.n != 4) {
            throw ValidationError("ansatz mode is the four-copy full-geometry ansatz (--n 4)");
        }
        const AnsatzOptimum a = optimize_n4_ansatz();
        std::string payload;
        if (o.output.format == "human") {
            payload = "F = " + human_number(a.fidelity) + "\nalpha = " + human_number(a.alpha) +
                      ", beta = " + human_number(a.beta) + ", gamma = " + human_number(a.gamma) + "\n";
        } else if (o.output.format == "csv") {
            payload = config_comment(cfg) + "alpha,beta,gamma,F\n" + format_number(a.alpha) + "," +
                      format_number(a.beta) + "," + format_number(a.gamma) + "," + format_number(a.fidelity) + "\n";
        } else {
            payload = json{{"command", "optimize"}, {"config", cfg}, {"result", to_json(a)}}.dump(2) + "\n";
        }
        emit(o.output, payload, out);
        if (!o.table.empty()) {
            append_table_row(o.table, "full,ansatz,4," + format_number(a.fidelity) + ",true\n");
        }
        return kExitOk;
    }
    if (o.n > kDefaultTableBudget && !o.allow_large) {
        throw ResourceError("optimization beyond the default budget; pass --allow-large to proceed",
                            static_cast<std::uint64_t>(o.n), kDefaultTableBudget);
    }
    OptimizationConfig oc;
    oc.restarts = o.restarts;
    oc.seed = o.seed;
    oc.max_iterations = o.max_iterations;
    oc.f_tolerance = o.tolerance;
    oc.gauge = o.gauge == "free" ? Gauge::Free : Gauge::FixRoot;
    oc.threads = o.threads;
    OptimizationResult r = o.mode == "one-step" ? optimize_one_step_adaptive(g, o.n, oc)
                                                : optimize_tree(g, o.n, GuessRule::parse(o.guess), oc);
    std::string payload;
    if (o.output.format == "human") {
        std::ostringstream s;
        s << "F = " << human_number(r.fidelity) << "\n"
          << "N = " << o.n << ", geometry " << geometry_name(g) << ", mode " << o.mode << "\n"
          << "converged " << (r.converged ? "yes" : "no") << ", sweeps " << r.iterations << ", best restart "
          << r.best_restart << "\n";
        payload = s.str();
    } else if (o.output.format == "csv") {
        std::ostringstream s;
        s << config_comment(cfg) << "# F=" << format_number(r.fidelity) << " converged=" << r.converged << "\n"
          << "history,x,y,z\n";
        for (int depth = 0; depth < r.strategy.copies(); ++depth) {
            for (std::uint64_t h = 0; h < (std::uint64_t{1} << depth); ++h) {
                const BlochVector &d = r.strategy.direction(depth, h);
                s << '"' << OutcomeHistory{h, depth}.to_string() << "\"," << format_number(d.x()) << ','
                  << format_number(d.y()) << ',' << format_number(d.z()) << "\n";
            }
        }
        payload = s.str();
    } else {
        payload = json{{"command", "optimize"}, {"config", cfg}, {"result", to_json(r)}}.dump(2) + "\n";
    }
    emit(o.output, payload, out);
    if (!o.table.empty()) {
        append_table_row(o.table, std::string(geometry_name(g)) + "," + o.mode + "," + std::to_string(o.n) + "," +
                                      format_number(r.fidelity) + "," + (r.converged ? "true" : "false") + "\n");
    }
    return kExitOk;
}

// ---- simulate ----

struct SimulateOptions {
    StrategyOptions strategy;
    std::int64_t samples = 1000000;
    std::uint64_t seed = kDefaultMcSeed;
    std::int64_t batch = 10000;
    int threads = 0;
    std::string trace;
    Output output;
};

int cmd_simulate(const CLI::App &sub, const SimulateOptions &o, std::ostream &out) {
    McConfig mc;
    mc.samples = o.samples;
    mc.seed = o.seed;
    mc.batch_size = o.batch;
    mc.threads = o.threads;
    mc.validate();
    if (!o.trace.empty() && mc.samples > kMaxTraceSamples) {
        throw ResourceError("trace output limited to small runs", static_cast<std::uint64_t>(mc.samples),
                            kMaxTraceSamples);
    }
    Selected sel = select_strategy(o.strategy, std::numeric_limits<int>::max());
    const json cfg = strategy_config(sub, sel);

    std::string trace_text;
    TraceSink sink;
    if (!o.trace.empty()) {
        trace_text = trace_csv_header();
        sink = [&](const TraceRow &row) { trace_text += to_csv_row(row); };
    }
    McResult r;
    if (sel.fixed) {
        r = simulate_fidelity(*sel.fixed, sel.guess, mc, sink);
    } else if (sel.two_stage) {
        r = simulate_fidelity(*sel.two_stage, mc, sink);
    } else {
        r = simulate_fidelity(*sel.tree, sel.guess, mc, sink);
    }
    if (!o.trace.empty()) {
        write_file(o.trace, trace_text);
    }
    std::string payload;
    const int copies = sel.fixed       ? sel.fixed->copies()
                       : sel.two_stage ? sel.two_stage->copies
                                       : sel.tree->copies();
    if (o.output.format == "human") {
        std::ostringstream s;
        s << "F = " << human_number(r.mean) << " +- " << human_number(r.standard_error) << "\n"
          << "N(1-F) = " << human_number(copies * (1 - r.mean)) << "\n"
          << r.samples << " samples, seed " << r.seed << "\n";
        payload = s.str();
    } else if (o.output.format == "csv") {
        payload = config_comment(cfg) + "mean,standard_error,batch_standard_error,samples,seed\n" +
                  format_number(r.mean) + "," + format_number(r.standard_error) + "," +
                  format_number(r.batch_standard_error) + "," + std::to_string(r.samples) + "," +
                  std::to_string(r.seed) + "\n";
    } else {
        json res = to_json(r);
        res["N"] = copies;
        payload = json{{"command", "simulate"}, {"config", cfg}, {"result", std::move(res)}}.dump(2) + "\n";
    }
    emit(o.output, payload, out);
    return kExitOk;
}

// ---- asymptotics ----

struct AsymptoticsOptions {
    std::string scheme;
    std::vector<int> grid;
    int order = 2;
    double exponent = 0.5;
    std::int64_t samples = 1000000;
    std::uint64_t seed = kDefaultMcSeed;
    double lambda = 1.0;
    int threads = 0;
    bool allow_large = false;
    std::string series_csv;
    std::string summary_json;
    Output output;
};

int cmd_asymptotics(const CLI::App &sub, const AsymptoticsOptions &o, std::ostream &out) {
    json cfg = resolved_config(sub);
    const Scheme scheme = parse_scheme(o.scheme);
    const std::vector<int> grid = o.grid.empty() ? default_grid(scheme) : o.grid;
    cfg["grid"] = grid;
    CoefficientSeries series;
    if (scheme == Scheme::TwoStage) {
        McConfig mc;
        mc.samples = o.samples;
        mc.seed = o.seed;
        mc.threads = o.threads;
        series = build_two_stage_series(grid, mc, o.lambda);
    } else {
        series = build_series(scheme, grid, o.threads, o.allow_large ? std::numeric_limits<int>::max() : 0);
    }
    const CmComparison cmp = compare_cm_bound(series, o.order, o.exponent);
    const json summary = to_json(cmp);
    if (!o.series_csv.empty()) {
        write_file(o.series_csv, to_csv(series));
    }
    if (!o.summary_json.empty()) {
        write_file(o.summary_json, summary.dump(2) + "\n");
    }
    std::string payload;
    if (o.output.format == "human") {
        std::ostringstream s;
        s << "scheme " << scheme_name(scheme) << "\n";
        s << std::setw(6) << "N" << "  " << std::setw(22) << "F" << "  " << "c_N\n";
        for (const auto &e : series.entries) {
            s << std::setw(6) << e.copies << "  " << std::setw(22) << human_number(e.fidelity) << "  "
              << human_number(e.coefficient) << "\n";
        }
        s << "c = " << human_number(cmp.c_extrapolated) << " (analytic " << human_number(cmp.analytic)
          << ", tolerance " << human_number(cmp.tolerance * 100) << "%) " << (cmp.pass ? "PASS" : "FAIL") << "\n"
          << "ratio to collective bound " << human_number(cmp.ratio) << (cmp.saturates ? ", saturates" : "")
          << "\n";
        payload = s.str();
    } else if (o.output.format == "csv") {
        payload = config_comment(cfg) + "# summary " + summary.dump() + "\n" + to_csv(series);
    } else {
        payload = json{{"command", "asymptotics"},
                       {"config", cfg},
                       {"result", {{"series", to_json(series)}, {"summary", summary}}}}
                      .dump(2) +
                  "\n";
    }
    emit(o.output, payload, out);
    return kExitOk;
}

void add_output_options(CLI::App *sub, Output &o) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--output", o.path, "Write the payload to this file (relative to $LOCC_OUTPUT_DIR if set)");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Average fidelity of LOCC estimation strategies for qubit pure states", "locc"};
    app.option_defaults()->always_capture_default();
    app.set_config("--config", "", "JSON config file; command-line flags take precedence");
    app.config_formatter(std::make_shared<JsonConfig>());
    app.require_subcommand(1);
    app.set_version_flag("--version", "locc 0.1.0");

    EvaluateOptions ev;
    auto *evaluate = app.add_subcommand("evaluate", "Exact average fidelity of a strategy");
    add_strategy_options(evaluate, ev.strategy);
    evaluate->add_option("--method", ev.method, "auto, tree or aggregated")
        ->check(CLI::IsMember({"auto", "tree", "aggregated"}));
    add_output_options(evaluate, ev.output);

    OptimizeOptions op;
    auto *optimize = app.add_subcommand("optimize", "Maximize the fidelity over adaptive strategies");
    optimize->add_option("--geometry", op.geometry, "planar or full");
    optimize->add_option("--n", op.n, "Number of copies")->required()->check(CLI::PositiveNumber);
    optimize->add_option("--mode", op.mode, "full, one-step or ansatz")
        ->check(CLI::IsMember({"full", "one-step", "ansatz"}));
    optimize->add_option("--guess", op.guess, "Guess rule for full mode: og or cl");
    optimize->add_option("--restarts", op.restarts, "Random restarts")->check(CLI::PositiveNumber);
    optimize->add_option("--seed", op.seed, "Restart seed");
    optimize->add_option("--max-iterations", op.max_iterations, "Sweeps per restart")->check(CLI::PositiveNumber);
    optimize->add_option("--tolerance", op.tolerance, "Per-sweep improvement threshold");
    optimize->add_option("--gauge", op.gauge, "fix-root or free")->check(CLI::IsMember({"fix-root", "free"}));
    optimize->add_option("--threads", op.threads, "Worker threads (0 = all cores)");
    optimize->add_flag("--allow-large", op.allow_large, "Accept N above the default budget of 6");
    optimize->add_option("--table", op.table, "Append a row to this fidelity table (CSV)");
    add_output_options(optimize, op.output);

    SimulateOptions sm;
    auto *simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the average fidelity");
    add_strategy_options(simulate, sm.strategy);
    simulate->add_option("--samples", sm.samples, "Number of samples");
    simulate->add_option("--seed", sm.seed, "Generator seed");
    simulate->add_option("--batch", sm.batch, "Samples per batch");
    simulate->add_option("--threads", sm.threads, "Worker threads (0 = all cores)");
    simulate->add_option("--trace", sm.trace, "Write one CSV row per sample (small runs only)");
    add_output_options(simulate, sm.output);

    AsymptoticsOptions as;
    auto *asymptotics = app.add_subcommand("asymptotics", "Extrapolate the 1/N fidelity coefficient");
    asymptotics->add_option("--scheme", as.scheme, "2d-cl, 2d-og, 3d-cl, 3d-og or two-stage")->required();
    asymptotics->add_option("--grid", as.grid, "Comma-separated N values (default per scheme)")->delimiter(',');
    asymptotics->add_option("--order", as.order, "Number of correction terms")->check(CLI::NonNegativeNumber);
    asymptotics->add_option("--exponent", as.exponent, "Corrections are powers of N^-exponent");
    asymptotics->add_option("--samples", as.samples, "Monte Carlo samples per point (two-stage)");
    asymptotics->add_option("--seed", as.seed, "Generator seed (two-stage)");
    asymptotics->add_option("--lambda", as.lambda, "Variational parameter (two-stage)")->check(CLI::Range(0.0, 1.0));
    asymptotics->add_option("--threads", as.threads, "Worker threads (0 = all cores)");
    asymptotics->add_flag("--allow-large", as.allow_large, "Lift the per-geometry N limit");
    asymptotics->add_option("--series-csv", as.series_csv, "Also write the series as CSV");
    asymptotics->add_option("--summary-json", as.summary_json, "Also write the summary as JSON");
    add_output_options(asymptotics, as.output);

    for (auto *sub : {evaluate, optimize, simulate, asymptotics}) {
        sub->configurable();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (evaluate->parsed()) {
            return cmd_evaluate(*evaluate, ev, out);
        }
        if (optimize->parsed()) {
            return cmd_optimize(*optimize, op, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(*simulate, sm, out);
        }
        if (asymptotics->parsed()) {
            return cmd_asymptotics(*asymptotics, as, out);
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ConditioningError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ResourceError &e) {
        err << "resource limit: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInput;
}

}  // namespace locc::cli
