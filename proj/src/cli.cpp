#include "vofde/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

#include "vofde/error.hpp"
#include "vofde/expr.hpp"
#include "vofde/reference.hpp"

namespace vofde::cli {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Config files

ProblemSpec problem_from_expressions(const SpatialGrid& grid, double diffusivity,
                                     const cases::CaseExpressions& fields) {
    const auto gamma = expr::parse(fields.gamma);
    const auto forcing = expr::parse(fields.forcing.empty() ? "0" : fields.forcing);
    const auto initial = expr::parse(fields.initial);
    const auto left = expr::parse(fields.bc_left);
    const auto right = expr::parse(fields.bc_right);
    if (initial.uses('t')) throw ConfigError("initial condition may depend on x only");
    if (left.uses('x') || right.uses('x')) throw ConfigError("boundary values may depend on t only");

    ProblemSpec spec{.grid = grid,
                     .gamma = gamma,
                     .gamma_depends_on_x = gamma.uses('x'),
                     .diffusivity = diffusivity,
                     .forcing = {},
                     .initial = [initial](double x) { return initial(x, 0.0); },
                     .bc_left = [left](double t) { return left(0.0, t); },
                     .bc_right = [right](double t) { return right(0.0, t); }};
    // A literal zero source keeps the kernel on its source-free path.
    if (!(forcing.root() == expr::Node{expr::Number{0.0}})) spec.forcing = forcing;
    return spec;
}

namespace {

double get_number(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw ConfigError(std::string("config: '") + key + "' must be a number");
    }
    return obj.at(key).get<double>();
}

std::string get_expression(const json& obj, const char* key, const char* fallback = nullptr) {
    if (!obj.contains(key)) {
        if (fallback) return fallback;
        throw ConfigError(std::string("config: missing expression '") + key + "'");
    }
    const json& v = obj.at(key);
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    if (!v.is_string()) throw ConfigError(std::string("config: '") + key + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

ProblemConfig parse_problem_config(std::string_view json_text, std::string name) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("domain") || !doc.at("domain").is_object()) {
        throw ConfigError("config: expected an object with a 'domain' entry");
    }
    const json& dom = doc.at("domain");
    const double j = get_number(dom, "J");
    if (j != std::floor(j) || j < 2 || j > 1e8) throw ConfigError("config: domain.J must be an integer >= 2");

    ProblemConfig cfg;
    cfg.name = std::move(name);
    try {
        const SpatialGrid grid(get_number(dom, "x_left"), get_number(dom, "x_right"), static_cast<int>(j));
        const double k = doc.contains("K") ? get_number(doc, "K") : 1.0;
        cases::CaseExpressions fields{get_expression(doc, "gamma"), get_expression(doc, "forcing", "0"),
                                      get_expression(doc, "initial"), get_expression(doc, "bc_left"),
                                      get_expression(doc, "bc_right")};
        cfg.spec = problem_from_expressions(grid, k, fields);
    } catch (const MeshError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    bool has_tolerance = false;
    if (doc.contains("control")) {
        const json& c = doc.at("control");
        if (!c.is_object()) throw ConfigError("config: 'control' must be an object");
        auto maybe = [&](const char* key, double& slot) {
            if (c.contains(key)) slot = get_number(c, key);
        };
        auto maybe_int = [&](const char* key, int& slot) {
            if (c.contains(key)) slot = static_cast<int>(get_number(c, key));
        };
        has_tolerance = c.contains("tolerance");
        maybe("tolerance", cfg.control.tolerance);
        maybe("initial_step", cfg.control.initial_step);
        maybe("min_step", cfg.control.min_step);
        maybe("max_step", cfg.control.max_step);
        maybe_int("max_halvings", cfg.control.max_halvings);
        maybe_int("max_doublings", cfg.control.max_doublings);
        if (c.contains("fixed_dt")) cfg.fixed_dt = get_number(c, "fixed_dt");
    }
    if (doc.contains("fixed_dt")) cfg.fixed_dt = get_number(doc, "fixed_dt");
    if (doc.contains("t_end")) cfg.t_end = get_number(doc, "t_end");
    if (has_tolerance && cfg.fixed_dt) {
        throw ConfigError("config: tolerance and fixed_dt are mutually exclusive");
    }
    return cfg;
}

ProblemConfig load_problem_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem_config(ss.str(), path);
}

// ---------------------------------------------------------------------------
// Commands

namespace {

struct Resolved {
    cases::BenchmarkCase bench;  // spec/control reflect all overrides
    double t_end = 0.0;
    std::optional<double> fixed_dt;
};

int intervals_from_dx(const SpatialGrid& grid, double dx) {
    if (!(dx > 0.0)) throw ConfigError("--dx must be positive");
    const double n = (grid.x_right() - grid.x_left()) / dx;
    const double r = std::round(n);
    if (r < 2 || std::abs(n - r) > 1e-9 * r) {
        throw ConfigError("--dx must divide the domain into an integer number (>= 2) of intervals");
    }
    return static_cast<int>(r);
}

Resolved resolve(const RunConfig& rc) {
    if (rc.case_name.empty() == rc.config_path.empty()) {
        throw ConfigError("give exactly one of --case or --config");
    }
    if (rc.tolerance && rc.fixed_dt) {
        throw ConfigError("--tol and --fixed-dt are mutually exclusive");
    }
    if (rc.intervals && rc.dx) {
        throw ConfigError("--dx-den and --dx are mutually exclusive");
    }

    Resolved r;
    if (!rc.case_name.empty()) {
        r.bench = cases::make_case(rc.case_name);
        r.t_end = r.bench.default_t_end;
    } else {
        ProblemConfig pc = load_problem_config(rc.config_path);
        r.bench.name = pc.name;
        r.bench.spec = std::move(pc.spec);
        r.bench.control = pc.control;
        r.bench.default_intervals = r.bench.spec.grid.intervals();
        r.t_end = pc.t_end.value_or(1.0);
        r.fixed_dt = pc.fixed_dt;
    }

    const SpatialGrid& grid = r.bench.spec.grid;
    if (rc.intervals || rc.dx) {
        const int n = rc.intervals ? *rc.intervals : intervals_from_dx(grid, *rc.dx);
        if (n < 2) throw ConfigError("the grid needs at least 2 intervals");
        r.bench = r.bench.with_intervals(n);
    }

    StepControl& c = r.bench.control;
    if (rc.tolerance) {
        c.tolerance = *rc.tolerance;
        r.fixed_dt.reset();
    }
    if (rc.fixed_dt) r.fixed_dt = rc.fixed_dt;
    if (rc.initial_step) c.initial_step = *rc.initial_step;
    if (rc.min_step) c.min_step = *rc.min_step;
    if (rc.max_step) c.max_step = *rc.max_step;
    if (rc.t_end) r.t_end = *rc.t_end;

    if (!(r.t_end > 0.0) || !std::isfinite(r.t_end)) throw ConfigError("--t-end must be positive");
    if (r.fixed_dt && !(*r.fixed_dt > 0.0)) throw ConfigError("--fixed-dt must be positive");
    if (!r.fixed_dt) c.validate();

    const auto diagnostics = validate(r.bench.spec, r.t_end);
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::violation) throw ConfigError("invalid problem: " + d.message);
    }
    return r;
}

std::vector<std::size_t> probe_nodes(const SpatialGrid& grid, const std::vector<std::string>& probes) {
    std::vector<std::size_t> nodes;
    for (const auto& p : probes) {
        if (p == "mid") {
            nodes.push_back(grid.nearest(0.5 * (grid.x_left() + grid.x_right())));
            continue;
        }
        double x = 0.0;
        std::size_t used = 0;
        try {
            x = std::stod(p, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != p.size() || x < grid.x_left() || x > grid.x_right()) {
            throw ConfigError("probe '" + p + "' must be 'mid' or an x inside the domain");
        }
        nodes.push_back(grid.nearest(x));
    }
    if (nodes.empty()) nodes.push_back(grid.nearest(0.5 * (grid.x_left() + grid.x_right())));
    return nodes;
}

// Shortest text that reads back to the same double.
std::string num(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// Opens --out, or falls back to the command's stdout.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
        stream_->precision(17);
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void check_format(const std::string& format) {
    if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
}

SolveResult solve(const Resolved& r) {
    if (r.fixed_dt) return solve_fixed(r.bench.spec, *r.fixed_dt, r.t_end);
    return solve_adaptive(r.bench.spec, r.bench.control, r.t_end);
}

int cmd_run(const RunConfig& rc, std::ostream& out) {
    check_format(rc.format);
    const Resolved r = resolve(rc);
    const SpatialGrid& grid = r.bench.spec.grid;
    const auto nodes = probe_nodes(grid, rc.probes);
    const SolveResult res = solve(r);
    const SolutionHistory& h = res.history;

    Output o(rc.out, out);
    if (rc.format == "csv") {
        *o << "t,dt";
        for (auto j : nodes) *o << ",u(x=" << num(grid.x(j)) << ')';
        *o << '\n';
        for (std::size_t m = 0; m < h.size(); ++m) {
            *o << num(h.time(m)) << ',' << num(m == 0 ? 0.0 : h.mesh().increment(m));
            for (auto j : nodes) *o << ',' << num(h.field(m)[j]);
            *o << '\n';
        }
        return kExitOk;
    }

    const double t50 = reference::normalization_unit();
    json doc;
    doc["case"] = r.bench.name;
    doc["dx"] = grid.dx();
    doc["tolerance_or_dt"] = r.fixed_dt ? *r.fixed_dt : r.bench.control.tolerance;
    doc["t_end"] = r.t_end;
    doc["accepted_steps"] = res.report.accepted_steps;
    doc["rejected_trials"] = res.report.rejected_trials;
    doc["history_terms"] = res.report.work.history_terms;
    doc["wall_time_s"] = res.report.wall_time_s;
    doc["normalized_time"] = t50 > 0.0 ? res.report.wall_time_s / t50 : 0.0;
    doc["mesh"] = std::vector<double>(h.times().begin(), h.times().end());
    json probes = json::object();
    for (auto j : nodes) {
        std::vector<double> u(h.size());
        for (std::size_t m = 0; m < h.size(); ++m) u[m] = h.field(m)[j];
        probes[num(grid.x(j))] = u;
    }
    doc["probes"] = probes;
    *o << doc.dump(2) << '\n';
    return kExitOk;
}

struct CompareOptions {
    std::vector<double> tolerances;
    bool force_oracle = false;
    bool self = false;
    int refine = 4;
    double oracle_tolerance = 1e-6;
};

int cmd_compare(const RunConfig& rc, const CompareOptions& co, std::ostream& out) {
    check_format(rc.format);
    const Resolved base = resolve(rc);
    if (co.self && co.force_oracle) throw ConfigError("--self and --oracle are mutually exclusive");

    std::vector<Resolved> runs;
    if (base.fixed_dt || co.tolerances.empty()) {
        runs.push_back(base);
    } else {
        for (double tol : co.tolerances) {
            Resolved r = base;
            r.bench.control.tolerance = tol;
            r.bench.control.validate();
            runs.push_back(r);
        }
    }

    const bool use_exact = base.bench.has_exact() && !co.force_oracle && !co.self;
    std::optional<SolveResult> oracle;
    std::optional<SpatialGrid> oracle_grid;
    if (!use_exact && !co.self) {
        const int coarse = base.bench.spec.grid.intervals();
        oracle = reference::oracle_solve(base.bench, coarse, base.t_end, co.refine, co.oracle_tolerance);
        oracle_grid = SpatialGrid(base.bench.spec.grid.x_left(), base.bench.spec.grid.x_right(), coarse * co.refine);
    }

    Output o(rc.out, out);
    json doc = json::array();
    if (rc.format == "csv") *o << "tolerance_or_dt,t,midpoint_error,max_error\n";
    for (const Resolved& r : runs) {
        const SolveResult res = solve(r);
        const SpatialGrid& grid = r.bench.spec.grid;
        reference::ErrorSeries s;
        if (use_exact) {
            s = reference::error_vs_exact(res.history, grid, r.bench.exact);
        } else if (co.self) {
            const SolveResult again = solve(r);
            s = reference::error_vs_oracle(res.history, grid, again.history, grid);
        } else {
            s = reference::error_vs_oracle(res.history, grid, oracle->history, *oracle_grid);
        }
        const double param = r.fixed_dt ? *r.fixed_dt : r.bench.control.tolerance;
        if (rc.format == "csv") {
            for (std::size_t i = 0; i < s.times.size(); ++i) {
                *o << num(param) << ',' << num(s.times[i]) << ',' << num(s.midpoint_error[i]) << ','
                   << num(s.max_error[i]) << '\n';
            }
        } else {
            doc.push_back({{"tolerance_or_dt", param},
                           {"reference", use_exact ? "exact" : (co.self ? "self" : "oracle")},
                           {"t", s.times},
                           {"midpoint_error", s.midpoint_error},
                           {"max_error", s.max_error}});
        }
    }
    if (rc.format == "json") *o << doc.dump(2) << '\n';
    return kExitOk;
}

struct BenchOptions {
    double fixed_dt = 0.01;
    std::vector<double> tolerances{1e-3, 5e-4, 1e-5};
    std::vector<double> checkpoints;
};

int cmd_bench(const RunConfig& rc, const BenchOptions& bo, std::ostream& out) {
    check_format(rc.format);
    if (bo.checkpoints.empty()) throw ConfigError("bench needs a non-empty --checkpoints list");
    // In bench, --fixed-dt sets the reference sweep (0 disables it) and --tol
    // a single adaptive sweep; neither selects a solve mode.
    BenchOptions options = bo;
    RunConfig adjusted = rc;
    if (adjusted.fixed_dt) options.fixed_dt = *adjusted.fixed_dt;
    if (adjusted.tolerance) options.tolerances = {*adjusted.tolerance};
    adjusted.fixed_dt.reset();
    adjusted.tolerance.reset();
    if (adjusted.case_name.empty() && adjusted.config_path.empty()) adjusted.case_name = "case1";
    const Resolved r = resolve(adjusted);
    const double t50 = reference::normalization_unit();
    const auto table = reference::work_scaling(r.bench, options.fixed_dt, options.tolerances, options.checkpoints, t50);

    auto fit_for = [&](const reference::WorkReport& row) -> const reference::SeriesFit& {
        for (const auto& f : table.fits) {
            if (f.mode == row.mode && f.tolerance_or_dt == row.tolerance_or_dt) return f;
        }
        return table.fits.front();
    };

    Output o(rc.out, out);
    if (rc.format == "csv") {
        // Deterministic columns first; wall_time_s onwards varies between runs.
        *o << "mode,tolerance_or_dt,checkpoint,t,accepted_steps,rejected_trials,history_terms,"
              "history_terms_slope,steps_slope,wall_time_s,normalized_time,wall_time_slope\n";
        for (const auto& row : table.rows) {
            const auto& f = fit_for(row);
            *o << row.mode << ',' << num(row.tolerance_or_dt) << ',' << num(row.checkpoint) << ',' << num(row.t)
               << ',' << row.accepted_steps << ',' << row.rejected_trials << ',' << row.history_terms << ','
               << num(f.history_terms_slope) << ',' << num(f.steps_slope) << ',' << num(row.wall_time_s) << ','
               << num(row.normalized_time) << ',' << num(f.wall_time_slope) << '\n';
        }
        return kExitOk;
    }
    json doc;
    doc["case"] = r.bench.name;
    doc["t50_s"] = t50;
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"mode", row.mode},
                        {"tolerance_or_dt", row.tolerance_or_dt},
                        {"checkpoint", row.checkpoint},
                        {"t", row.t},
                        {"accepted_steps", row.accepted_steps},
                        {"rejected_trials", row.rejected_trials},
                        {"history_terms", row.history_terms},
                        {"wall_time_s", row.wall_time_s},
                        {"normalized_time", row.normalized_time}});
    }
    json fits = json::array();
    for (const auto& f : table.fits) {
        fits.push_back({{"mode", f.mode},
                        {"tolerance_or_dt", f.tolerance_or_dt},
                        {"history_terms_slope", f.history_terms_slope},
                        {"steps_slope", f.steps_slope},
                        {"wall_time_slope", f.wall_time_slope}});
    }
    doc["rows"] = rows;
    doc["fits"] = fits;
    *o << doc.dump(2) << '\n';
    return kExitOk;
}

int cmd_list_cases(std::ostream& out) {
    out.precision(17);
    out << "name,intervals,dx,tolerance,t_end,exact\n";
    for (const auto& name : cases::case_names()) {
        const auto c = cases::make_case(name);
        out << c.name << ',' << c.default_intervals << ',' << num(c.default_dx()) << ','
            << num(c.default_tolerance()) << ',' << num(c.default_t_end) << ','
            << (c.has_exact() ? "yes" : "no (oracle)") << '\n';
    }
    return kExitOk;
}

void add_common(CLI::App* sub, RunConfig& rc, double& tol, double& fixed_dt, int& den, double& dx, double& t_end,
                double& init, double& min_step, double& max_step) {
    sub->add_option("--case", rc.case_name, "built-in case (case1..case4)");
    sub->add_option("--config", rc.config_path, "JSON problem definition");
    sub->add_option("--tol", tol, "adaptive tolerance");
    sub->add_option("--fixed-dt", fixed_dt, "fixed step size (disables the controller)");
    sub->add_option("--dx-den,--J", den, "number of spatial intervals: dx = (x_right - x_left)/N");
    sub->add_option("--dx", dx, "spatial step (must divide the domain)");
    sub->add_option("--t-end", t_end, "final time");
    sub->add_option("--initial-step", init, "first trial step");
    sub->add_option("--min-step", min_step, "smallest allowed step");
    sub->add_option("--max-step", max_step, "largest allowed step");
    sub->add_option("--out", rc.out, "output file (default: stdout)");
    sub->add_option("--format", rc.format, "csv or json");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adaptive L1 solver for variable-order time-fractional diffusion", "vofde"};
    app.require_subcommand(1);

    RunConfig rc;
    double tol = 0, fixed_dt = 0, dx = 0, t_end = 0, init = 0, min_step = 0, max_step = 0;
    int den = 0;

    CLI::App* run = app.add_subcommand("run", "solve one problem and write its trajectory");
    CLI::App* compare = app.add_subcommand("compare", "error series against the exact solution or an oracle run");
    CLI::App* bench = app.add_subcommand("bench", "work and timing scaling table");
    CLI::App* list = app.add_subcommand("list-cases", "list built-in cases");

    for (CLI::App* sub : {run, compare, bench}) {
        add_common(sub, rc, tol, fixed_dt, den, dx, t_end, init, min_step, max_step);
    }
    run->add_option("--probe", rc.probes, "x positions to tabulate ('mid' or numbers)")->delimiter(',');

    CompareOptions co;
    compare->add_option("--tolerances", co.tolerances, "several tolerances, comma separated")->delimiter(',');
    compare->add_flag("--oracle", co.force_oracle, "use the oracle even when an exact solution exists");
    compare->add_flag("--self", co.self, "compare against an identical re-run");
    compare->add_option("--refine", co.refine, "oracle grid refinement factor");
    compare->add_option("--oracle-tol", co.oracle_tolerance, "oracle tolerance");

    BenchOptions bo;
    bench->add_option("--checkpoints", bo.checkpoints, "increasing times at which work is sampled")
        ->delimiter(',');
    bench->add_option("--tolerances", bo.tolerances, "adaptive tolerances")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    CLI::App* active = app.get_subcommands().front();
    auto given = [&](const std::string& name) {
        const CLI::Option* o = active->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
    };
    if (given("--tol")) rc.tolerance = tol;
    if (given("--fixed-dt")) rc.fixed_dt = fixed_dt;
    if (given("--dx-den")) rc.intervals = den;
    if (given("--dx")) rc.dx = dx;
    if (given("--t-end")) rc.t_end = t_end;
    if (given("--initial-step")) rc.initial_step = init;
    if (given("--min-step")) rc.min_step = min_step;
    if (given("--max-step")) rc.max_step = max_step;

    try {
        if (active == list) return cmd_list_cases(out);
        if (active == run) return cmd_run(rc, out);
        if (active == compare) return cmd_compare(rc, co, out);
        return cmd_bench(rc, bo, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitNumerical;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("vofde");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace vofde::cli
