#include "qcd/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <type_traits>
#include <variant>

#include "CLI11.hpp"
#include "qcd/chaos.hpp"
#include "qcd/clark_ocone.hpp"
#include "qcd/errors.hpp"
#include "qcd/grid_paths.hpp"
#include "qcd/hedging.hpp"
#include "qcd/heat_kernel.hpp"
#include "qcd/ito_girsanov.hpp"
#include "qcd/parallel.hpp"
#include "qcd/quadratic_covariation.hpp"
#include "qcd/report_format.hpp"
#include "qcd/stats.hpp"

namespace qcd::cli {

namespace {

// Resolved knobs of one run. Each subcommand registers the subset it uses.
struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t paths = 1000;
    std::size_t steps = 1024;
    double horizon = 1.0;
    double start = 0.0;
    double eps = 0.0;  // 0 selects 1e-4 * T
    std::string payoff = "indicator:0.5";
    std::string lambda;
    double strike = 0.5;
    int truncate = 15;
    std::size_t window_k = 0;  // 0 selects round(1 / sqrt(dt))
    std::string process = "w";
    std::string drift = "0.05";
    std::string volatility = "0.2";
    std::string rate = "0.01";
    double p0 = 1.0;
    std::string freqs = "64,256,1024";
    int max_order = 4;

    // output plumbing, never echoed
    std::string format = "csv";
    std::string output;
    std::string per_path;
    unsigned threads = 0;
};

template <class T>
std::string to_text(const T& value) {
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(value);
    } else if constexpr (std::is_integral_v<T>) {
        return std::to_string(value);
    } else {
        return value;
    }
}

struct Command {
    CLI::App* app = nullptr;
    RunConfig cfg;
    std::vector<std::pair<std::string, std::function<std::string()>>> echo;
    std::function<void(Command&)> resolve;  // fills defaults that depend on other knobs

    template <class T>
    CLI::Option* knob(const std::string& name, T& target, const std::string& help) {
        echo.emplace_back(name, [&target] { return to_text(target); });
        return app->add_option("--" + name, target, help)->capture_default_str();
    }

    std::vector<std::pair<std::string, std::string>> resolved() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [name, value] : echo) {
            out.emplace_back(name, value());
        }
        return out;
    }
};

using Report = std::variant<Table, Json>;

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.empty() || v <= 0) {
            throw InvalidArgument("malformed positive integer '" + item + "' in '" + text + "'");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) {
        throw InvalidArgument("empty integer list");
    }
    return out;
}

double resolved_eps(const RunConfig& cfg) {
    return cfg.eps == 0.0 ? default_cutoff(cfg.horizon) : cfg.eps;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

Report run_paths(const RunConfig& cfg) {
    const PathEnsemble ens =
        simulate_brownian(make_uniform_grid(cfg.horizon, cfg.steps), cfg.paths, cfg.seed, cfg.start);
    Table table{{"path_id", "t", "value"}, {}};
    for (std::size_t p = 0; p < ens.size(); ++p) {
        const SamplePath w = ens.path(p);
        for (std::size_t i = 0; i < w.size(); ++i) {
            table.rows.push_back({Json(p), Json(w.grid().node(i)), Json(w[i])});
        }
    }
    return table;
}

struct ProcessSpec {
    SamplePath path;
    std::function<double(double)> target;
};

ProcessSpec build_process(const std::string& text, const SamplePath& w) {
    const TimeGrid& grid = w.grid();
    if (text == "w") {
        return {w, [](double) { return 1.0; }};
    }
    if (text == "int-t") {
        std::vector<double> ident(grid.steps());
        for (std::size_t i = 0; i < ident.size(); ++i) {
            ident[i] = grid.node(i);
        }
        return {ito_integral(make_integrand(grid, std::move(ident)), w),
                [](double t) { return t; }};
    }
    if (text.rfind("scaled:", 0) == 0) {
        const double sigma = DeterministicFn::parse(text.substr(7)).intercept();
        std::vector<double> values(w.values());
        for (double& v : values) {
            v *= sigma;
        }
        return {SamplePath(grid, std::move(values), "S"), [sigma](double) { return sigma; }};
    }
    if (text.rfind("drift:", 0) == 0) {
        const DeterministicFn lambda = DeterministicFn::parse(text.substr(6));
        std::vector<double> values(w.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            values[i] = lambda.integral(0.0, grid.node(i));
        }
        return {SamplePath(grid, std::move(values), "A"), [](double) { return 0.0; }};
    }
    throw InvalidArgument("unknown process '" + text +
                          "' (expected w, int-t, scaled:c, drift:<fn>)");
}

Report run_verify_qcd(RunConfig& cfg) {
    const TimeGrid grid = make_uniform_grid(cfg.horizon, cfg.steps);
    const SamplePath w = simulate_brownian(grid, 1, cfg.seed, cfg.start).path(0);
    const ProcessSpec process = build_process(cfg.process, w);
    QcdEstimatorConfig est = QcdEstimatorConfig::defaults(grid);
    if (cfg.window_k != 0) {
        est.half_width_k = cfg.window_k;
    }
    const QcdProfile profile = qcd_profile(process.path, w, est);
    Table table{{"t", "estimate", "target", "abs_error"}, {}};
    for (std::size_t i = 0; i <= grid.steps(); ++i) {
        if (profile.flagged[i]) {
            continue;
        }
        const double t = grid.node(i);
        const double target = process.target(t);
        table.rows.push_back({Json(t), Json(profile.estimate[i]), Json(target),
                              Json(std::abs(profile.estimate[i] - target))});
    }
    return table;
}

Json report_json(const RepresentationReport& report) {
    return Json{{"e_F", report.e_f},
                {"e_F_se", report.e_f_se},
                {"e_F_closed_form", report.e_f_closed_form},
                {"reconstruction_mean", report.reconstruction_mean},
                {"reconstruction_se", report.reconstruction_se},
                {"l2_error", report.l2_error},
                {"max_error", report.max_error},
                {"N", report.steps},
                {"M", report.paths},
                {"eps", report.eps},
                {"measure_change", report.measure_change}};
}

Report run_clark_ocone(const RunConfig& cfg) {
    const PayoffSpec spec{parse_payoff(cfg.payoff), cfg.horizon, cfg.start};
    const PathEnsemble ens =
        simulate_brownian(make_uniform_grid(cfg.horizon, cfg.steps), cfg.paths, cfg.seed, cfg.start);
    const double eps = resolved_eps(cfg);
    const RepresentationReport report =
        cfg.lambda.empty()
            ? verify_ensemble(spec, ens, eps)
            : verify_ensemble_com(spec, DeterministicFn::parse(cfg.lambda), ens, eps);
    Json json = report_json(report);
    json["seed"] = cfg.seed;
    if (!cfg.per_path.empty()) {
        std::ofstream file(cfg.per_path);
        if (!file) {
            throw std::runtime_error("cannot open per-path output '" + cfg.per_path + "'");
        }
        Table rows{{"path_id", "payoff", "reconstruction", "error"}, {}};
        for (std::size_t p = 0; p < report.paths; ++p) {
            rows.rows.push_back({Json(p), Json(report.payoffs[p]), Json(report.reconstructions[p]),
                                 Json(report.payoffs[p] - report.reconstructions[p])});
        }
        write_csv(file, rows);
    }
    return json;
}

Report run_chaos(const RunConfig& cfg) {
    if (cfg.truncate < 0) {
        throw InvalidArgument("--truncate must be non-negative");
    }
    const ChaosCoefficients coeffs =
        cfg.lambda.empty()
            ? indicator_coefficients(cfg.truncate, cfg.horizon, cfg.start, cfg.strike)
            : indicator_coefficients_com(cfg.truncate, cfg.horizon, cfg.start, cfg.strike,
                                         DeterministicFn::parse(cfg.lambda));
    Table table{{"n", "g_n", "partial_norm", "target_norm"}, {}};

    std::vector<double> l2;
    if (cfg.paths > 0) {
        table.columns.push_back("l2_error");
        const PathEnsemble ens = simulate_brownian(make_uniform_grid(cfg.horizon, cfg.steps),
                                                   cfg.paths, cfg.seed, cfg.start);
        const std::size_t orders = coeffs.g.size();
        std::vector<std::vector<double>> errors(orders, std::vector<double>(ens.size()));
        // Without a measure change the expansion is in W; with one, in W~.
        const std::optional<DeterministicFn> lambda =
            cfg.lambda.empty() ? std::nullopt
                               : std::optional(DeterministicFn::parse(cfg.lambda));
        parallel_for(ens.size(), [&](std::size_t p) {
            const SamplePath w = ens.path(p);
            const SamplePath driver = lambda ? shift_path(w, *lambda) : w;
            const double payoff = w.terminal() >= cfg.strike ? 1.0 : 0.0;
            const auto partials = truncated_chaos_partials(coeffs, driver);
            for (std::size_t n = 0; n < orders; ++n) {
                errors[n][p] = payoff - partials[n];
            }
        });
        for (const auto& e : errors) {
            l2.push_back(rms(e));
        }
    }
    for (int n = 0; n <= cfg.truncate; ++n) {
        const NormIdentity norm = norm_identity(coeffs, n);
        std::vector<Json> row{Json(n), Json(coeffs.g[n]), Json(norm.partial_sum),
                              Json(norm.target)};
        if (!l2.empty()) {
            row.emplace_back(l2[n]);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Report run_hedge(const RunConfig& cfg) {
    MarketSpec mkt;
    mkt.drift = DeterministicFn::parse(cfg.drift);
    mkt.volatility = DeterministicFn::parse(cfg.volatility);
    mkt.rate = DeterministicFn::parse(cfg.rate);
    mkt.strike = cfg.strike;
    mkt.horizon = cfg.horizon;
    mkt.initial_price = cfg.p0;
    const PathEnsemble ens =
        simulate_brownian(make_uniform_grid(cfg.horizon, cfg.steps), cfg.paths, cfg.seed, cfg.start);
    const auto rows = hedge_report(mkt, ens, parse_sizes(cfg.freqs), resolved_eps(cfg));
    Table table{{"frequency", "l2_error", "q95_error", "mean_error"}, {}};
    for (const auto& row : rows) {
        table.rows.push_back(
            {Json(row.frequency), Json(row.l2_error), Json(row.q95_error), Json(row.mean_error)});
    }
    return table;
}

Report run_heat_check(const RunConfig& cfg) {
    if (cfg.max_order < 0 || cfg.max_order > heat::kDefaultMaxOrder) {
        throw InvalidArgument("--max-order must lie in [0, 12]");
    }
    Table table{{"n", "t", "x", "heat_eq_residual", "hermite_residual"}, {}};
    const double times[] = {0.5, 1.0, 2.0};
    const double points[] = {-1.5, -0.5, 0.0, 0.5, 1.5};
    for (int n = 0; n <= cfg.max_order; ++n) {
        for (double t : times) {
            for (double x : points) {
                const double closed = heat::density_dx(n, t, x);
                const double direct = heat::density_dx_direct(n, t, x);
                table.rows.push_back({Json(n), Json(t), Json(x),
                                      Json(heat::heat_equation_residual(n, t, x)),
                                      Json(std::abs(closed - direct))});
            }
        }
    }
    return table;
}

Report run_girsanov(const RunConfig& cfg) {
    const DeterministicFn lambda = DeterministicFn::parse(cfg.lambda.empty() ? "const:0.5" : cfg.lambda);
    const PathEnsemble ens =
        simulate_brownian(make_uniform_grid(cfg.horizon, cfg.steps), cfg.paths, cfg.seed, cfg.start);
    std::vector<double> z_t(ens.size()), payoff(ens.size()), inverse_err(ens.size());
    parallel_for(ens.size(), [&](std::size_t p) {
        const SamplePath w = ens.path(p);
        const MeasureChange mc = make_measure_change(lambda, w);
        z_t[p] = mc.density.terminal();
        payoff[p] = w.terminal() >= cfg.strike ? 1.0 : 0.0;
        double worst = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            worst = std::max(worst, std::abs(mc.density[i] * mc.inverse[i] - 1.0));
        }
        inverse_err[p] = worst;
    });
    const MeanSE z = mean_se(z_t);
    const MeanSE tilde = bayes_reweight(payoff, z_t);
    const PayoffSpec spec{Indicator{cfg.strike}, cfg.horizon, cfg.start};
    double worst = 0.0;
    for (double e : inverse_err) {
        worst = std::max(worst, e);
    }
    return Json{{"mean_Z_T", z.mean},
                {"se", z.se},
                {"tilde_mean_F", tilde.mean},
                {"tilde_se_F", tilde.se},
                {"tilde_closed_form", expected_payoff_com(spec, lambda)},
                {"max_inverse_error", worst},
                {"lambda", lambda.to_string()},
                {"N", cfg.steps},
                {"M", cfg.paths},
                {"seed", cfg.seed}};
}

// ---------------------------------------------------------------------------
// Config files and output
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Appends "--key value" for every entry of the config file whose flag is not
// already on the command line.
std::vector<std::string> merge_config_file(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream file(path);
    if (!file) {
        throw InvalidArgument("cannot read config file '" + path + "'");
    }
    const auto on_command_line = [&](const std::string& flag) {
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) {
                return true;
            }
        }
        return false;
    };
    std::vector<std::string> merged = args;
    if (file.peek() == '{') {
        // JSON report: take its "config" object, else the top-level object
        Json doc = Json::parse(file, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw InvalidArgument("config file '" + path + "' is not valid JSON");
        }
        const Json& entries = doc.contains("config") ? doc["config"] : doc;
        for (const auto& [key, value] : entries.items()) {
            const std::string text = value.is_string() ? value.get<std::string>() : value.dump();
            const std::string flag = "--" + key;
            if (!text.empty() && !on_command_line(flag)) {
                merged.push_back(flag + "=" + text);
            }
        }
        return merged;
    }
    std::string line;
    while (std::getline(file, line)) {
        line = trim(line);
        if (line.rfind("# ", 0) == 0) {
            line = trim(line.substr(2));  // config echoed in a CSV report
        }
        const auto eq = line.find('=');
        if (line.empty() || line[0] == '#' || eq == std::string::npos) {
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        // an empty value is the flag's default
        const std::string flag = "--" + key;
        if (!value.empty() && !on_command_line(flag)) {
            merged.push_back(flag + "=" + value);
        }
    }
    return merged;
}

void emit(std::ostream& out, const Report& report, const std::string& command,
          const std::vector<std::pair<std::string, std::string>>& config,
          const std::string& format) {
    if (format == "json") {
        Json config_json = Json::object();
        for (const auto& [k, v] : config) {
            config_json[k] = v;
        }
        Json doc;
        doc["command"] = command;
        if (const auto* table = std::get_if<Table>(&report)) {
            doc["columns"] = table->columns;
            Json rows = Json::array();
            for (const auto& row : table->rows) {
                rows.push_back(Json(row));
            }
            doc["rows"] = std::move(rows);
        } else {
            for (const auto& [k, v] : std::get<Json>(report).items()) {
                doc[k] = v;
            }
        }
        doc["config"] = std::move(config_json);
        out << dump_json(doc) << '\n';
        return;
    }
    std::vector<std::string> preamble{"qcdsim " + command};
    for (const auto& [k, v] : config) {
        preamble.push_back(k + " = " + v);
    }
    if (const auto* table = std::get_if<Table>(&report)) {
        write_csv(out, *table, preamble);
        return;
    }
    Table kv{{"key", "value"}, {}};
    for (const auto& [k, v] : std::get<Json>(report).items()) {
        kv.rows.push_back({Json(k), v});
    }
    write_csv(out, kv, preamble);
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qcdsim: quadratic covariation derivative simulations"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<Command>> commands;
    const auto add_command = [&](const std::string& name, const std::string& help) -> Command& {
        auto cmd = std::make_unique<Command>();
        cmd->app = app.add_subcommand(name, help);
        Command& ref = *cmd;
        ref.app->add_option("--format", ref.cfg.format, "Report format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        ref.app->add_option("--output", ref.cfg.output, "Report path (default stdout)");
        ref.app->add_option("--threads", ref.cfg.threads,
                            "Worker cap (0: QCDSIM_THREADS, then hardware)");
        ref.app->add_option("--config", "Config file of 'flag = value' lines");
        commands.push_back(std::move(cmd));
        return ref;
    };

    std::map<std::string, std::function<Report(RunConfig&)>> runners;

    {
        Command& c = add_command("paths", "Dump simulated Brownian paths");
        c.cfg.paths = 4;
        c.cfg.steps = 16;
        c.knob("seed", c.cfg.seed, "RNG seed");
        c.knob("paths", c.cfg.paths, "Number of paths M");
        c.knob("steps", c.cfg.steps, "Grid steps N");
        c.knob("horizon", c.cfg.horizon, "Horizon T");
        c.knob("start", c.cfg.start, "Start point W_0");
        runners["paths"] = [](RunConfig& cfg) { return run_paths(cfg); };
    }
    {
        Command& c = add_command("verify-qcd", "Strong QCD estimator against its target");
        c.cfg.steps = 1u << 14;
        c.knob("seed", c.cfg.seed, "RNG seed");
        c.knob("steps", c.cfg.steps, "Grid steps N");
        c.knob("window-k", c.cfg.window_k, "Half width k in steps (0: round(1/sqrt(dt)))");
        c.knob("horizon", c.cfg.horizon, "Horizon T");
        c.knob("start", c.cfg.start, "Start point W_0");
        c.knob("process", c.cfg.process, "S: w, int-t, scaled:c, drift:<fn>");
        c.resolve = [](Command& self) {
            if (self.cfg.window_k == 0) {
                self.cfg.window_k =
                    QcdEstimatorConfig::defaults(make_uniform_grid(self.cfg.horizon, self.cfg.steps))
                        .half_width_k;
            }
        };
        runners["verify-qcd"] = [](RunConfig& cfg) { return run_verify_qcd(cfg); };
    }
    {
        Command& c = add_command("clark-ocone", "Clark-Ocone reconstruction over an ensemble");
        c.cfg.format = "json";
        c.knob("payoff", c.cfg.payoff, "Payoff: indicator:K, poly:c0,..., sin, cos");
        c.knob("paths", c.cfg.paths, "Number of paths M");
        c.knob("steps", c.cfg.steps, "Grid steps N");
        c.knob("seed", c.cfg.seed, "RNG seed");
        c.knob("eps", c.cfg.eps, "Near-expiry cutoff (0: 1e-4 T)");
        c.knob("lambda", c.cfg.lambda, "Measure change lambda (const:c, linear:a,b)");
        c.knob("horizon", c.cfg.horizon, "Horizon T");
        c.knob("start", c.cfg.start, "Start point W_0");
        c.app->add_option("--per-path", c.cfg.per_path, "Per-path CSV output");
        runners["clark-ocone"] = [](RunConfig& cfg) { return run_clark_ocone(cfg); };
    }
    {
        Command& c = add_command("chaos", "Chaos coefficients of the Brownian indicator");
        c.cfg.paths = 0;
        c.cfg.strike = 0.0;
        c.knob("strike", c.cfg.strike, "Strike K");
        c.knob("start", c.cfg.start, "Start point x");
        c.knob("horizon", c.cfg.horizon, "Horizon T");
        c.knob("truncate", c.cfg.truncate, "Truncation order");
        c.knob("lambda", c.cfg.lambda, "Expand in W~ = W + int lambda");
        c.knob("paths", c.cfg.paths, "Paths for reconstruction errors (0: none)");
        c.knob("steps", c.cfg.steps, "Grid steps N");
        c.knob("seed", c.cfg.seed, "RNG seed");
        runners["chaos"] = [](RunConfig& cfg) { return run_chaos(cfg); };
    }
    {
        Command& c = add_command("hedge", "Digital option replication backtest");
        c.cfg.steps = 1024;
        c.knob("b", c.cfg.drift, "Stock drift b(t)");
        c.knob("a", c.cfg.volatility, "Stock volatility a(t)");
        c.knob("r", c.cfg.rate, "Interest rate r(t)");
        c.knob("strike", c.cfg.strike, "Strike K on W_T");
        c.knob("p0", c.cfg.p0, "Initial stock price");
        c.knob("paths", c.cfg.paths, "Number of paths M");
        c.knob("steps", c.cfg.steps, "Grid steps N");
        c.knob("freqs", c.cfg.freqs, "Rebalances per horizon, comma separated");
        c.knob("eps", c.cfg.eps, "Near-expiry cutoff (0: 1e-4 T)");
        c.knob("seed", c.cfg.seed, "RNG seed");
        c.knob("horizon", c.cfg.horizon, "Horizon T");
        c.knob("start", c.cfg.start, "Start point W_0");
        runners["hedge"] = [](RunConfig& cfg) { return run_hedge(cfg); };
    }
    {
        Command& c = add_command("heat-check", "Heat-kernel identity residuals");
        c.knob("max-order", c.cfg.max_order, "Largest derivative order");
        runners["heat-check"] = [](RunConfig& cfg) { return run_heat_check(cfg); };
    }
    {
        Command& c = add_command("girsanov", "Stochastic exponential and Bayes reweighting");
        c.cfg.lambda = "const:0.5";
        c.cfg.paths = 10000;
        c.cfg.steps = 256;
        c.cfg.format = "json";
        c.knob("lambda", c.cfg.lambda, "lambda: const:c or linear:a,b");
        c.knob("paths", c.cfg.paths, "Number of paths M");
        c.knob("steps", c.cfg.steps, "Grid steps N");
        c.knob("strike", c.cfg.strike, "Indicator strike for the reweighting check");
        c.knob("seed", c.cfg.seed, "RNG seed");
        c.knob("horizon", c.cfg.horizon, "Horizon T");
        c.knob("start", c.cfg.start, "Start point W_0");
        runners["girsanov"] = [](RunConfig& cfg) { return run_girsanov(cfg); };
    }

    try {
        const std::vector<std::string> args = merge_config_file(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitValidation;
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    Command* chosen = nullptr;
    for (auto& cmd : commands) {
        if (cmd->app->parsed()) {
            chosen = cmd.get();
        }
    }
    if (!chosen) {
        err << "error: no subcommand\n" << app.help();
        return kExitValidation;
    }
    const std::string name = chosen->app->get_name();
    RunConfig& cfg = chosen->cfg;

    try {
        set_thread_count(resolve_threads(cfg.threads));
        if (cfg.eps == 0.0) {
            cfg.eps = default_cutoff(cfg.horizon);
        }
        if (chosen->resolve) {
            chosen->resolve(*chosen);
        }
        const Report report = runners.at(name)(cfg);
        if (cfg.output.empty()) {
            emit(out, report, name, chosen->resolved(), cfg.format);
        } else {
            std::ofstream file(cfg.output);
            if (!file) {
                throw std::runtime_error("cannot open output '" + cfg.output + "'");
            }
            emit(file, report, name, chosen->resolved(), cfg.format);
        }
    } catch (const std::logic_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace qcd::cli
