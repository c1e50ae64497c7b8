#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/lyapunov.hpp"
#include "optosqueeze/presets.hpp"
#include "optosqueeze/serialization.hpp"
#include "optosqueeze/stability.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kDefaultParamSet = "appendixC";

constexpr std::string_view kSetKeysHelp =
    "Override one parameter, KEY=VAL (repeatable). Keys: lambda_over_kappa, phi_over_pi, "
    "p_plus_over_p_minus, g_minus_over_kappa, g_plus_over_g_minus, temperature_mk, gamma_over_kappa, "
    "omega_m, omega_c, kappa, gamma, g, lambda_pa, phi, temperature, P_minus, P_plus, G_minus, G_plus";

struct Common {
    std::string preset;
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    std::string format;
    unsigned jobs = 0;
};

void add_common(CLI::App& cmd, Common& c, bool with_jobs) {
    cmd.add_option("--preset", c.preset, "Named parameter set (appendixC, baseline) or a figure preset's base");
    cmd.add_option("--config", c.config, "JSON file with PhysicalParams fields");
    cmd.add_option("--set", c.sets, std::string(kSetKeysHelp))->allow_extra_args(false);
    cmd.add_option("--out", c.out, "Write data to this path");
    cmd.add_option("--format", c.format, "Data format")->check(CLI::IsMember({"csv", "json"}));
    if (with_jobs) cmd.add_option("--jobs", c.jobs, "Worker threads (default: available parallelism)");
}

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("invalid number '" + text + "' for " + what);
    }
}

void apply_override(PhysicalParams& p, const std::string& key, double v) {
    if (const auto axis = parse_axis_name(key)) {
        apply_setting(p, *axis, v);
        return;
    }
    const auto powers = [&]() -> DrivePowers& {
        if (!std::holds_alternative<DrivePowers>(p.drive)) p.drive = DrivePowers{};
        return std::get<DrivePowers>(p.drive);
    };
    const auto couplings = [&]() -> DirectCouplings& {
        if (!std::holds_alternative<DirectCouplings>(p.drive)) p.drive = DirectCouplings{};
        return std::get<DirectCouplings>(p.drive);
    };
    if (key == "omega_m") p.omega_m = v;
    else if (key == "omega_c") p.omega_c = v;
    else if (key == "kappa") p.kappa = v;
    else if (key == "gamma") p.gamma = v;
    else if (key == "g") p.g = v;
    else if (key == "lambda_pa") p.lambda_pa = v;
    else if (key == "phi") p.phi = v;
    else if (key == "temperature") p.temperature = v;
    else if (key == "P_minus") powers().p_minus = v;
    else if (key == "P_plus") powers().p_plus = v;
    else if (key == "G_minus") couplings().g_minus = v;
    else if (key == "G_plus") couplings().g_plus = v;
    else throw UsageError("unknown parameter '" + key + "'");
}

bool is_ratio_key(const std::string& key) { return key == "g_plus_over_g_minus" || key == "p_plus_over_p_minus"; }

void apply_overrides(PhysicalParams& p, const std::vector<std::string>& sets) {
    std::vector<std::pair<std::string, double>> parsed;
    for (const auto& item : sets) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--set expects KEY=VAL, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        parsed.emplace_back(key, parse_double(item.substr(eq + 1), key));
    }
    // Ratios act on the final red-tone value, as on sweep axes.
    std::stable_partition(parsed.begin(), parsed.end(), [](const auto& kv) { return !is_ratio_key(kv.first); });
    for (const auto& [key, v] : parsed) apply_override(p, key, v);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

PhysicalParams resolve_params(const Common& c) {
    PhysicalParams p;
    const std::string name = c.preset.empty() ? std::string(kDefaultParamSet) : c.preset;
    const auto figures = preset_names();
    if (std::find(figures.begin(), figures.end(), name) != figures.end()) {
        p = figure_preset(name).base;
    } else {
        p = named_params(name);
    }
    if (!c.config.empty()) p = params_from_json(read_json_file(c.config), p);
    apply_overrides(p, c.sets);
    p.validate();
    return p;
}

/// Data destination: --out, or stdout when a format was requested explicitly.
class DataSink {
public:
    DataSink(const Common& c, std::ostream& out) : out_(out), path_(c.out), explicit_(!c.format.empty()) {}

    [[nodiscard]] bool wanted() const { return !path_.empty() || explicit_; }
    [[nodiscard]] bool to_stdout() const { return path_.empty() && explicit_; }

    void write(const std::string& payload) {
        if (path_.empty()) {
            out_ << payload;
            return;
        }
        std::ofstream file(path_);
        if (!file) throw UsageError("cannot write '" + path_ + "'");
        file << payload;
        if (!file) throw UsageError("cannot write '" + path_ + "'");
    }

private:
    std::ostream& out_;
    std::string path_;
    bool explicit_;
};

std::string eigen_text(const std::complex<double>& z) {
    std::string s = format_number(z.real());
    if (z.imag() != 0.0) s += (z.imag() < 0.0 ? " - " : " + ") + format_number(std::abs(z.imag())) + "i";
    return s;
}

void print_metrics(std::ostream& out, const MetricRow& row) {
    out << "v_xc = " << format_number(row.v_xc) << '\n'
        << "v_yc = " << format_number(row.v_yc) << '\n'
        << "v_xd = " << format_number(row.v_xd) << '\n'
        << "v_yd = " << format_number(row.v_yd) << '\n'
        << "s2_c_db = " << format_number(row.s2_c_db) << '\n'
        << "s2_m_db = " << format_number(row.s2_m_db) << '\n'
        << "en_cc = " << format_number(row.en_cc) << '\n'
        << "en_mm = " << format_number(row.en_mm) << '\n'
        << "physical = " << (row.physical ? "yes" : "no") << '\n';
}

std::string metrics_payload(const MetricRow& row, const std::string& format, const json& extra = {}) {
    if (format == "csv") return metric_csv_header() + '\n' + metric_csv_row(row) + '\n';
    json j = extra.is_object() ? extra : json::object();
    j["metrics"] = metrics_to_json(row);
    return j.dump(2) + '\n';
}

int cmd_stability(const Common& c, std::ostream& out) {
    const ModelParams m = derive_model(resolve_params(c));
    const StabilityReport r = analyze(m);
    DataSink sink(c, out);
    if (sink.wanted()) {
        if (c.format == "csv") {
            std::ostringstream csv;
            csv << "quantity,value\n";
            csv << "s1," << format_number(r.coefficients.s1) << "\ns2," << format_number(r.coefficients.s2) << "\ns3,"
                << format_number(r.coefficients.s3) << "\ns4," << format_number(r.coefficients.s4) << '\n';
            csv << "h1," << format_number(r.h1) << "\nh2," << format_number(r.h2) << "\nh3," << format_number(r.h3)
                << '\n';
            csv << "spectral_abscissa," << format_number(r.spectral_abscissa) << "\nstable," << (r.usable() ? 1 : 0)
                << '\n';
            sink.write(csv.str());
        } else {
            sink.write(stability_to_json(r).dump(2) + '\n');
        }
        if (sink.to_stdout()) return kOk;
    }
    out << "s1 = " << format_number(r.coefficients.s1) << " kappa\n"
        << "s2 = " << format_number(r.coefficients.s2) << " kappa^2\n"
        << "s3 = " << format_number(r.coefficients.s3) << " kappa^3\n"
        << "s4 = " << format_number(r.coefficients.s4) << " kappa^4\n"
        << "h1 = " << format_number(r.h1) << " kappa^4\n"
        << "h2 = " << format_number(r.h2) << " kappa^5\n"
        << "h3 = " << format_number(r.h3) << " kappa^6\n"
        << "eigenvalues (kappa):\n";
    for (const auto& z : r.eigenvalues) out << "  " << eigen_text(z) << '\n';
    out << "spectral abscissa = " << format_number(r.spectral_abscissa) << " kappa\n";
    if (!r.consistent) out << "warning: Routh-Hurwitz and eigenvalue verdicts disagree\n";
    if (m.rwa_warning) out << "warning: rotating-wave approximation is marginal at these couplings\n";
    if (r.usable()) {
        out << "verdict: stable\n";
    } else if (r.marginal) {
        out << "verdict: marginal\n";
    } else {
        out << "verdict: unstable (" << (r.failed_condition.empty() ? "eigenvalues" : r.failed_condition) << ")\n";
    }
    return kOk;
}

int cmd_steady(const Common& c, std::ostream& out) {
    const ModelParams m = derive_model(resolve_params(c));
    const LyapunovSolution sol = steady_state(m);
    const MetricRow row = evaluate_metrics(sol.sigma);
    DataSink sink(c, out);
    if (sink.wanted()) {
        if (c.format == "csv") {
            sink.write(metrics_payload(row, "csv"));
        } else {
            json j = covariance_to_json(sol.sigma);
            j["residual_norm"] = sol.residual_norm;
            j["metrics"] = metrics_to_json(row);
            sink.write(j.dump(2) + '\n');
        }
        if (sink.to_stdout()) return kOk;
    }
    out << "residual = " << format_number(sol.residual_norm) << '\n';
    print_metrics(out, row);
    return kOk;
}

int cmd_metrics(const Common& c, const std::string& covariance, std::ostream& out) {
    CovarianceMatrix sigma;
    if (!covariance.empty()) {
        sigma = covariance_from_json(read_json_file(covariance));
    } else {
        sigma = steady_state(derive_model(resolve_params(c))).sigma;
    }
    const MetricRow row = evaluate_metrics(sigma);
    DataSink sink(c, out);
    if (sink.wanted()) {
        sink.write(metrics_payload(row, c.format.empty() ? "json" : c.format));
        if (sink.to_stdout()) return kOk;
    }
    print_metrics(out, row);
    return kOk;
}

int cmd_evolve(const Common& c, std::optional<double> t_end, std::size_t samples, std::ostream& out) {
    const PhysicalParams p = resolve_params(c);
    DataSink sink(c, out);
    Trajectory traj;
    std::optional<CovarianceMatrix> final_sigma;
    if (t_end) {
        SweepSpec spec;
        spec.name = "evolve";
        spec.base = p;
        spec.time_trace = TraceSpec{*t_end, samples, std::min(1e-2, *t_end / 10.0)};
        traj = run_time_trace(spec);
    } else {
        const ModelParams m = derive_model(p);
        EvolveResult r = evolve_to_steady(build_drift(m), build_diffusion(m), initial_covariance(m));
        traj = std::move(r.trajectory);
        final_sigma = r.sigma;
    }
    if (sink.wanted()) {
        if (c.format == "json") {
            json j{{"t_over_kappa", traj.times}, {"trace", traj.traces}, {"converged", traj.converged}};
            if (traj.t_converged) j["t_converged"] = *traj.t_converged;
            if (final_sigma) j["sigma"] = covariance_to_json(*final_sigma);
            sink.write(j.dump(2) + '\n');
        } else {
            std::ostringstream csv;
            write_trajectory_csv(csv, traj);
            sink.write(csv.str());
        }
        if (sink.to_stdout()) return kOk;
    }
    out << "samples = " << traj.times.size() << '\n'
        << "t_final = " << format_number(traj.times.back()) << " / kappa\n"
        << "trace(0) = " << format_number(traj.traces.front()) << '\n'
        << "trace(t_final) = " << format_number(traj.traces.back()) << '\n'
        << "steps = " << traj.accepted_steps << " accepted, " << traj.rejected_steps << " rejected\n";
    if (!t_end) {
        out << "converged = " << (traj.converged ? "yes" : "no");
        if (traj.t_converged) out << " at t = " << format_number(*traj.t_converged) << " / kappa";
        out << '\n';
    }
    return kOk;
}

Axis parse_axis(const std::string& text) {
    // NAME:MIN:MAX:COUNT or NAME=V1,V2,...
    if (const auto eq = text.find('='); eq != std::string::npos) {
        const auto name = parse_axis_name(text.substr(0, eq));
        if (!name) throw UsageError("unknown axis '" + text.substr(0, eq) + "'");
        std::vector<double> values;
        std::stringstream ss(text.substr(eq + 1));
        for (std::string item; std::getline(ss, item, ',');) values.push_back(parse_double(item, "axis value"));
        return Axis::list(*name, std::move(values));
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4) throw UsageError("--axis expects NAME:MIN:MAX:COUNT or NAME=V1,V2,..., got '" + text + "'");
    const auto name = parse_axis_name(parts[0]);
    if (!name) throw UsageError("unknown axis '" + parts[0] + "'");
    const double count = parse_double(parts[3], "axis count");
    if (!(count >= 0.0) || count != static_cast<double>(static_cast<std::size_t>(count))) {
        throw UsageError("axis count must be a non-negative integer");
    }
    return Axis::linear(*name, parse_double(parts[1], "axis min"), parse_double(parts[2], "axis max"),
                        static_cast<std::size_t>(count));
}

std::vector<Metric> parse_metrics(const std::vector<std::string>& names) {
    std::vector<Metric> out;
    for (const auto& n : names) {
        const auto m = parse_metric(n);
        if (!m) throw UsageError("unknown metric '" + n + "'");
        out.push_back(*m);
    }
    return out;
}

std::string describe_optimum(const SweepSpec& spec, const Optimum& o) {
    std::string s = std::string(to_string(o.metric)) + " = " + format_number(o.value) + " at ";
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
        if (k != 0) s += ", ";
        s += std::string(to_string(spec.axes[k].name)) + "=" + format_number(o.axis_values[k]);
    }
    return s;
}

std::string sweep_payload(const SweepResult& result, const std::string& format) {
    if (format == "json") return sweep_to_json(result).dump(2) + '\n';
    std::ostringstream csv;
    write_sweep_csv(csv, result);
    return csv.str();
}

void print_sweep_summary(std::ostream& out, const SweepResult& result) {
    const auto stable = std::count_if(result.grid.begin(), result.grid.end(), [](const GridPoint& p) { return p.stable; });
    out << "sweep " << result.spec.name << ": " << result.grid.size() << " points, " << stable << " stable\n";
    const auto it = std::find_if(result.optima.begin(), result.optima.end(),
                                 [&](const Optimum& o) { return o.metric == result.spec.primary_metric; });
    if (it != result.optima.end()) out << "optimum " << describe_optimum(result.spec, *it) << '\n';
}

SweepSpec build_sweep(const Common& c, const std::vector<std::string>& axes, const std::vector<std::string>& metrics,
                      bool skip_unstable) {
    SweepSpec spec;
    spec.name = "sweep";
    spec.base = resolve_params(c);
    for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
    if (!metrics.empty()) {
        spec.outputs = parse_metrics(metrics);
        spec.primary_metric = spec.outputs.front();
    }
    if (skip_unstable) spec.unstable_policy = UnstablePolicy::skip;
    return spec;
}

int cmd_sweep(const Common& c, const SweepSpec& spec, std::ostream& out) {
    const SweepResult result = run_sweep(spec, {c.jobs});
    const std::string format = c.format.empty() ? "csv" : c.format;
    if (c.out.empty()) {
        out << sweep_payload(result, format);
        return kOk;
    }
    DataSink sink(c, out);
    sink.write(sweep_payload(result, format));
    print_sweep_summary(out, result);
    return kOk;
}

SweepSpec preset_with_overrides(const std::string& name, const Common& c) {
    SweepSpec spec = figure_preset(name);
    if (!c.config.empty()) spec.base = params_from_json(read_json_file(c.config), spec.base);
    apply_overrides(spec.base, c.sets);
    spec.base.validate();
    return spec;
}

int cmd_figure(Common c, const std::string& positional, std::ostream& out) {
    if (positional.empty() && c.preset.empty()) throw UsageError("figure needs a preset name");
    if (!positional.empty() && !c.preset.empty() && positional != c.preset) {
        throw UsageError("figure name given twice ('" + positional + "' and '" + c.preset + "')");
    }
    const std::string name = positional.empty() ? c.preset : positional;
    const SweepSpec spec = preset_with_overrides(name, c);
    const std::string format = c.format.empty() ? "csv" : c.format;
    if (c.out.empty()) c.out = name + "." + format;
    DataSink sink(c, out);

    if (spec.time_trace) {
        const Trajectory traj = run_time_trace(spec);
        if (format == "json") {
            sink.write(json{{"t_over_kappa", traj.times}, {"trace", traj.traces}}.dump(2) + '\n');
        } else {
            std::ostringstream csv;
            write_trajectory_csv(csv, traj);
            sink.write(csv.str());
        }
        out << "figure " << name << ": " << traj.times.size() << " trace samples written to " << c.out << '\n';
        return kOk;
    }
    const SweepResult result = run_sweep(spec, {c.jobs});
    sink.write(sweep_payload(result, format));
    print_sweep_summary(out, result);
    out << "written to " << c.out << '\n';
    return kOk;
}

int cmd_optimum(const Common& c, const std::string& positional, const std::vector<std::string>& axes,
                const std::vector<std::string>& metrics, std::ostream& out) {
    SweepSpec spec;
    if (!positional.empty()) {
        if (!axes.empty()) throw UsageError("optimum takes either a figure preset or --axis, not both");
        spec = preset_with_overrides(positional, c);
        if (spec.time_trace) throw UsageError("'" + positional + "' is a time-trace preset and has no optimum");
    } else {
        if (axes.empty()) throw UsageError("optimum needs a figure preset or at least one --axis");
        spec = build_sweep(c, axes, {}, false);
    }
    std::vector<Metric> wanted = metrics.empty() ? std::vector<Metric>{spec.primary_metric} : parse_metrics(metrics);
    spec.outputs = wanted;
    spec.primary_metric = wanted.front();
    const SweepResult result = run_sweep(spec, {c.jobs});

    json j = json::array();
    for (const Metric m : wanted) {
        const Optimum o = find_optimum(result, m);
        out << "optimum " << describe_optimum(spec, o) << '\n';
        json values = json::object();
        for (std::size_t k = 0; k < spec.axes.size(); ++k) {
            values[std::string(to_string(spec.axes[k].name))] = o.axis_values[k];
        }
        j.push_back({{"metric", to_string(m)}, {"value", o.value}, {"axis_values", values}, {"index", o.index}});
    }
    if (!c.out.empty()) {
        DataSink sink(c, out);
        if (c.format == "csv") {
            std::ostringstream csv;
            csv << "metric,value";
            for (const auto& axis : spec.axes) csv << ',' << to_string(axis.name);
            csv << '\n';
            for (const auto& item : j) {
                csv << item["metric"].get<std::string>() << ',' << format_number(item["value"].get<double>());
                for (const auto& axis : spec.axes) {
                    csv << ',' << format_number(item["axis_values"][std::string(to_string(axis.name))].get<double>());
                }
                csv << '\n';
            }
            sink.write(csv.str());
        } else {
            sink.write(j.dump(2) + '\n');
        }
    }
    return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Steady-state squeezing and entanglement of two optomechanical cavities", "optosqueeze"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every command");

    Common common;
    std::optional<double> t_end;
    std::size_t samples = 400;
    std::string covariance;
    std::string figure_name;
    std::string optimum_name;
    std::vector<std::string> axes;
    std::vector<std::string> metrics;
    bool skip_unstable = false;

    auto* stability = app.add_subcommand("stability", "Routh-Hurwitz coefficients, drift eigenvalues and verdict");
    add_common(*stability, common, false);

    auto* steady = app.add_subcommand("steady", "Steady-state covariance from the Lyapunov equation");
    add_common(*steady, common, false);

    auto* evolve = app.add_subcommand("evolve", "Integrate the covariance matrix in time");
    add_common(*evolve, common, false);
    evolve->add_option("--t-end", t_end, "Stop at this time (1/kappa) instead of at convergence")
        ->check(CLI::PositiveNumber);
    evolve->add_option("--samples", samples, "Log-spaced trace samples with --t-end")->check(CLI::Range(2, 1000000));

    auto* sweep = app.add_subcommand("sweep", "Grid sweep over one or two parameters");
    add_common(*sweep, common, true);
    sweep->add_option("--axis", axes, "NAME:MIN:MAX:COUNT or NAME=V1,V2,... (one or two)")->required();
    sweep->add_option("--metric", metrics, "Output metric (repeatable; default all)");
    sweep->add_flag("--skip-unstable", skip_unstable, "Drop unstable points instead of marking them");

    auto* figure = app.add_subcommand("figure", "Regenerate a figure dataset; writes <preset>.csv by default");
    add_common(*figure, common, true);
    figure->add_option("name", figure_name, "Figure preset (fig2a ... fig7b, fig9)");

    auto* optimum = app.add_subcommand("optimum", "Grid argmax of a metric over a figure preset or a sweep");
    add_common(*optimum, common, true);
    optimum->add_option("name", optimum_name, "Figure preset");
    optimum->add_option("--axis", axes, "NAME:MIN:MAX:COUNT or NAME=V1,V2,... when no preset is given");
    optimum->add_option("--metric", metrics, "Metric to maximize (repeatable; default the preset's primary)");

    auto* metrics_cmd = app.add_subcommand("metrics", "Squeezing and entanglement metrics of a covariance matrix");
    add_common(*metrics_cmd, common, false);
    metrics_cmd->add_option("--covariance", covariance, "Covariance JSON as written by 'steady --format json'");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (stability->parsed()) return cmd_stability(common, out);
        if (steady->parsed()) return cmd_steady(common, out);
        if (evolve->parsed()) return cmd_evolve(common, t_end, samples, out);
        if (sweep->parsed()) return cmd_sweep(common, build_sweep(common, axes, metrics, skip_unstable), out);
        if (figure->parsed()) return cmd_figure(common, figure_name, out);
        if (optimum->parsed()) return cmd_optimum(common, optimum_name, axes, metrics, out);
        if (metrics_cmd->parsed()) return cmd_metrics(common, covariance, out);
        err << "error: no command\n";
        return kUsage;
    } catch (const InstabilityError& e) {
        err << "error: " << e.what() << '\n';
        return kUnstable;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace optosqueeze::cli
