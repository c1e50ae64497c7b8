#include "optosqueeze/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/lyapunov.hpp"
#include "optosqueeze/stability.hpp"

namespace optosqueeze {

namespace {

constexpr std::array<std::string_view, 7> kAxisNames = {
    "lambda_over_kappa", "phi_over_pi",    "p_plus_over_p_minus", "g_minus_over_kappa",
    "g_plus_over_g_minus", "temperature_mk", "gamma_over_kappa"};

constexpr std::array<std::string_view, 8> kMetricNames = {"v_xc",    "v_yc",    "v_xd",  "v_yd",
                                                          "s2_c_db", "s2_m_db", "en_cc", "en_mm"};

bool is_ratio(AxisName name) {
    return name == AxisName::g_plus_over_g_minus || name == AxisName::p_plus_over_p_minus;
}

}  // namespace

Axis Axis::linear(AxisName name, double min, double max, std::size_t count) {
    Axis a;
    a.name = name;
    a.min = min;
    a.max = max;
    a.count = count;
    a.scale = AxisScale::linear;
    return a;
}

Axis Axis::list(AxisName name, std::vector<double> values) {
    Axis a;
    a.name = name;
    a.scale = AxisScale::list;
    a.values = std::move(values);
    a.count = a.values.size();
    if (!a.values.empty()) {
        a.min = *std::min_element(a.values.begin(), a.values.end());
        a.max = *std::max_element(a.values.begin(), a.values.end());
    }
    return a;
}

std::vector<double> Axis::grid() const {
    if (scale == AxisScale::list) return values;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        out[i] = min + (max - min) * f;
    }
    if (count >= 2) out.back() = max;
    return out;
}

void SweepSpec::validate() const {
    if (time_trace) {
        if (!axes.empty()) throw UsageError("sweep '" + name + "': time-trace specs take no axes");
        if (!(time_trace->t_end > time_trace->t_min) || !(time_trace->t_min > 0.0) || time_trace->samples < 2) {
            throw UsageError("sweep '" + name + "': invalid time-trace settings");
        }
        return;
    }
    if (axes.empty() || axes.size() > 2) throw UsageError("sweep '" + name + "': need one or two axes");
    if (axes.size() == 2 && axes[0].name == axes[1].name) {
        throw UsageError("sweep '" + name + "': the same axis appears twice");
    }
    for (const auto& axis : axes) {
        if (axis.size() < 2) {
            throw UsageError("sweep '" + name + "': axis " + std::string(to_string(axis.name)) + " needs >= 2 points");
        }
        if (axis.scale == AxisScale::linear && !(axis.max > axis.min)) {
            throw UsageError("sweep '" + name + "': axis " + std::string(to_string(axis.name)) + " needs min < max");
        }
        if (axis.name == AxisName::g_plus_over_g_minus && coupling_mode() != CouplingMode::direct) {
            throw UsageError("sweep '" + name + "': g_plus_over_g_minus requires direct couplings");
        }
        if (axis.name == AxisName::p_plus_over_p_minus && coupling_mode() != CouplingMode::powers) {
            throw UsageError("sweep '" + name + "': p_plus_over_p_minus requires drive powers");
        }
    }
    if (outputs.empty()) throw UsageError("sweep '" + name + "': no output metrics");
}

void apply_setting(PhysicalParams& params, AxisName name, double value) {
    switch (name) {
        case AxisName::lambda_over_kappa: params.lambda_pa = value * params.kappa; break;
        case AxisName::phi_over_pi: params.phi = value * kPi; break;
        case AxisName::temperature_mk: params.temperature = value * 1e-3; break;
        case AxisName::gamma_over_kappa: params.gamma = value * params.kappa; break;
        case AxisName::g_minus_over_kappa:
            if (auto* direct = std::get_if<DirectCouplings>(&params.drive)) {
                direct->g_minus = value * params.kappa;
            } else {
                params.drive = DirectCouplings{value * params.kappa, 0.0};
            }
            break;
        case AxisName::g_plus_over_g_minus: {
            auto* direct = std::get_if<DirectCouplings>(&params.drive);
            if (direct == nullptr) throw UsageError("g_plus_over_g_minus requires direct couplings");
            direct->g_plus = value * direct->g_minus;
            break;
        }
        case AxisName::p_plus_over_p_minus: {
            auto* powers = std::get_if<DrivePowers>(&params.drive);
            if (powers == nullptr) throw UsageError("p_plus_over_p_minus requires drive powers");
            powers->p_plus = value * powers->p_minus;
            break;
        }
    }
}

PhysicalParams apply_axes(const PhysicalParams& base, std::span<const Axis> axes, std::span<const double> values) {
    PhysicalParams params = base;
    for (const bool ratios : {false, true}) {
        for (std::size_t i = 0; i < axes.size(); ++i) {
            if (is_ratio(axes[i].name) == ratios) apply_setting(params, axes[i].name, values[i]);
        }
    }
    return params;
}

GridPoint evaluate_point(const PhysicalParams& params) {
    GridPoint point;
    try {
        const ModelParams model = derive_model(params);
        const StabilityReport report = analyze(model);
        point.marginal = report.marginal;
        point.stable = report.usable();
        if (!point.stable) {
            point.note = report.marginal ? "marginal"
                         : !report.rhsc_stable ? report.failed_condition
                                               : "positive spectral abscissa";
            return point;
        }
        const auto solution = solve_lyapunov(build_drift(model), build_diffusion(model));
        point.metrics = evaluate_metrics(solution.sigma);
        point.physical = point.metrics->physical;
    } catch (const Error& e) {
        point.stable = false;
        point.metrics.reset();
        point.physical = false;
        point.note = e.what();
    }
    return point;
}

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    spec.validate();
    if (spec.time_trace) throw UsageError("sweep '" + spec.name + "' is a time-trace preset; use the evolve path");

    std::vector<std::vector<double>> grids;
    for (const auto& axis : spec.axes) grids.push_back(axis.grid());

    std::size_t total = 1;
    for (const auto& g : grids) total *= g.size();

    // Row-major decomposition of a flat index, first axis outermost.
    const auto unflatten = [&](std::size_t flat) {
        std::vector<std::size_t> index(grids.size());
        for (std::size_t k = grids.size(); k-- > 0;) {
            index[k] = flat % grids[k].size();
            flat /= grids[k].size();
        }
        return index;
    };

    std::vector<GridPoint> points(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        try {
            for (std::size_t i = next++; i < total; i = next++) {
                auto index = unflatten(i);
                std::vector<double> values(index.size());
                for (std::size_t k = 0; k < index.size(); ++k) values[k] = grids[k][index[k]];
                GridPoint point = evaluate_point(apply_axes(spec.base, spec.axes, values));
                point.index = std::move(index);
                point.axis_values = std::move(values);
                points[i] = std::move(point);
            }
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    unsigned jobs = options.jobs != 0 ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, total));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    result.spec = spec;
    if (spec.unstable_policy == UnstablePolicy::skip) {
        std::erase_if(points, [](const GridPoint& p) { return !p.stable; });
    }
    result.grid = std::move(points);
    for (const Metric metric : spec.outputs) {
        const bool any = std::any_of(result.grid.begin(), result.grid.end(), [](const GridPoint& p) {
            return p.stable && p.metrics.has_value();
        });
        if (any) result.optima.push_back(find_optimum(result, metric));
    }
    return result;
}

Trajectory run_time_trace(const SweepSpec& spec) {
    spec.validate();
    if (!spec.time_trace) throw UsageError("sweep '" + spec.name + "' has no time-trace settings");
    const auto& trace = *spec.time_trace;
    const ModelParams model = derive_model(spec.base);

    IntegrationOptions options;
    options.output_times = log_spaced_times(trace.t_min, trace.t_end, trace.samples);
    const Trajectory full = integrate(build_drift(model), build_diffusion(model), initial_covariance(model),
                                      trace.t_end, options);

    Trajectory sampled;
    sampled.accepted_steps = full.accepted_steps;
    sampled.rejected_steps = full.rejected_steps;
    sampled.times.push_back(0.0);
    sampled.traces.push_back(full.traces.front());
    for (const double t : options.output_times) {
        const auto value = full.trace_at(t);
        if (!value) throw NumericalError("time trace: integrator missed output time " + std::to_string(t));
        sampled.times.push_back(t);
        sampled.traces.push_back(*value);
    }
    return sampled;
}

Optimum find_optimum(const SweepResult& result, Metric metric) {
    const GridPoint* best = nullptr;
    double best_value = -std::numeric_limits<double>::infinity();
    for (const auto& point : result.grid) {
        if (!point.stable || !point.metrics) continue;
        const double v = metric_value(*point.metrics, metric);
        if (std::isnan(v)) continue;
        // Strict comparison keeps the earliest (lowest-index) point on ties.
        if (best == nullptr || v > best_value) {
            best = &point;
            best_value = v;
        }
    }
    if (best == nullptr) throw NumericalError("find_optimum: no stable grid point");
    return {metric, best->index, best->axis_values, best_value};
}

double metric_value(const MetricRow& row, Metric metric) {
    switch (metric) {
        case Metric::v_xc: return row.v_xc;
        case Metric::v_yc: return row.v_yc;
        case Metric::v_xd: return row.v_xd;
        case Metric::v_yd: return row.v_yd;
        case Metric::s2_c_db: return row.s2_c_db;
        case Metric::s2_m_db: return row.s2_m_db;
        case Metric::en_cc: return row.en_cc;
        case Metric::en_mm: return row.en_mm;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string_view to_string(AxisName name) { return kAxisNames[static_cast<std::size_t>(name)]; }

std::string_view to_string(Metric metric) { return kMetricNames[static_cast<std::size_t>(metric)]; }

std::optional<AxisName> parse_axis_name(std::string_view text) {
    for (std::size_t i = 0; i < kAxisNames.size(); ++i) {
        if (kAxisNames[i] == text) return static_cast<AxisName>(i);
    }
    return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view text) {
    for (std::size_t i = 0; i < kMetricNames.size(); ++i) {
        if (kMetricNames[i] == text) return static_cast<Metric>(i);
    }
    return std::nullopt;
}

}  // namespace optosqueeze
