#pragma once

// Parameter sweeps: each grid point runs derive -> analyze -> Lyapunov ->
// metrics independently, so points are evaluated on a worker pool and
// gathered by index.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/dynamics.hpp"
#include "optosqueeze/metrics.hpp"

namespace optosqueeze {

enum class AxisName {
    lambda_over_kappa,
    phi_over_pi,
    p_plus_over_p_minus,
    g_minus_over_kappa,
    g_plus_over_g_minus,
    temperature_mk,
    gamma_over_kappa,
};

enum class AxisScale { linear, list };

struct Axis {
    AxisName name = AxisName::lambda_over_kappa;
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 2;
    AxisScale scale = AxisScale::linear;
    std::vector<double> values;  // used when scale == list

    static Axis linear(AxisName name, double min, double max, std::size_t count);
    static Axis list(AxisName name, std::vector<double> values);

    [[nodiscard]] std::vector<double> grid() const;
    [[nodiscard]] std::size_t size() const { return scale == AxisScale::list ? values.size() : count; }
};

enum class Metric { v_xc, v_yc, v_xd, v_yd, s2_c_db, s2_m_db, en_cc, en_mm };

inline constexpr std::array<Metric, 8> kAllMetrics = {Metric::v_xc,    Metric::v_yc,    Metric::v_xd,
                                                      Metric::v_yd,    Metric::s2_c_db, Metric::s2_m_db,
                                                      Metric::en_cc,   Metric::en_mm};

enum class UnstablePolicy { mark, skip };

/// Time-trace presets integrate the covariance ODE instead of sweeping.
struct TraceSpec {
    double t_end = 1000.0;  // 1/kappa
    std::size_t samples = 400;
    double t_min = 1e-2;
};

struct SweepSpec {
    std::string name;
    PhysicalParams base;
    std::vector<Axis> axes;
    std::vector<Metric> outputs{kAllMetrics.begin(), kAllMetrics.end()};
    Metric primary_metric = Metric::s2_m_db;
    UnstablePolicy unstable_policy = UnstablePolicy::mark;
    std::optional<TraceSpec> time_trace;

    [[nodiscard]] CouplingMode coupling_mode() const noexcept { return base.coupling_mode(); }

    /// Throws UsageError on a malformed spec.
    void validate() const;
};

struct GridPoint {
    std::vector<std::size_t> index;
    std::vector<double> axis_values;
    bool stable = false;
    bool marginal = false;
    /// Failed stability condition, or the error text of a failed evaluation.
    std::string note;
    std::optional<MetricRow> metrics;
    bool physical = false;
};

struct Optimum {
    Metric metric = Metric::s2_m_db;
    std::vector<std::size_t> index;
    std::vector<double> axis_values;
    double value = 0.0;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<GridPoint> grid;  // row-major, first axis outermost
    std::vector<Optimum> optima;  // one per requested output metric with a stable point
};

struct SweepOptions {
    /// Worker count; 0 uses the available hardware parallelism.
    unsigned jobs = 0;
};

/// Applies one swept or overridden setting. Ratio settings act on the
/// current red-tone value (G+ = r G-, P+ = r P-); absolute ones switch the
/// drive mode when needed.
void apply_setting(PhysicalParams& params, AxisName name, double value);

/// Applies a grid point's axis values; absolute settings first, ratios last.
[[nodiscard]] PhysicalParams apply_axes(const PhysicalParams& base, std::span<const Axis> axes,
                                        std::span<const double> values);

[[nodiscard]] GridPoint evaluate_point(const PhysicalParams& params);

[[nodiscard]] SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Time-trace presets: integrates from the thermal initial state and keeps
/// t = 0 plus the log-spaced sample times only.
[[nodiscard]] Trajectory run_time_trace(const SweepSpec& spec);

/// Grid argmax over stable points; ties go to the lowest axis indices.
/// Throws NumericalError when no stable point carries the metric.
[[nodiscard]] Optimum find_optimum(const SweepResult& result, Metric metric);

[[nodiscard]] double metric_value(const MetricRow& row, Metric metric);

[[nodiscard]] std::string_view to_string(AxisName name);
[[nodiscard]] std::string_view to_string(Metric metric);
[[nodiscard]] std::optional<AxisName> parse_axis_name(std::string_view text);
[[nodiscard]] std::optional<Metric> parse_metric(std::string_view text);

}  // namespace optosqueeze
