#include "optosqueeze/presets.hpp"

#include <array>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace {

constexpr std::array<std::string_view, 15> kPresetNames = {
    "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5a", "fig5b",
    "fig6a", "fig6b", "fig6c", "fig6d", "fig7a", "fig7b", "fig9"};

constexpr std::array<std::string_view, 2> kParamSetNames = {"appendixC", "baseline"};

constexpr std::size_t kDensityPoints = 101;
constexpr std::size_t kLinePoints = 201;
// Open stability boundaries at Lambda = kappa/2 and G+ = G-.
constexpr double kLambdaCap = 0.4999;
constexpr double kRatioCap = 0.999;

std::string join(std::span<const std::string_view> names) {
    std::string out;
    for (const auto name : names) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

PhysicalParams direct(double g_minus_over_kappa, double g_plus_over_kappa, double lambda_over_kappa) {
    PhysicalParams p = device_baseline();
    p.drive = DirectCouplings{g_minus_over_kappa * p.kappa, g_plus_over_kappa * p.kappa};
    p.lambda_pa = lambda_over_kappa * p.kappa;
    return p;
}

SweepSpec fig2(std::string name, double ratio) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = device_baseline();
    s.base.drive = DrivePowers{10e-9, ratio * 10e-9};
    s.axes = {Axis::linear(AxisName::lambda_over_kappa, 0.0, kLambdaCap, kDensityPoints),
              Axis::linear(AxisName::phi_over_pi, -1.0, 1.0, kDensityPoints)};
    return s;
}

SweepSpec power_ratio_sweep(std::string name, Axis family, Metric primary) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = device_baseline();
    s.base.drive = DrivePowers{3e-9, 0.0};
    s.base.lambda_pa = 0.49 * s.base.kappa;
    s.axes = {Axis::linear(AxisName::p_plus_over_p_minus, 0.0, 1.0, kLinePoints), std::move(family)};
    s.primary_metric = primary;
    return s;
}

SweepSpec fig5(std::string name, double lambda_over_kappa) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = direct(1.0, 0.0, lambda_over_kappa);
    s.axes = {Axis::linear(AxisName::g_minus_over_kappa, 0.0, 1.0, kDensityPoints),
              Axis::linear(AxisName::g_plus_over_g_minus, 0.0, kRatioCap, kDensityPoints)};
    return s;
}

SweepSpec fig6(std::string name, double lambda_over_kappa, double gamma_over_kappa) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = direct(1.0, 0.0, lambda_over_kappa);
    s.base.gamma = gamma_over_kappa * s.base.kappa;
    s.axes = {Axis::linear(AxisName::g_plus_over_g_minus, 0.0, kRatioCap, kLinePoints),
              Axis::list(AxisName::temperature_mk, {10.0, 400.0, 1000.0})};
    return s;
}

}  // namespace

PhysicalParams device_baseline() { return PhysicalParams{}; }

PhysicalParams reference_params() {
    PhysicalParams p = direct(0.2, 0.1, 0.4);
    p.gamma = 6.67e-6 * p.kappa;
    return p;
}

PhysicalParams named_params(std::string_view name) {
    if (name == "appendixC") return reference_params();
    if (name == "baseline") return device_baseline();
    throw UsageError("unknown parameter preset '" + std::string(name) + "' (valid: " + join(kParamSetNames) + ")");
}

std::span<const std::string_view> param_set_names() { return kParamSetNames; }

std::span<const std::string_view> preset_names() { return kPresetNames; }

SweepSpec figure_preset(std::string_view name) {
    const Axis phases = Axis::list(AxisName::phi_over_pi, {0.0, 1.0 / 36.0, 1.0 / 24.0, 1.0 / 18.0, 1.0 / 16.0});
    const Axis gains = Axis::list(AxisName::lambda_over_kappa, {0.0, 0.1, 0.2, 0.3, 0.4, 0.49});

    if (name == "fig2a") return fig2("fig2a", 0.0);
    if (name == "fig2b") return fig2("fig2b", 0.1);
    if (name == "fig3a") return power_ratio_sweep("fig3a", phases, Metric::s2_c_db);
    if (name == "fig3b") return power_ratio_sweep("fig3b", phases, Metric::s2_m_db);
    if (name == "fig4a") return power_ratio_sweep("fig4a", gains, Metric::s2_c_db);
    if (name == "fig4b") return power_ratio_sweep("fig4b", gains, Metric::s2_m_db);
    if (name == "fig5a") return fig5("fig5a", 0.0);
    if (name == "fig5b") return fig5("fig5b", 0.49);
    if (name == "fig6a") return fig6("fig6a", 0.0, 6.67e-6);
    if (name == "fig6b") return fig6("fig6b", 0.49, 6.67e-6);
    if (name == "fig6c") return fig6("fig6c", 0.0, 0.667e-6);
    if (name == "fig6d") return fig6("fig6d", 0.49, 0.667e-6);
    if (name == "fig7a") {
        SweepSpec s;
        s.name = "fig7a";
        s.base = direct(0.1, 0.01, 0.0);
        s.axes = {Axis::linear(AxisName::lambda_over_kappa, 0.0, kLambdaCap, kLinePoints)};
        s.primary_metric = Metric::en_mm;
        return s;
    }
    if (name == "fig7b") {
        SweepSpec s;
        s.name = "fig7b";
        s.base = direct(1.0, 0.0, 0.49);
        s.axes = {Axis::linear(AxisName::g_plus_over_g_minus, 0.0, kRatioCap, kLinePoints)};
        s.primary_metric = Metric::en_mm;
        return s;
    }
    if (name == "fig9") {
        SweepSpec s;
        s.name = "fig9";
        s.base = reference_params();
        s.time_trace = TraceSpec{};
        return s;
    }
    throw UsageError("unknown preset '" + std::string(name) + "' (valid: " + join(kPresetNames) + ")");
}

}  // namespace optosqueeze
