#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "optosqueeze/errors.hpp"
#include "optosqueeze/presets.hpp"
#include "optosqueeze/serialization.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze {
namespace {

SweepSpec small_direct_spec() {
    SweepSpec s;
    s.name = "small";
    s.base = reference_params();
    s.axes = {Axis::linear(AxisName::g_minus_over_kappa, 0.2, 0.4, 2),
              Axis::linear(AxisName::g_plus_over_g_minus, 0.1, 0.5, 2)};
    return s;
}

TEST(Axis, LinearGridHitsEndpoints) {
    const auto g = Axis::linear(AxisName::lambda_over_kappa, 0.0, 0.4999, 101).grid();
    ASSERT_EQ(g.size(), 101u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 0.4999);
}

TEST(SweepSpec, ValidationRules) {
    SweepSpec s = small_direct_spec();
    EXPECT_NO_THROW(s.validate());
    s.axes[0].count = 1;
    EXPECT_THROW(s.validate(), UsageError);
    s = small_direct_spec();
    s.axes.push_back(Axis::linear(AxisName::phi_over_pi, 0.0, 1.0, 3));
    EXPECT_THROW(s.validate(), UsageError);
    s = small_direct_spec();
    s.base = device_baseline();  // powers mode cannot take a coupling ratio axis
    s.axes = {Axis::linear(AxisName::g_plus_over_g_minus, 0.0, 0.5, 3)};
    EXPECT_THROW(s.validate(), UsageError);
    s.base = reference_params();
    s.axes = {Axis::linear(AxisName::p_plus_over_p_minus, 0.0, 0.5, 3)};
    EXPECT_THROW(s.validate(), UsageError);
}

TEST(ApplyAxes, RatiosActOnFinalRedTone) {
    const PhysicalParams base = reference_params();
    const std::vector<Axis> axes = {Axis::linear(AxisName::g_plus_over_g_minus, 0.0, 1.0, 2),
                                    Axis::linear(AxisName::g_minus_over_kappa, 0.0, 1.0, 2)};
    const std::vector<double> values = {0.5, 0.8};
    const auto p = apply_axes(base, axes, values);
    const auto& g = std::get<DirectCouplings>(p.drive);
    EXPECT_DOUBLE_EQ(g.g_minus, 0.8 * base.kappa);
    EXPECT_DOUBLE_EQ(g.g_plus, 0.4 * base.kappa);
}

TEST(ApplySetting, UnitConversions) {
    PhysicalParams p;
    apply_setting(p, AxisName::temperature_mk, 400.0);
    EXPECT_DOUBLE_EQ(p.temperature, 0.4);
    apply_setting(p, AxisName::phi_over_pi, 0.5);
    EXPECT_DOUBLE_EQ(p.phi, kPi / 2.0);
    apply_setting(p, AxisName::gamma_over_kappa, 1e-6);
    EXPECT_DOUBLE_EQ(p.gamma, 1e-6 * p.kappa);
    apply_setting(p, AxisName::p_plus_over_p_minus, 0.1);
    EXPECT_DOUBLE_EQ(std::get<DrivePowers>(p.drive).p_plus, 1e-9);
    EXPECT_THROW(apply_setting(p, AxisName::g_plus_over_g_minus, 0.5), UsageError);
}

TEST(RunSweep, SmallStableGrid) {
    const auto r = run_sweep(small_direct_spec(), {1});
    ASSERT_EQ(r.grid.size(), 4u);
    for (const auto& p : r.grid) {
        EXPECT_TRUE(p.stable);
        EXPECT_TRUE(p.physical);
        ASSERT_TRUE(p.metrics.has_value());
    }
    EXPECT_EQ(r.grid[1].index, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.optima.size(), kAllMetrics.size());
}

TEST(RunSweep, PointsBeyondBalancedAreUnstable) {
    SweepSpec s = small_direct_spec();
    s.base.lambda_pa = 0.0;
    s.axes = {Axis::list(AxisName::g_plus_over_g_minus, {0.5, 0.9, 1.1, 1.5})};
    const auto r = run_sweep(s, {1});
    EXPECT_TRUE(r.grid[0].stable);
    EXPECT_TRUE(r.grid[1].stable);
    for (std::size_t i = 2; i < 4; ++i) {
        EXPECT_FALSE(r.grid[i].stable);
        EXPECT_EQ(r.grid[i].note, "s3<0");
        EXPECT_FALSE(r.grid[i].metrics.has_value());
    }
    std::ostringstream csv;
    write_sweep_csv(csv, r);
    EXPECT_NE(csv.str().find("1.1,nan,nan,nan,nan,nan,nan,nan,nan,0,nan"), std::string::npos) << csv.str();

    s.unstable_policy = UnstablePolicy::skip;
    EXPECT_EQ(run_sweep(s, {1}).grid.size(), 2u);
}

TEST(RunSweep, ParallelMatchesSerialBitwise) {
    SweepSpec s = figure_preset("fig7b");
    s.axes[0].count = 40;
    std::ostringstream serial, parallel;
    write_sweep_csv(serial, run_sweep(s, {1}));
    write_sweep_csv(parallel, run_sweep(s, {4}));
    EXPECT_EQ(serial.str(), parallel.str());
}

TEST(RunSweep, PhaseSymmetry) {
    SweepSpec s = figure_preset("fig2b");
    s.axes[0] = Axis::list(AxisName::lambda_over_kappa, {0.1, 0.3, 0.45});
    s.axes[1] = Axis::linear(AxisName::phi_over_pi, -1.0, 1.0, 21);
    const auto r = run_sweep(s, {1});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 21; ++j) {
            const auto& a = r.grid[i * 21 + j];
            const auto& b = r.grid[i * 21 + (20 - j)];
            ASSERT_TRUE(a.metrics && b.metrics);
            EXPECT_NEAR(a.metrics->s2_m_db, b.metrics->s2_m_db, 1e-9);
            EXPECT_NEAR(a.metrics->s2_c_db, b.metrics->s2_c_db, 1e-9);
        }
    }
}

TEST(FindOptimum, ConstantMetricPicksFirstPoint) {
    SweepResult r;
    r.spec = small_direct_spec();
    for (std::size_t i = 0; i < 3; ++i) {
        GridPoint p;
        p.index = {i};
        p.axis_values = {static_cast<double>(i)};
        p.stable = true;
        p.metrics = MetricRow{};
        r.grid.push_back(p);
    }
    const auto o = find_optimum(r, Metric::s2_m_db);
    EXPECT_EQ(o.index, std::vector<std::size_t>{0});
}

TEST(FindOptimum, NoStablePointIsAnError) {
    SweepResult r;
    GridPoint p;
    p.stable = false;
    r.grid.push_back(p);
    EXPECT_THROW((void)find_optimum(r, Metric::s2_m_db), NumericalError);
}

TEST(FigurePreset, Fig2aLayout) {
    const auto s = figure_preset("fig2a");
    ASSERT_EQ(s.axes.size(), 2u);
    EXPECT_EQ(s.axes[0].name, AxisName::lambda_over_kappa);
    EXPECT_LT(s.axes[0].max, 0.5);
    EXPECT_EQ(s.axes[1].name, AxisName::phi_over_pi);
    EXPECT_EQ(s.axes[1].min, -1.0);
    EXPECT_EQ(s.axes[1].max, 1.0);
    EXPECT_EQ(std::get<DrivePowers>(s.base.drive).p_plus, 0.0);
    EXPECT_EQ(std::get<DrivePowers>(s.base.drive).p_minus, 10e-9);
    EXPECT_EQ(s.base.temperature, 0.01);
}

TEST(FigurePreset, Fig6dBase) {
    const auto s = figure_preset("fig6d");
    EXPECT_DOUBLE_EQ(s.base.lambda_pa, 0.49 * s.base.kappa);
    EXPECT_DOUBLE_EQ(s.base.gamma, 0.667e-6 * s.base.kappa);
    EXPECT_EQ(s.axes[1].values, (std::vector<double>{10.0, 400.0, 1000.0}));
}

TEST(FigurePreset, Fig9IsReferenceTimeTrace) {
    const auto s = figure_preset("fig9");
    ASSERT_TRUE(s.time_trace.has_value());
    const auto m = derive_model(s.base);
    EXPECT_NEAR(m.lambda_pa, 0.4, 1e-15);
    EXPECT_NEAR(m.g_minus, 0.2, 1e-15);
    EXPECT_NEAR(m.g_plus, 0.1, 1e-15);
    EXPECT_EQ(m.phi, 0.0);
}

TEST(FigurePreset, AllNamesResolveAndValidate) {
    for (const auto name : preset_names()) EXPECT_NO_THROW(figure_preset(name).validate()) << name;
}

TEST(FigurePreset, UnknownNameListsValidOnes) {
    try {
        (void)figure_preset("fig8");
        FAIL() << "expected UsageError";
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("fig2a"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("fig9"), std::string::npos);
    }
}

TEST(RunTimeTrace, SamplesAndPlateau) {
    const auto traj = run_time_trace(figure_preset("fig9"));
    ASSERT_EQ(traj.times.size(), 401u);
    EXPECT_EQ(traj.times.front(), 0.0);
    EXPECT_NEAR(traj.traces.front(), 233.5237494640836, 1e-9);
    EXPECT_NEAR(traj.traces.back(), traj.traces[traj.traces.size() - 10], 1e-6);
}

TEST(Names, RoundTrip) {
    for (int i = 0; i < 7; ++i) {
        const auto a = static_cast<AxisName>(i);
        EXPECT_EQ(parse_axis_name(to_string(a)), a);
    }
    for (const Metric m : kAllMetrics) EXPECT_EQ(parse_metric(to_string(m)), m);
    EXPECT_FALSE(parse_axis_name("lambda").has_value());
}

}  // namespace
}  // namespace optosqueeze
