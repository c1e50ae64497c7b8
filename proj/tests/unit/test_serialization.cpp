#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "optosqueeze/errors.hpp"
#include "optosqueeze/lyapunov.hpp"
#include "optosqueeze/serialization.hpp"

namespace optosqueeze {
namespace {

using nlohmann::json;

TEST(FormatNumber, NineSignificantDigits) {
    EXPECT_EQ(format_number(0.000900100051234), "0.000900100051");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(CovarianceJson, RoundTripIsExact) {
    const auto sigma = steady_state(testing::reference_model()).sigma;
    const json j = json::parse(covariance_to_json(sigma).dump());
    EXPECT_EQ(j.at("entries").size(), 64u);
    EXPECT_EQ(j.at("basis")[4], "x_d1");
    EXPECT_EQ(covariance_from_json(j).entries, sigma.entries);
}

TEST(CovarianceJson, NestedRowsAccepted) {
    json j;
    j["entries"] = json::array();
    for (int i = 0; i < 8; ++i) {
        json row = json::array();
        for (int k = 0; k < 8; ++k) row.push_back(i == k ? 0.5 : 0.0);
        j["entries"].push_back(row);
    }
    EXPECT_EQ(covariance_from_json(j).entries, 0.5 * Matrix8::Identity());
}

TEST(CovarianceJson, MalformedInput) {
    EXPECT_THROW((void)covariance_from_json(json{{"entries", {1, 2, 3}}}), UsageError);
    json bad = covariance_to_json(CovarianceMatrix{});
    bad["basis"][0] = "q";
    EXPECT_THROW((void)covariance_from_json(bad), UsageError);
    json asym = covariance_to_json(CovarianceMatrix{});
    asym["entries"][1] = 1.0;
    EXPECT_THROW((void)covariance_from_json(asym), ContractError);
}

TEST(StabilityJson, FieldNames) {
    const json j = stability_to_json(analyze(testing::reference_model()));
    for (const char* key : {"s1", "s2", "s3", "s4", "h1", "h2", "h3", "eigenvalues", "verdicts"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["eigenvalues"].size(), 8u);
    EXPECT_TRUE(j["eigenvalues"][0].contains("re"));
    EXPECT_TRUE(j["eigenvalues"][0].contains("im"));
    EXPECT_TRUE(j["verdicts"]["stable"].get<bool>());
}

TEST(ParamsJson, RoundTripBothDriveModes) {
    for (const PhysicalParams& p : {device_baseline(), reference_params()}) {
        const PhysicalParams q = params_from_json(params_to_json(p));
        EXPECT_EQ(params_to_json(q), params_to_json(p));
        EXPECT_EQ(q.coupling_mode(), p.coupling_mode());
    }
}

TEST(ParamsJson, PartialMergeAndUnknownKeys) {
    const PhysicalParams p = params_from_json(json{{"temperature", 0.4}}, reference_params());
    EXPECT_EQ(p.temperature, 0.4);
    EXPECT_EQ(p.coupling_mode(), CouplingMode::direct);
    EXPECT_THROW((void)params_from_json(json{{"temprature", 0.4}}), UsageError);
    EXPECT_THROW((void)params_from_json(json{{"drive_spec", {{"P_minus", 1e-9}, {"G_minus", 1.0}}}}), UsageError);
    EXPECT_THROW((void)params_from_json(json{{"kappa", "fast"}}), UsageError);
}

TEST(MetricCsv, HeaderAndRow) {
    EXPECT_EQ(metric_csv_header(), "v_xc,v_yc,v_xd,v_yd,s2_c_db,s2_m_db,en_cc,en_mm,physical");
    MetricRow row;
    row.v_xc = 1.0;
    row.physical = true;
    EXPECT_EQ(metric_csv_row(row), "1,0,0,0,0,0,0,0,1");
}

TEST(TrajectoryCsv, Header) {
    Trajectory t;
    t.times = {0.0, 1.0};
    t.traces = {2.0, 3.0};
    std::ostringstream out;
    write_trajectory_csv(out, t);
    EXPECT_EQ(out.str(), "t_over_kappa,trace\n0,2\n1,3\n");
}

}  // namespace
}  // namespace optosqueeze
