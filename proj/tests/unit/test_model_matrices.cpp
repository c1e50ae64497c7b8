#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "optosqueeze/errors.hpp"
#include "optosqueeze/model_matrices.hpp"

namespace optosqueeze {
namespace {

TEST(CouplingCoefficients, ReferenceSet) {
    const auto [a, b, c, s] = coupling_coefficients(testing::reference_model());
    EXPECT_NEAR(a, 0.1, 1e-15);
    EXPECT_NEAR(b, 0.3, 1e-15);
    EXPECT_NEAR(c, 0.4, 1e-15);
    EXPECT_NEAR(s, 0.0, 1e-15);
}

TEST(CouplingCoefficients, AllZero) {
    const auto [a, b, c, s] = coupling_coefficients(ModelParams{});
    EXPECT_EQ(a, 0.0);
    EXPECT_EQ(b, 0.0);
    EXPECT_EQ(c, 0.0);
    EXPECT_EQ(s, 0.0);
}

TEST(CouplingCoefficients, QuarterTurnPhase) {
    ModelParams m;
    m.lambda_pa = 0.49;
    m.phi = kPi / 2.0;
    const auto cs = coupling_coefficients(m);
    EXPECT_NEAR(cs.c, 0.0, 1e-16);
    EXPECT_NEAR(cs.s, 0.49, 1e-16);
}

TEST(BuildDrift, DecoupledIsDiagonal) {
    const ModelParams m = testing::decoupled_model(1e-3, 0.0, 0.0);
    Matrix8 expected = Matrix8::Zero();
    for (int i = 0; i < 4; ++i) expected(i, i) = -0.5;
    for (int i = 4; i < 8; ++i) expected(i, i) = -0.5e-3;
    EXPECT_EQ(build_drift(m).entries, expected);
}

TEST(BuildDrift, ReferenceEntries) {
    const auto w = build_drift(testing::reference_model()).entries;
    EXPECT_NEAR(w(0, 2), 0.4, 1e-15);
    EXPECT_NEAR(w(0, 5), -0.1, 1e-15);
    EXPECT_NEAR(w(1, 4), 0.3, 1e-15);
    EXPECT_NEAR(w(1, 3), -0.4, 1e-15);
}

TEST(BuildDrift, QuarterTurnMovesGainToSine) {
    ModelParams m = testing::reference_model();
    m.phi = kPi / 2.0;
    const auto w = build_drift(m).entries;
    EXPECT_NEAR(w(0, 2), 0.0, 1e-16);
    EXPECT_NEAR(w(0, 3), 0.4, 1e-16);
}

TEST(BuildDrift, SparsityPattern) {
    ModelParams m = testing::reference_model();
    m.phi = 0.3;
    const auto w = build_drift(m).entries;
    int off_diagonal = 0;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            if (i != j && w(i, j) != 0.0) ++off_diagonal;
        }
        EXPECT_EQ(w(i, i), i < 4 ? -0.5 : -0.5 * m.gamma);
    }
    EXPECT_EQ(off_diagonal, 16);
    // The mechanical block never couples mechanics to mechanics.
    EXPECT_TRUE((w.bottomRightCorner<4, 4>() - w.bottomRightCorner<4, 4>().diagonal().asDiagonal().toDenseMatrix())
                    .isZero(0.0));
}

TEST(BuildDiffusion, ZeroTemperature) {
    const auto d = build_diffusion(testing::decoupled_model(2e-3, 0.0, 0.0)).entries;
    for (int i = 0; i < 4; ++i) EXPECT_EQ(d(i, i), 0.5);
    for (int i = 4; i < 8; ++i) EXPECT_EQ(d(i, i), 1e-3);
    EXPECT_EQ((d - Matrix8(d.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(BuildDiffusion, ThermalMechanics) {
    const auto d = build_diffusion(testing::decoupled_model(6.67e-6, 0.0, testing::kNm10mK)).entries;
    for (int i = 4; i < 8; ++i) EXPECT_NEAR(d(i, i), 3.860658522313594e-4, 1e-16);
}

TEST(BuildDiffusion, UnitOccupations) {
    const double gamma = 0.01;
    const auto d = build_diffusion(testing::decoupled_model(gamma, 1.0, 1.0)).entries;
    for (int i = 0; i < 4; ++i) EXPECT_EQ(d(i, i), 1.5);
    for (int i = 4; i < 8; ++i) EXPECT_DOUBLE_EQ(d(i, i), 1.5 * gamma);
}

TEST(BuildDiffusion, RejectsNegativeOccupation) {
    EXPECT_THROW((void)build_diffusion(testing::decoupled_model(1e-3, -1.0, 0.0)), DomainError);
}

TEST(InitialCovariance, Vacuum) {
    EXPECT_EQ(initial_covariance(testing::decoupled_model(1e-3, 0.0, 0.0)).entries, 0.5 * Matrix8::Identity());
}

TEST(InitialCovariance, ThermalTrace) {
    const auto sigma = initial_covariance(testing::reference_model());
    EXPECT_NEAR(sigma.trace(), 233.5237494640836, 1e-9);
    EXPECT_TRUE(sigma.is_symmetric());
}

TEST(InitialCovariance, SmallOccupations) {
    const auto s = initial_covariance(testing::decoupled_model(1e-3, 2.0, 3.0)).entries;
    for (int i = 0; i < 4; ++i) EXPECT_EQ(s(i, i), 2.5);
    for (int i = 4; i < 8; ++i) EXPECT_EQ(s(i, i), 3.5);
}

TEST(SymplecticForm, BlockStructure) {
    const Matrix8 omega = symplectic_form();
    EXPECT_EQ(omega + omega.transpose(), Matrix8::Zero());
    EXPECT_EQ(omega * omega, -Matrix8::Identity());
    EXPECT_EQ(omega(0, 1), 1.0);
    EXPECT_EQ(omega(1, 0), -1.0);
}

TEST(QuadratureLabels, FixedOrdering) {
    EXPECT_EQ(kQuadratureLabels[0], "x_c1");
    EXPECT_EQ(kQuadratureLabels[3], "y_c2");
    EXPECT_EQ(kQuadratureLabels[4], "x_d1");
    EXPECT_EQ(kQuadratureLabels[7], "y_d2");
}

}  // namespace
}  // namespace optosqueeze
