#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/errors.hpp"

namespace optosqueeze {
namespace {

using testing::kNc10mK;
using testing::kNm10mK;

constexpr double kOmegaM = 2.0 * kPi * 3.6e6;
constexpr double kOmegaC = 2.0 * kPi * 6.23e9;
constexpr double kKappa = 2.0 * kPi * 450e3;

TEST(ThermalOccupation, ZeroTemperatureIsExactlyZero) { EXPECT_EQ(thermal_occupation(kOmegaM, 0.0), 0.0); }

TEST(ThermalOccupation, MechanicalModeAt10mK) {
    EXPECT_NEAR(thermal_occupation(kOmegaM, 0.01), kNm10mK, 1e-12 * kNm10mK);
}

TEST(ThermalOccupation, CavityModeAt10mKIsTiny) {
    EXPECT_NEAR(thermal_occupation(kOmegaC, 0.01), kNc10mK, 1e-9 * kNc10mK);
}

TEST(ThermalOccupation, RejectsBadInputs) {
    EXPECT_THROW((void)thermal_occupation(0.0, 0.01), DomainError);
    EXPECT_THROW((void)thermal_occupation(kOmegaM, -1.0), DomainError);
}

TEST(DriveAmplitude, ZeroPower) { EXPECT_EQ(drive_amplitude(0.0, 2.0 * kPi * 6e9, kKappa), 0.0); }

TEST(DriveAmplitude, ReferenceValues) {
    EXPECT_NEAR(drive_amplitude(10e-9, 2.0 * kPi * 6.2336e9, kKappa), 82736798345.76795, 1e-12 * 8.3e10);
    EXPECT_NEAR(drive_amplitude(3e-9, 2.0 * kPi * 6.2264e9, kKappa), 45343004639.07420, 1e-12 * 4.6e10);
}

TEST(SteadyCavityAmplitude, NoDrive) {
    EXPECT_EQ(std::abs(steady_cavity_amplitude(0.0, kKappa, kOmegaM, kOmegaM, 0.1 * kKappa)), 0.0);
}

TEST(SteadyCavityAmplitude, LorentzianWithoutAmplifier) {
    const double e = 8.27e10;
    const double expected = e / std::sqrt(kKappa * kKappa / 4.0 + kOmegaM * kOmegaM);
    EXPECT_NEAR(std::abs(steady_cavity_amplitude(e, kKappa, kOmegaM, kOmegaM, 0.0)), expected, 1e-12 * expected);
}

TEST(SteadyCavityAmplitude, ReferenceMagnitude) {
    // Drive amplitude of the 10 nW red tone, unrounded.
    const double e = 82736798345.76795;
    const double c = std::abs(steady_cavity_amplitude(e, kKappa, kOmegaM, kOmegaM, 0.0));
    EXPECT_NEAR(c, 3650.646345380477, 1e-9);
    const double c_blue = std::abs(steady_cavity_amplitude(e, kKappa, -kOmegaM, -kOmegaM, 0.0));
    EXPECT_NEAR(c_blue, 3650.646345380477, 1e-9);
}

TEST(SteadyCavityAmplitude, ThresholdIsSingular) {
    // Zero detuning at Lambda = kappa/2 makes the denominator vanish.
    EXPECT_THROW((void)steady_cavity_amplitude(1.0, 1.0, 0.0, 0.0, 0.5), SingularityError);
}

TEST(StaticDisplacement, Values) {
    EXPECT_EQ(static_displacement(2.0 * kPi * 36.0, 0.0, kOmegaM), 0.0);
    EXPECT_EQ(static_displacement(0.0, 3650.0, kOmegaM), 0.0);
    EXPECT_NEAR(static_displacement(2.0 * kPi * 36.0, 3650.0, kOmegaM), 133.225, 1e-9);
}

TEST(ReducePhase, MapsIntoHalfOpenInterval) {
    EXPECT_DOUBLE_EQ(reduce_phase(kPi), kPi);
    EXPECT_DOUBLE_EQ(reduce_phase(-kPi), kPi);
    EXPECT_NEAR(reduce_phase(3.0 * kPi / 2.0), -kPi / 2.0, 1e-15);
    EXPECT_NEAR(reduce_phase(0.25), 0.25, 0.0);
}

TEST(DeriveModel, DirectCouplingsPassThrough) {
    PhysicalParams p;
    p.drive = DirectCouplings{0.2 * p.kappa, 0.1 * p.kappa};
    const ModelParams m = derive_model(p);
    EXPECT_NEAR(m.g_minus, 0.2, 1e-15);
    EXPECT_NEAR(m.g_plus, 0.1, 1e-15);
    EXPECT_EQ(m.kappa, 1.0);
}

TEST(DeriveModel, PowerModeReference) {
    PhysicalParams p;  // 10 nW red tone, no blue tone
    const ModelParams m = derive_model(p);
    EXPECT_NEAR(m.g_minus, 0.29222051823948446, 1e-12);
    EXPECT_EQ(m.g_plus, 0.0);
    EXPECT_NEAR(m.gamma, 6.666666666666667e-6, 1e-18);
    EXPECT_NEAR(m.n_m, kNm10mK, 1e-10);
    EXPECT_NEAR(m.n_c, kNc10mK, 1e-20);
    EXPECT_NEAR(m.omega_m, 8.0, 1e-14);
    EXPECT_FALSE(m.rwa_warning);
}

TEST(DeriveModel, RwaWarningForStrongCoupling) {
    PhysicalParams p;
    p.drive = DirectCouplings{3.0 * p.kappa, 0.0};
    EXPECT_TRUE(derive_model(p).rwa_warning);
}

TEST(DeriveModel, PhaseIsReduced) {
    PhysicalParams p;
    p.phi = 3.0 * kPi;
    EXPECT_NEAR(derive_model(p).phi, kPi, 1e-12);
}

TEST(PhysicalParams, ValidationRejectsNonPositiveRates) {
    PhysicalParams p;
    p.kappa = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = PhysicalParams{};
    p.lambda_pa = -1.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = PhysicalParams{};
    p.drive = DirectCouplings{-1.0, 0.0};
    EXPECT_THROW(p.validate(), DomainError);
    p = PhysicalParams{};
    p.drive = DrivePowers{1e-9, -1e-9};
    EXPECT_THROW(p.validate(), DomainError);
}

TEST(PhysicalConstants, Codata2018) {
    EXPECT_EQ(PhysicalConstants::hbar, 1.054571817e-34);
    EXPECT_EQ(PhysicalConstants::k_boltzmann, 1.380649e-23);
}

}  // namespace
}  // namespace optosqueeze
