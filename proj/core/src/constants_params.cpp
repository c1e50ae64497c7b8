#include "optosqueeze/constants_params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be positive and finite");
    }
}

void require_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(name) + " must be non-negative and finite");
    }
}

}  // namespace

void PhysicalParams::validate() const {
    require_positive(omega_m, "omega_m");
    require_positive(omega_c, "omega_c");
    require_positive(kappa, "kappa");
    require_positive(gamma, "gamma");
    require_positive(g, "g");
    require_nonnegative(lambda_pa, "lambda_pa");
    require_nonnegative(temperature, "temperature");
    if (!std::isfinite(phi)) throw DomainError("phi must be finite");
    if (const auto* p = std::get_if<DrivePowers>(&drive)) {
        require_nonnegative(p->p_minus, "P_minus");
        require_nonnegative(p->p_plus, "P_plus");
    } else {
        const auto& c = std::get<DirectCouplings>(drive);
        require_nonnegative(c.g_minus, "G_minus");
        require_nonnegative(c.g_plus, "G_plus");
    }
}

double reduce_phase(double phi) noexcept {
    double r = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

double thermal_occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("thermal_occupation: omega must be positive");
    if (!(temperature >= 0.0)) throw DomainError("thermal_occupation: temperature must be non-negative");
    if (temperature == 0.0) return 0.0;
    const double x = PhysicalConstants::hbar * omega / (PhysicalConstants::k_boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

double drive_amplitude(double power, double omega_drive, double kappa) {
    if (!(power >= 0.0)) throw DomainError("drive_amplitude: power must be non-negative");
    if (!(omega_drive > 0.0)) throw DomainError("drive_amplitude: drive frequency must be positive");
    if (!(kappa > 0.0)) throw DomainError("drive_amplitude: kappa must be positive");
    return std::sqrt(kappa * power / (PhysicalConstants::hbar * omega_drive));
}

std::complex<double> steady_cavity_amplitude(double e, double kappa, double delta_j, double delta_k,
                                             double lambda_pa) {
    using namespace std::complex_literals;
    const std::complex<double> left = 0.5 * kappa + 1i * delta_j;
    const std::complex<double> right = 0.5 * kappa - 1i * delta_k;
    const std::complex<double> denominator = left * right - lambda_pa * lambda_pa;
    // Relative to the scale of the individual products, so that the check is unit-free.
    const double scale = std::abs(left * right) + lambda_pa * lambda_pa;
    if (std::abs(denominator) <= 1e-14 * scale) {
        throw SingularityError("steady_cavity_amplitude: parametric threshold reached (vanishing denominator)");
    }
    return 1i * e * right / denominator;
}

double static_displacement(double g, double cs_magnitude, double omega_m) {
    if (!(omega_m > 0.0)) throw DomainError("static_displacement: omega_m must be positive");
    return g * cs_magnitude * cs_magnitude / omega_m;
}

ModelParams derive_model(const PhysicalParams& params) {
    params.validate();
    const double kappa = params.kappa;

    double g_minus = 0.0;
    double g_plus = 0.0;
    if (const auto* powers = std::get_if<DrivePowers>(&params.drive)) {
        const double omega_red = params.omega_c - params.omega_m;
        const double omega_blue = params.omega_c + params.omega_m;
        if (!(omega_red > 0.0)) throw DomainError("derive_model: omega_c must exceed omega_m");
        const double e_red = drive_amplitude(powers->p_minus, omega_red, kappa);
        const double e_blue = drive_amplitude(powers->p_plus, omega_blue, kappa);
        const double w = params.omega_m;
        g_minus = params.g * std::abs(steady_cavity_amplitude(e_red, kappa, w, w, params.lambda_pa));
        g_plus = params.g * std::abs(steady_cavity_amplitude(e_blue, kappa, -w, -w, params.lambda_pa));
    } else {
        const auto& direct = std::get<DirectCouplings>(params.drive);
        g_minus = direct.g_minus;
        g_plus = direct.g_plus;
    }

    ModelParams m;
    m.g_minus = g_minus / kappa;
    m.g_plus = g_plus / kappa;
    m.lambda_pa = params.lambda_pa / kappa;
    m.phi = reduce_phase(params.phi);
    m.kappa = 1.0;
    m.gamma = params.gamma / kappa;
    m.n_m = thermal_occupation(params.omega_m, params.temperature);
    m.n_c = thermal_occupation(params.omega_c, params.temperature);
    m.omega_m = params.omega_m / kappa;
    const double largest = std::max({m.g_minus, m.g_plus, m.lambda_pa, m.kappa});
    m.rwa_warning = largest > kRwaWarningRatio * m.omega_m;
    return m;
}

}  // namespace optosqueeze
