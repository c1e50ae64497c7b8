#pragma once

// Physical constants and the conversion from laboratory inputs to the
// kappa-normalized model used by every downstream module.

#include <complex>
#include <variant>

namespace optosqueeze {

/// CODATA 2018 exact values. Not configurable.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;     // J s
    static constexpr double k_boltzmann = 1.380649e-23;  // J / K
};

inline constexpr double kPi = 3.14159265358979323846;

/// Red and blue drive powers in watts.
struct DrivePowers {
    double p_minus = 0.0;
    double p_plus = 0.0;
};

/// Effective optomechanical couplings G_- and G_+ in rad/s.
struct DirectCouplings {
    double g_minus = 0.0;
    double g_plus = 0.0;
};

using DriveSpec = std::variant<DrivePowers, DirectCouplings>;

enum class CouplingMode { powers, direct };

/// Raw experimental inputs. Rates and frequencies are angular (rad/s).
///
/// Both cavities share one (kappa, gamma, g, T) set, and both mechanical
/// resonators share omega_m.
struct PhysicalParams {
    double omega_m = 2.0 * kPi * 3.6e6;
    double omega_c = 2.0 * kPi * 6.23e9;
    double kappa = 2.0 * kPi * 450e3;
    double gamma = 2.0 * kPi * 3.0;
    double g = 2.0 * kPi * 36.0;
    double lambda_pa = 0.0;
    double phi = 0.0;
    double temperature = 0.01;  // K
    DriveSpec drive = DrivePowers{10e-9, 0.0};

    [[nodiscard]] CouplingMode coupling_mode() const noexcept {
        return std::holds_alternative<DrivePowers>(drive) ? CouplingMode::powers : CouplingMode::direct;
    }

    /// Throws DomainError on the first violated invariant.
    void validate() const;
};

/// Dimensionless model in units of kappa (kappa == 1).
struct ModelParams {
    double g_minus = 0.0;
    double g_plus = 0.0;
    double lambda_pa = 0.0;
    double phi = 0.0;
    double kappa = 1.0;
    double gamma = 0.0;
    double n_m = 0.0;
    double n_c = 0.0;
    double omega_m = 8.0;
    bool rwa_warning = false;
};

/// Reduces an angle to (-pi, pi].
[[nodiscard]] double reduce_phase(double phi) noexcept;

/// Bose-Einstein occupation 1/(exp(hbar*omega/(kB*T)) - 1); exactly 0 at T = 0.
[[nodiscard]] double thermal_occupation(double omega, double temperature);

/// Drive field strength |E| = sqrt(kappa*P/(hbar*omega_drive)), in rad/s.
[[nodiscard]] double drive_amplitude(double power, double omega_drive, double kappa);

/// Steady intracavity amplitude of one tone in the presence of the parametric
/// amplifier:
///   c = i E (kappa/2 - i delta_k) / [(kappa/2 + i delta_j)(kappa/2 - i delta_k) - lambda^2]
/// Throws SingularityError when the denominator vanishes (parametric threshold).
[[nodiscard]] std::complex<double> steady_cavity_amplitude(double e, double kappa, double delta_j,
                                                           double delta_k, double lambda_pa);

/// Static mechanical displacement g |c|^2 / omega_m. Informational only.
[[nodiscard]] double static_displacement(double g, double cs_magnitude, double omega_m);

/// Converts laboratory inputs to the kappa-normalized model. In power mode the
/// red tone sits at omega_c - omega_m (detuning +omega_m) and the blue tone at
/// omega_c + omega_m (detuning -omega_m); couplings are g*|c|.
[[nodiscard]] ModelParams derive_model(const PhysicalParams& params);

/// Threshold ratio for the rotating-wave warning: max(G, Lambda, kappa) > 0.3 omega_m.
inline constexpr double kRwaWarningRatio = 0.3;

}  // namespace optosqueeze
