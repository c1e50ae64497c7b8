#pragma once

// Routh-Hurwitz analysis of the drift matrix and the independent
// eigenvalue check.
//
// det(W - lambda I) = (lambda^4 + s1 lambda^3 + s2 lambda^2 + s3 lambda + s4)^2,
// with coefficients that do not depend on the parametric phase.

#include <array>
#include <complex>
#include <string>

#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/model_matrices.hpp"

namespace optosqueeze {

/// Half-width (in units of kappa) of the band around zero spectral abscissa
/// where both verdicts are considered unreliable.
inline constexpr double kMarginalBand = 1e-9;

struct RhscCoefficients {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;

    [[nodiscard]] std::array<double, 4> as_array() const { return {s1, s2, s3, s4}; }
};

struct RhscCheck {
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
    std::array<bool, 4> s_positive{};
    bool stable = false;
    /// First violated condition ("s1<0" ... "s4<0", "h2<0", "h3<0"); empty when stable.
    std::string failed_condition;
};

struct StabilityReport {
    RhscCoefficients coefficients;
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
    std::array<bool, 4> s_positive{};
    bool rhsc_stable = false;
    std::string failed_condition;
    std::array<std::complex<double>, 8> eigenvalues{};
    double spectral_abscissa = 0.0;
    bool eig_stable = false;
    bool marginal = false;
    bool consistent = false;

    /// Both verdicts agree on stability and the spectrum is clear of the marginal band.
    [[nodiscard]] bool usable() const noexcept { return rhsc_stable && eig_stable && !marginal; }
};

[[nodiscard]] RhscCoefficients rhsc_coefficients(const ModelParams& m);

/// h1 = s4, h2 = s2 s3 - s1 h1, h3 = s1 h2 - s3^2; stable iff all s_r > 0 and all h > 0.
[[nodiscard]] RhscCheck rhsc_check(const ModelParams& m);

/// Roots of the quartic factor via its companion matrix, sorted.
[[nodiscard]] std::array<std::complex<double>, 4> quartic_eigenvalues(const ModelParams& m);

/// All eigenvalues of a real 8x8 matrix, sorted (real part, then imaginary part).
[[nodiscard]] std::array<std::complex<double>, 8> drift_eigenvalues(const DriftMatrix& w);

[[nodiscard]] double spectral_abscissa(const DriftMatrix& w);

[[nodiscard]] StabilityReport analyze(const ModelParams& m);

}  // namespace optosqueeze
