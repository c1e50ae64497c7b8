#pragma once

#include <random>

#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/presets.hpp"

namespace optosqueeze::testing {

// High-precision reference values (40-digit evaluations with CODATA 2018 constants).
inline constexpr double kNm10mK = 57.38093736602089953;
inline constexpr double kNc10mK = 1.034917672599024e-13;

inline ModelParams reference_model() { return derive_model(reference_params()); }

inline ModelParams decoupled_model(double gamma, double n_c, double n_m) {
    ModelParams m;
    m.gamma = gamma;
    m.n_c = n_c;
    m.n_m = n_m;
    return m;
}

/// Stable draw: G+ < 0.7 G-, Lambda < 0.45, moderate damping so the
/// relaxation time stays short.
inline ModelParams random_stable_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModelParams m;
    m.g_minus = 0.1 + 0.5 * u(rng);
    m.g_plus = 0.7 * m.g_minus * u(rng);
    m.lambda_pa = 0.45 * u(rng);
    m.phi = (2.0 * u(rng) - 1.0) * kPi;
    m.gamma = 1e-3 + 9e-3 * u(rng);
    m.n_m = 100.0 * u(rng);
    m.n_c = 0.1 * u(rng);
    return m;
}

}  // namespace optosqueeze::testing
