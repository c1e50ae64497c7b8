#include "optosqueeze/model_matrices.hpp"

#include <cmath>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

CouplingCoefficients coupling_coefficients(const ModelParams& m) {
    return {
        .a = m.g_minus - m.g_plus,
        .b = m.g_minus + m.g_plus,
        .c = m.lambda_pa * std::cos(m.phi),
        .s = m.lambda_pa * std::sin(m.phi),
    };
}

DriftMatrix build_drift(const ModelParams& m) {
    const auto [a, b, c, s] = coupling_coefficients(m);
    const double k = 0.5 * m.kappa;
    const double g = 0.5 * m.gamma;

    DriftMatrix w;
    auto& e = w.entries;
    // clang-format off
    e <<  -k, 0.0,    c,    s,  0.0,   -a,  0.0,  0.0,
         0.0,  -k,    s,   -c,    b,  0.0,  0.0,  0.0,
           c,   s,   -k,  0.0,  0.0,  0.0,  0.0,   -a,
           s,  -c,  0.0,   -k,  0.0,  0.0,    b,  0.0,
         0.0,  -a,  0.0,  0.0,   -g,  0.0,  0.0,  0.0,
           b, 0.0,  0.0,  0.0,  0.0,   -g,  0.0,  0.0,
         0.0, 0.0,  0.0,   -a,  0.0,  0.0,   -g,  0.0,
         0.0, 0.0,    b,  0.0,  0.0,  0.0,  0.0,   -g;
    // clang-format on
    return w;
}

DiffusionMatrix build_diffusion(const ModelParams& m) {
    if (!(m.n_c >= 0.0) || !(m.n_m >= 0.0)) throw DomainError("build_diffusion: occupations must be non-negative");
    DiffusionMatrix d;
    for (int i = 0; i < 4; ++i) d.entries(i, i) = m.kappa * (m.n_c + 0.5);
    for (int i = 4; i < 8; ++i) d.entries(i, i) = m.gamma * (m.n_m + 0.5);
    return d;
}

CovarianceMatrix initial_covariance(const ModelParams& m) {
    if (!(m.n_c >= 0.0) || !(m.n_m >= 0.0)) throw DomainError("initial_covariance: occupations must be non-negative");
    CovarianceMatrix sigma;
    for (int i = 0; i < 4; ++i) sigma.entries(i, i) = m.n_c + 0.5;
    for (int i = 4; i < 8; ++i) sigma.entries(i, i) = m.n_m + 0.5;
    return sigma;
}

Matrix8 symplectic_form() {
    Matrix8 omega = Matrix8::Zero();
    for (int mode = 0; mode < 4; ++mode) {
        omega(2 * mode, 2 * mode + 1) = 1.0;
        omega(2 * mode + 1, 2 * mode) = -1.0;
    }
    return omega;
}

}  // namespace optosqueeze
