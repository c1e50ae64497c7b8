#pragma once

#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/model_matrices.hpp"
#include "optosqueeze/stability.hpp"

namespace optosqueeze {

struct LyapunovSolution {
    CovarianceMatrix sigma;
    /// ||W sigma + sigma W^T + D||_F / ||D||_F, evaluated after symmetrization.
    double residual_norm = 0.0;
    /// 1-norm condition estimate of the 64x64 vectorized operator.
    double condition_estimate = 0.0;
};

/// Steady-state covariance from W sigma + sigma W^T = -D.
///
/// Solved through the Kronecker form (I (x) W + W (x) I) vec(sigma) = -vec(D)
/// with partial-pivoting LU, then symmetrized. Throws InstabilityError when
/// the spectral abscissa is non-negative and SingularityError when it lies in
/// the marginal band.
[[nodiscard]] LyapunovSolution solve_lyapunov(const DriftMatrix& w, const DiffusionMatrix& d);

/// Model-level entry point: runs the Routh-Hurwitz and eigenvalue checks,
/// rejects with an InstabilityError naming the first failed condition, then
/// solves.
[[nodiscard]] LyapunovSolution steady_state(const ModelParams& m);

/// ||W sigma + sigma W^T + D||_F / ||D||_F.
[[nodiscard]] double residual(const DriftMatrix& w, const DiffusionMatrix& d, const CovarianceMatrix& sigma);

}  // namespace optosqueeze
