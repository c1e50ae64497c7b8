#pragma once

// Time evolution of the covariance matrix, d(sigma)/dt = W sigma + sigma W^T + D,
// with an adaptive Dormand-Prince 5(4) pair. Works for any square size so the
// scalar case can be checked against its closed form.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "optosqueeze/model_matrices.hpp"

namespace optosqueeze {

struct IntegrationOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    /// Initial step in 1/kappa; 0 picks one from the derivative norm.
    double initial_step = 0.0;
    double min_step = 1e-14;
    double max_step = 0.0;  // 0 = unbounded
    /// Times the integrator must land on exactly (ascending, within (0, t_end]).
    std::vector<double> output_times;
    /// Store a full matrix snapshot at each output time.
    bool store_snapshots = false;
    /// DivergenceError once the max-abs entry exceeds this.
    double blowup_threshold = 1e300;
};

struct Trajectory {
    std::vector<double> times;   // 1/kappa, strictly increasing, starts at 0
    std::vector<double> traces;  // Tr sigma(t) at each recorded time
    std::vector<std::pair<double, Eigen::MatrixXd>> snapshots;
    bool converged = false;
    std::optional<double> t_converged;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;

    /// Trace at a recorded time (exact match), e.g. one of the output times.
    [[nodiscard]] std::optional<double> trace_at(double t) const;
};

/// W sigma + sigma W^T + D, symmetric by construction when D is.
[[nodiscard]] Eigen::MatrixXd cm_derivative(const Eigen::MatrixXd& w, const Eigen::MatrixXd& d,
                                            const Eigen::MatrixXd& sigma);

/// Integrates from t = 0 to t_end; records the trace at every accepted step.
[[nodiscard]] Trajectory integrate(const Eigen::MatrixXd& w, const Eigen::MatrixXd& d,
                                   const Eigen::MatrixXd& sigma0, double t_end,
                                   const IntegrationOptions& options = {});

[[nodiscard]] Trajectory integrate(const DriftMatrix& w, const DiffusionMatrix& d, const CovarianceMatrix& sigma0,
                                   double t_end, const IntegrationOptions& options = {});

struct SteadyStateOptions {
    double eps = 1e-8;
    /// Trailing window (1/kappa); default 10/|spectral abscissa|.
    std::optional<double> window;
    /// Time cap (1/kappa); default 1e4/|spectral abscissa|.
    std::optional<double> max_time;
    IntegrationOptions integration;
};

struct EvolveResult {
    CovarianceMatrix sigma;
    Trajectory trajectory;
};

/// Integrates until ||d sigma/dt||_F < eps ||D||_F holds over a whole trailing
/// window. Throws ConvergenceError at the time cap, DivergenceError when the
/// state blows up, and InstabilityError for a marginal spectrum.
[[nodiscard]] EvolveResult evolve_to_steady(const DriftMatrix& w, const DiffusionMatrix& d,
                                            const CovarianceMatrix& sigma0, const SteadyStateOptions& options = {});

/// n log-spaced times in [t_min, t_max].
[[nodiscard]] std::vector<double> log_spaced_times(double t_min, double t_max, std::size_t n);

}  // namespace optosqueeze
