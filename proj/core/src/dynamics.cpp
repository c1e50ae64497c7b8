#include "optosqueeze/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/stability.hpp"

namespace optosqueeze {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                 b6 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

struct StepState {
    double t = 0.0;
    Eigen::MatrixXd y;
    Eigen::MatrixXd dy;  // derivative at (t, y)
};

// Called after every accepted step; returning true stops the integration.
using AcceptCallback = std::function<bool(const StepState&)>;

class DormandPrince {
public:
    DormandPrince(const Eigen::MatrixXd& w, const Eigen::MatrixXd& d, const IntegrationOptions& options)
        : w_(w), d_(d), options_(options) {}

    [[nodiscard]] Eigen::MatrixXd rhs(const Eigen::MatrixXd& sigma) const {
        const Eigen::MatrixXd f = w_ * sigma;
        return f + f.transpose() + d_;
    }

    // Integrates from state.t to t_end. Returns true when stopped by the callback.
    bool run(StepState& state, double t_end, Trajectory& trajectory, const AcceptCallback& on_accept) {
        state.dy = rhs(state.y);
        double h = options_.initial_step > 0.0 ? options_.initial_step : initial_step(state, t_end);
        auto next_output = options_.output_times.begin();
        while (next_output != options_.output_times.end() && *next_output <= state.t) ++next_output;

        bool last_rejected = false;
        while (state.t < t_end) {
            if (options_.max_step > 0.0) h = std::min(h, options_.max_step);
            double target = t_end;
            if (next_output != options_.output_times.end()) target = std::min(target, *next_output);
            double h_try = h;
            bool lands = false;
            if (state.t + h_try >= target - 1e-13 * std::max(1.0, std::abs(target))) {
                h_try = target - state.t;
                lands = true;
            }
            if (!lands && h_try < options_.min_step) {
                throw StiffnessError("integrate: step size underflow at t=" + std::to_string(state.t));
            }

            const double err = attempt(state, h_try);
            if (!std::isfinite(err)) {
                throw DivergenceError("integrate: non-finite state at t=" + std::to_string(state.t));
            }
            if (err > 1.0) {
                ++trajectory.rejected_steps;
                h = h_try * std::max(kMinFactor, kSafety * std::pow(err, -0.2));
                last_rejected = true;
                continue;
            }

            state.t = lands ? target : state.t + h_try;
            state.y = 0.5 * (y_new_ + y_new_.transpose());
            state.dy = k7_;
            ++trajectory.accepted_steps;
            trajectory.times.push_back(state.t);
            trajectory.traces.push_back(state.y.trace());

            const double peak = state.y.cwiseAbs().maxCoeff();
            if (!std::isfinite(peak) || peak > options_.blowup_threshold) {
                throw DivergenceError("integrate: covariance diverged at t=" + std::to_string(state.t));
            }
            if (lands && next_output != options_.output_times.end() && target == *next_output) {
                if (options_.store_snapshots) trajectory.snapshots.emplace_back(state.t, state.y);
                ++next_output;
            }
            if (on_accept && on_accept(state)) return true;

            double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
            factor = std::clamp(factor, kMinFactor, last_rejected ? 1.0 : kMaxFactor);
            // A truncated landing step says nothing about the attainable step size.
            h = lands ? std::max(h, h_try * factor) : h_try * factor;
            last_rejected = false;
        }
        return false;
    }

private:
    double initial_step(const StepState& state, double t_end) const {
        const double y_scale = scaled_norm(state.y, state.y);
        const double f_scale = scaled_norm(state.dy, state.y);
        double h = (y_scale < 1e-5 || f_scale < 1e-5) ? 1e-6 : 0.01 * y_scale / f_scale;
        return std::min(h, t_end);
    }

    // Max over entries of |v| / max(rel_tol |ref|, abs_tol).
    double scaled_norm(const Eigen::MatrixXd& v, const Eigen::MatrixXd& ref) const {
        double out = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double sc = std::max(options_.rel_tol * std::abs(ref(i)), options_.abs_tol);
            out = std::max(out, std::abs(v(i)) / sc);
        }
        return out;
    }

    double attempt(const StepState& s, double h) {
        const Eigen::MatrixXd& k1 = s.dy;
        const Eigen::MatrixXd k2 = rhs(s.y + h * (a21 * k1));
        const Eigen::MatrixXd k3 = rhs(s.y + h * (a31 * k1 + a32 * k2));
        const Eigen::MatrixXd k4 = rhs(s.y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::MatrixXd k5 = rhs(s.y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::MatrixXd k6 = rhs(s.y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y_new_ = s.y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7_ = rhs(y_new_);
        const Eigen::MatrixXd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7_);

        double worst = 0.0;
        for (Eigen::Index i = 0; i < err.size(); ++i) {
            const double ref = std::max(std::abs(s.y(i)), std::abs(y_new_(i)));
            const double sc = std::max(options_.rel_tol * ref, options_.abs_tol);
            worst = std::max(worst, std::abs(err(i)) / sc);
        }
        return worst;
    }

    const Eigen::MatrixXd& w_;
    const Eigen::MatrixXd& d_;
    const IntegrationOptions& options_;
    Eigen::MatrixXd y_new_;
    Eigen::MatrixXd k7_;
};

void check_inputs(const Eigen::MatrixXd& w, const Eigen::MatrixXd& d, const Eigen::MatrixXd& sigma0,
                  const IntegrationOptions& options) {
    const auto n = w.rows();
    if (w.cols() != n || d.rows() != n || d.cols() != n || sigma0.rows() != n || sigma0.cols() != n) {
        throw ContractError("integrate: non-conforming matrix shapes");
    }
    if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
        throw DomainError("integrate: tolerances must be positive");
    }
    if ((sigma0 - sigma0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, sigma0.cwiseAbs().maxCoeff())) {
        throw ContractError("integrate: initial covariance is not symmetric");
    }
    if (!std::is_sorted(options.output_times.begin(), options.output_times.end())) {
        throw DomainError("integrate: output times must be ascending");
    }
}

}  // namespace

std::optional<double> Trajectory::trace_at(double t) const {
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end() || *it != t) return std::nullopt;
    return traces[static_cast<std::size_t>(it - times.begin())];
}

Eigen::MatrixXd cm_derivative(const Eigen::MatrixXd& w, const Eigen::MatrixXd& d, const Eigen::MatrixXd& sigma) {
    const Eigen::MatrixXd f = w * sigma;
    return f + f.transpose() + d;
}

Trajectory integrate(const Eigen::MatrixXd& w, const Eigen::MatrixXd& d, const Eigen::MatrixXd& sigma0,
                     double t_end, const IntegrationOptions& options) {
    if (!(t_end > 0.0)) throw DomainError("integrate: t_end must be positive");
    check_inputs(w, d, sigma0, options);

    Trajectory trajectory;
    StepState state{0.0, 0.5 * (sigma0 + sigma0.transpose()), {}};
    trajectory.times.push_back(0.0);
    trajectory.traces.push_back(state.y.trace());

    DormandPrince stepper(w, d, options);
    stepper.run(state, t_end, trajectory, {});
    return trajectory;
}

Trajectory integrate(const DriftMatrix& w, const DiffusionMatrix& d, const CovarianceMatrix& sigma0, double t_end,
                     const IntegrationOptions& options) {
    return integrate(Eigen::MatrixXd(w.entries), Eigen::MatrixXd(d.entries), Eigen::MatrixXd(sigma0.entries), t_end,
                     options);
}

EvolveResult evolve_to_steady(const DriftMatrix& w, const DiffusionMatrix& d, const CovarianceMatrix& sigma0,
                              const SteadyStateOptions& options) {
    if (!(options.eps > 0.0)) throw DomainError("evolve_to_steady: eps must be positive");
    const double abscissa = spectral_abscissa(w);
    if (std::abs(abscissa) < kMarginalBand) {
        throw InstabilityError("marginal spectrum, no relaxation time scale");
    }
    const double rate = std::abs(abscissa);
    const double window = options.window.value_or(10.0 / rate);
    const double max_time = options.max_time.value_or(1e4 / rate);
    if (!(window > 0.0)) throw DomainError("evolve_to_steady: window must be positive");

    IntegrationOptions integration = options.integration;
    const double initial_scale = std::max(1.0, sigma0.entries.cwiseAbs().maxCoeff());
    integration.blowup_threshold = std::min(integration.blowup_threshold, 1e30 * initial_scale);

    const Eigen::MatrixXd w_dyn = w.entries;
    const Eigen::MatrixXd d_dyn = d.entries;
    check_inputs(w_dyn, d_dyn, sigma0.entries, integration);

    const double d_norm = d.entries.norm();
    const double threshold = options.eps * (d_norm > 0.0 ? d_norm : 1.0);

    EvolveResult result;
    Trajectory& trajectory = result.trajectory;
    StepState state{0.0, 0.5 * (sigma0.entries + sigma0.entries.transpose()), {}};
    trajectory.times.push_back(0.0);
    trajectory.traces.push_back(state.y.trace());

    std::optional<double> quiet_since;
    if (cm_derivative(w_dyn, d_dyn, state.y).norm() < threshold) quiet_since = 0.0;

    DormandPrince stepper(w_dyn, d_dyn, integration);
    const bool stopped = stepper.run(state, max_time, trajectory, [&](const StepState& s) {
        if (s.dy.norm() < threshold) {
            if (!quiet_since) quiet_since = s.t;
            return s.t - *quiet_since >= window;
        }
        quiet_since.reset();
        return false;
    });
    if (!stopped) {
        throw ConvergenceError("evolve_to_steady: no steady state within t=" + std::to_string(max_time) + "/kappa");
    }
    trajectory.converged = true;
    trajectory.t_converged = quiet_since;
    result.sigma.entries = state.y;
    return result;
}

std::vector<double> log_spaced_times(double t_min, double t_max, std::size_t n) {
    if (!(t_min > 0.0) || !(t_max > t_min) || n < 2) {
        throw DomainError("log_spaced_times: need 0 < t_min < t_max and n >= 2");
    }
    std::vector<double> out(n);
    const double lo = std::log(t_min);
    const double hi = std::log(t_max);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = t_min;
    out.back() = t_max;
    return out;
}

}  // namespace optosqueeze
