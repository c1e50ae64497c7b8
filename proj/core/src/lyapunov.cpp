#include "optosqueeze/lyapunov.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/LU>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace {

using Matrix64 = Eigen::Matrix<double, 64, 64>;
using Vector64 = Eigen::Matrix<double, 64, 1>;

// Column-major vec: vec(W X) = (I (x) W) vec(X), vec(X W^T) = (W (x) I) vec(X).
Matrix64 kronecker_operator(const Matrix8& w) {
    Matrix64 op = Matrix64::Zero();
    for (int j = 0; j < 8; ++j) {
        op.block<8, 8>(8 * j, 8 * j) += w;
        for (int i = 0; i < 8; ++i) {
            op.block<8, 8>(8 * i, 8 * j).diagonal().array() += w(i, j);
        }
    }
    return op;
}

std::string format_abscissa(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "spectral abscissa=%.3g", value);
    return buffer;
}

}  // namespace

double residual(const DriftMatrix& w, const DiffusionMatrix& d, const CovarianceMatrix& sigma) {
    const Matrix8 r = w.entries * sigma.entries + sigma.entries * w.entries.transpose() + d.entries;
    const double denominator = d.entries.norm();
    if (denominator == 0.0) return r.norm();
    return r.norm() / denominator;
}

LyapunovSolution solve_lyapunov(const DriftMatrix& w, const DiffusionMatrix& d) {
    const double abscissa = spectral_abscissa(w);
    if (std::abs(abscissa) < kMarginalBand) {
        throw SingularityError("solve_lyapunov: marginal spectrum (" + format_abscissa(abscissa) + ")");
    }
    if (abscissa > 0.0) throw InstabilityError(format_abscissa(abscissa));

    const Matrix64 op = kronecker_operator(w.entries);
    const Eigen::PartialPivLU<Matrix64> lu(op);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || !std::isfinite(rcond)) {
        throw SingularityError("solve_lyapunov: singular vectorized system");
    }

    const Vector64 rhs = -Eigen::Map<const Vector64>(d.entries.data());
    const Vector64 x = lu.solve(rhs);

    LyapunovSolution out;
    const Matrix8 sigma = Eigen::Map<const Matrix8>(x.data());
    out.sigma.entries = 0.5 * (sigma + sigma.transpose());
    out.residual_norm = residual(w, d, out.sigma);
    out.condition_estimate = 1.0 / rcond;
    if (!out.sigma.entries.allFinite()) throw SingularityError("solve_lyapunov: non-finite solution");
    return out;
}

LyapunovSolution steady_state(const ModelParams& m) {
    const auto report = analyze(m);
    // On the boundary the RHSC signs are roundoff, so the marginal band wins.
    if (report.marginal) {
        throw SingularityError("steady_state: marginal spectrum (" + format_abscissa(report.spectral_abscissa) + ")");
    }
    if (!report.rhsc_stable) throw InstabilityError(report.failed_condition);
    if (!report.eig_stable) throw InstabilityError(format_abscissa(report.spectral_abscissa));
    return solve_lyapunov(build_drift(m), build_diffusion(m));
}

}  // namespace optosqueeze
