#include "optosqueeze/stability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/poly_roots.hpp"

namespace optosqueeze {

RhscCoefficients rhsc_coefficients(const ModelParams& m) {
    const double k = m.kappa;
    const double g = m.gamma;
    const double l2 = m.lambda_pa * m.lambda_pa;
    const double d = m.g_minus * m.g_minus - m.g_plus * m.g_plus;

    RhscCoefficients s;
    s.s1 = g + k;
    s.s2 = g * k + 0.25 * (g * g + k * k - 4.0 * l2) + 2.0 * d;
    s.s3 = (g + k) * (0.25 * g * k + d) - g * l2;
    s.s4 = d * (d + 0.5 * g * k) + g * g * (k * k - 4.0 * l2) / 16.0;
    return s;
}

RhscCheck rhsc_check(const ModelParams& m) {
    const auto s = rhsc_coefficients(m);
    RhscCheck check;
    check.h1 = s.s4;
    check.h2 = s.s2 * s.s3 - s.s1 * check.h1;
    check.h3 = s.s1 * check.h2 - s.s3 * s.s3;

    const auto values = s.as_array();
    for (std::size_t r = 0; r < values.size(); ++r) {
        check.s_positive[r] = values[r] > 0.0;
        if (!check.s_positive[r] && check.failed_condition.empty()) {
            check.failed_condition = "s" + std::to_string(r + 1) + "<0";
        }
    }
    if (check.failed_condition.empty() && !(check.h2 > 0.0)) check.failed_condition = "h2<0";
    if (check.failed_condition.empty() && !(check.h3 > 0.0)) check.failed_condition = "h3<0";
    check.stable = check.failed_condition.empty();
    return check;
}

std::array<std::complex<double>, 4> quartic_eigenvalues(const ModelParams& m) {
    const auto coefficients = rhsc_coefficients(m).as_array();
    const auto roots = monic_polynomial_roots(coefficients);
    std::array<std::complex<double>, 4> out{};
    std::copy(roots.begin(), roots.end(), out.begin());
    return out;
}

std::array<std::complex<double>, 8> drift_eigenvalues(const DriftMatrix& w) {
    Eigen::EigenSolver<Matrix8> solver(w.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("drift_eigenvalues: eigensolver did not converge");
    }
    std::array<std::complex<double>, 8> out{};
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    sort_spectrum(out);
    return out;
}

double spectral_abscissa(const DriftMatrix& w) {
    const auto values = drift_eigenvalues(w);
    return std::max_element(values.begin(), values.end(), [](const auto& a, const auto& b) {
               return a.real() < b.real();
           })->real();
}

StabilityReport analyze(const ModelParams& m) {
    StabilityReport report;
    report.coefficients = rhsc_coefficients(m);
    const auto check = rhsc_check(m);
    report.h1 = check.h1;
    report.h2 = check.h2;
    report.h3 = check.h3;
    report.s_positive = check.s_positive;
    report.rhsc_stable = check.stable;
    report.failed_condition = check.failed_condition;

    report.eigenvalues = drift_eigenvalues(build_drift(m));
    // Sorted ascending by real part, so the last entry carries the abscissa.
    report.spectral_abscissa = report.eigenvalues.back().real();
    report.eig_stable = report.spectral_abscissa < 0.0;
    report.marginal = std::abs(report.spectral_abscissa) < kMarginalBand * m.kappa;
    report.consistent = report.marginal || report.rhsc_stable == report.eig_stable;
    return report;
}

}  // namespace optosqueeze
