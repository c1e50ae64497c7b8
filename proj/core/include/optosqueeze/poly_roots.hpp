#pragma once

// Small dense eigenvalue kernel for polynomial root finding. Kept separate
// from the Eigen-backed drift spectrum so the two eigenvalue routes stay
// independent of each other.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace optosqueeze {

/// Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR.
/// Entries below the first subdiagonal are ignored. Throws ConvergenceError
/// after 30 iterations on a single eigenvalue.
[[nodiscard]] std::vector<std::complex<double>> hessenberg_eigenvalues(Eigen::MatrixXd h);

/// Roots of x^n + c[0] x^(n-1) + ... + c[n-1] from the balanced companion matrix.
/// Complex roots come out as exact conjugate pairs; imaginary parts below
/// 1e-10 (relative to max(1,|root|)) are snapped to zero.
[[nodiscard]] std::vector<std::complex<double>> monic_polynomial_roots(std::span<const double> coefficients);

/// Deterministic order: real part ascending, then imaginary part ascending.
void sort_spectrum(std::span<std::complex<double>> values);

}  // namespace optosqueeze
