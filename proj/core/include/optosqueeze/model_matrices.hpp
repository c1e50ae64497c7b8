#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "optosqueeze/constants_params.hpp"

namespace optosqueeze {

using Matrix8 = Eigen::Matrix<double, 8, 8>;

/// Fixed quadrature ordering shared by every matrix in the library.
enum class Quadrature : std::size_t { x_c1 = 0, y_c1, x_c2, y_c2, x_d1, y_d1, x_d2, y_d2 };

inline constexpr std::size_t kModeCount = 4;
inline constexpr std::size_t kQuadratureCount = 8;

inline constexpr std::array<std::string_view, kQuadratureCount> kQuadratureLabels = {
    "x_c1", "y_c1", "x_c2", "y_c2", "x_d1", "y_d1", "x_d2", "y_d2"};

/// Single-mode vacuum variance under the symmetrized convention.
inline constexpr double kVacuumVariance = 0.5;

constexpr std::size_t index_of(Quadrature q) noexcept { return static_cast<std::size_t>(q); }

struct DriftMatrix {
    Matrix8 entries = Matrix8::Zero();
};

struct DiffusionMatrix {
    Matrix8 entries = Matrix8::Zero();
};

struct CovarianceMatrix {
    Matrix8 entries = Matrix8::Zero();

    [[nodiscard]] bool is_symmetric(double tol = 1e-12) const {
        return (entries - entries.transpose()).cwiseAbs().maxCoeff() <= tol;
    }
    [[nodiscard]] double trace() const { return entries.trace(); }
};

/// A = G- - G+, B = G- + G+, C = Lambda cos(phi), S = Lambda sin(phi).
struct CouplingCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double s = 0.0;
};

[[nodiscard]] CouplingCoefficients coupling_coefficients(const ModelParams& m);

/// Linearized drift matrix in the fixed quadrature basis:
///
///   [ -k/2   0     C     S     0    -A     0     0  ]
///   [  0    -k/2   S    -C     B     0     0     0  ]
///   [  C     S    -k/2   0     0     0     0    -A  ]
///   [  S    -C     0    -k/2   0     0     B     0  ]
///   [  0    -A     0     0    -g/2   0     0     0  ]
///   [  B     0     0     0     0    -g/2   0     0  ]
///   [  0     0     0    -A     0     0    -g/2   0  ]
///   [  0     0     B     0     0     0     0    -g/2]
[[nodiscard]] DriftMatrix build_drift(const ModelParams& m);

/// diag(kappa(n_c+1/2) x4, gamma(n_m+1/2) x4).
[[nodiscard]] DiffusionMatrix build_diffusion(const ModelParams& m);

/// Thermal state of the uncoupled baths: diag((n_c+1/2) x4, (n_m+1/2) x4).
[[nodiscard]] CovarianceMatrix initial_covariance(const ModelParams& m);

/// Block-diagonal symplectic form, one [[0,1],[-1,0]] block per mode.
[[nodiscard]] Matrix8 symplectic_form();

}  // namespace optosqueeze
