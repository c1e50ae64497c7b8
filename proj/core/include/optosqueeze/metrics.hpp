#pragma once

// Squeezing and entanglement figures of merit computed from an 8x8
// covariance matrix in the fixed quadrature basis.

#include <array>
#include <string_view>

#include "optosqueeze/model_matrices.hpp"

namespace optosqueeze {

/// Collective variance of the two-mode shot noise.
inline constexpr double kShotNoiseVariance = 1.0;
/// 10 log10(2): variance 1/2 of the shot noise.
inline constexpr double kThreeDbThreshold = 3.0102999566398120;
/// ln 2, the coherent bound on the logarithmic negativity.
inline constexpr double kLn2 = 0.69314718055994531;

/// <(x_1 + x_2)^2>-type variances; shot noise is 1.
struct CollectiveVariances {
    double v_xc = 0.0;
    double v_yc = 0.0;
    double v_xd = 0.0;
    double v_yd = 0.0;
};

enum class CollectiveQuadrature { x_c, y_c, x_d, y_d };

struct SqueezingResult {
    CollectiveQuadrature quadrature = CollectiveQuadrature::x_d;
    double variance = 0.0;
    double db = 0.0;
    bool beats_3db = false;
};

enum class ModePair { cc, mm };

struct NegativityResult {
    ModePair pair = ModePair::cc;
    double nu_tilde_minus = 0.0;
    double e_n = 0.0;
};

/// One row of derived scalars; the CSV column set of every sweep.
struct MetricRow {
    double v_xc = 0.0;
    double v_yc = 0.0;
    double v_xd = 0.0;
    double v_yd = 0.0;
    double s2_c_db = 0.0;  // from v_yc
    double s2_m_db = 0.0;  // from v_xd
    double en_cc = 0.0;
    double en_mm = 0.0;
    bool physical = false;
};

/// Throws ContractError when sigma is asymmetric beyond 1e-9.
[[nodiscard]] CollectiveVariances collective_variances(const CovarianceMatrix& sigma);

/// -10 log10(variance / shot noise). Throws DomainError for variance <= 0.
[[nodiscard]] double squeezing_db(double variance);

[[nodiscard]] SqueezingResult squeezing(const CollectiveVariances& v, CollectiveQuadrature q);

/// The eight diagonal entries; a single-mode quadrature is squeezed below 1/2.
[[nodiscard]] std::array<double, 8> single_mode_variances(const CovarianceMatrix& sigma);

/// Logarithmic negativity of the cavity pair (quadratures 0-3) or the
/// mechanical pair (4-7), vacuum variance 1/2 convention:
///   D~ = det(alpha) + det(beta) - 2 det(gamma)
///   nu~ = sqrt((D~ - sqrt(D~^2 - 4 det(sigma4))) / 2),  E_N = max(0, -ln(2 nu~)).
/// Throws PhysicalityError when D~^2 - 4 det(sigma4) < -1e-9.
[[nodiscard]] NegativityResult log_negativity(const CovarianceMatrix& sigma, ModePair pair);

/// Same formula on an explicit 4x4 two-mode block.
[[nodiscard]] NegativityResult log_negativity_block(const Eigen::Matrix4d& block, ModePair pair = ModePair::cc);

/// True iff every eigenvalue of sigma + (i/2) Omega is >= -1e-9.
[[nodiscard]] bool physicality_check(const CovarianceMatrix& sigma);

/// Smallest eigenvalue of sigma + (i/2) Omega.
[[nodiscard]] double uncertainty_margin(const CovarianceMatrix& sigma);

/// All metrics at once. Negativity is reported as NaN for unphysical blocks.
[[nodiscard]] MetricRow evaluate_metrics(const CovarianceMatrix& sigma);

[[nodiscard]] std::string_view to_string(CollectiveQuadrature q);
[[nodiscard]] std::string_view to_string(ModePair pair);

}  // namespace optosqueeze
