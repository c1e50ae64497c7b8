#include "optosqueeze/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

namespace {

constexpr double kSymmetryTolerance = 1e-9;
constexpr double kPhysicalityTolerance = 1e-9;

void require_symmetric(const CovarianceMatrix& sigma, const char* where) {
    const double asym = (sigma.entries - sigma.entries.transpose()).cwiseAbs().maxCoeff();
    if (!(asym <= kSymmetryTolerance)) {
        throw ContractError(std::string(where) + ": covariance matrix is not symmetric");
    }
}

double collective(const Matrix8& s, int i, int j) { return s(i, i) + s(j, j) + 2.0 * s(i, j); }

}  // namespace

CollectiveVariances collective_variances(const CovarianceMatrix& sigma) {
    require_symmetric(sigma, "collective_variances");
    const auto& s = sigma.entries;
    return {
        .v_xc = collective(s, 0, 2),
        .v_yc = collective(s, 1, 3),
        .v_xd = collective(s, 4, 6),
        .v_yd = collective(s, 5, 7),
    };
}

double squeezing_db(double variance) {
    if (!(variance > 0.0)) throw DomainError("squeezing_db: variance must be positive");
    return -10.0 * std::log10(variance / kShotNoiseVariance);
}

SqueezingResult squeezing(const CollectiveVariances& v, CollectiveQuadrature q) {
    SqueezingResult r;
    r.quadrature = q;
    switch (q) {
        case CollectiveQuadrature::x_c: r.variance = v.v_xc; break;
        case CollectiveQuadrature::y_c: r.variance = v.v_yc; break;
        case CollectiveQuadrature::x_d: r.variance = v.v_xd; break;
        case CollectiveQuadrature::y_d: r.variance = v.v_yd; break;
    }
    r.db = squeezing_db(r.variance);
    r.beats_3db = r.db > kThreeDbThreshold;
    return r;
}

std::array<double, 8> single_mode_variances(const CovarianceMatrix& sigma) {
    require_symmetric(sigma, "single_mode_variances");
    std::array<double, 8> out{};
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = sigma.entries(i, i);
    return out;
}

NegativityResult log_negativity_block(const Eigen::Matrix4d& block, ModePair pair) {
    const double det_alpha = block.topLeftCorner<2, 2>().determinant();
    const double det_beta = block.bottomRightCorner<2, 2>().determinant();
    const double det_gamma = block.topRightCorner<2, 2>().determinant();
    const double det_all = block.determinant();

    const double delta = det_alpha + det_beta - 2.0 * det_gamma;
    double discriminant = delta * delta - 4.0 * det_all;
    // Relative slack: for hot blocks delta^2 and 4 det are ~1e7 and cancel exactly in theory.
    if (discriminant < -kPhysicalityTolerance * std::max(1.0, delta * delta)) {
        throw PhysicalityError("log_negativity: negative discriminant, block is not a valid covariance matrix");
    }
    discriminant = std::max(discriminant, 0.0);
    // nu-^2 nu+^2 = det, so the small root avoids the cancellation in (delta - sqrt(disc)) / 2.
    const double root = std::sqrt(discriminant);
    const double nu_sq = delta > 0.0 ? 2.0 * det_all / (delta + root) : 0.5 * (delta - root);
    if (nu_sq < -kPhysicalityTolerance * std::max(1.0, std::abs(delta))) {
        throw PhysicalityError("log_negativity: negative symplectic eigenvalue squared");
    }

    NegativityResult r;
    r.pair = pair;
    r.nu_tilde_minus = std::sqrt(std::max(nu_sq, 0.0));
    r.e_n = r.nu_tilde_minus > 0.0 ? std::max(0.0, -std::log(2.0 * r.nu_tilde_minus))
                                   : std::numeric_limits<double>::infinity();
    return r;
}

NegativityResult log_negativity(const CovarianceMatrix& sigma, ModePair pair) {
    require_symmetric(sigma, "log_negativity");
    const int offset = pair == ModePair::cc ? 0 : 4;
    return log_negativity_block(sigma.entries.block<4, 4>(offset, offset), pair);
}

double uncertainty_margin(const CovarianceMatrix& sigma) {
    using namespace std::complex_literals;
    const Eigen::Matrix<std::complex<double>, 8, 8> h =
        sigma.entries.cast<std::complex<double>>() + (0.5i) * symplectic_form().cast<std::complex<double>>();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, 8, 8>> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool physicality_check(const CovarianceMatrix& sigma) {
    require_symmetric(sigma, "physicality_check");
    return uncertainty_margin(sigma) >= -kPhysicalityTolerance;
}

MetricRow evaluate_metrics(const CovarianceMatrix& sigma) {
    const auto v = collective_variances(sigma);
    MetricRow row;
    row.v_xc = v.v_xc;
    row.v_yc = v.v_yc;
    row.v_xd = v.v_xd;
    row.v_yd = v.v_yd;
    row.s2_c_db = squeezing_db(v.v_yc);
    row.s2_m_db = squeezing_db(v.v_xd);
    row.physical = physicality_check(sigma);
    const auto negativity_or_nan = [&](ModePair pair) {
        try {
            return log_negativity(sigma, pair).e_n;
        } catch (const PhysicalityError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
    row.en_cc = negativity_or_nan(ModePair::cc);
    row.en_mm = negativity_or_nan(ModePair::mm);
    return row;
}

std::string_view to_string(CollectiveQuadrature q) {
    switch (q) {
        case CollectiveQuadrature::x_c: return "x_c";
        case CollectiveQuadrature::y_c: return "y_c";
        case CollectiveQuadrature::x_d: return "x_d";
        case CollectiveQuadrature::y_d: return "y_d";
    }
    return "?";
}

std::string_view to_string(ModePair pair) { return pair == ModePair::cc ? "cc" : "mm"; }

}  // namespace optosqueeze
