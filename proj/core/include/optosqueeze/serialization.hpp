#pragma once

// JSON and CSV encodings shared by the library and the command-line tool.
// CSV numbers use 9 significant digits; JSON numbers keep full double
// precision so a covariance written by one command reads back bit-exact.

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "optosqueeze/constants_params.hpp"
#include "optosqueeze/dynamics.hpp"
#include "optosqueeze/metrics.hpp"
#include "optosqueeze/model_matrices.hpp"
#include "optosqueeze/stability.hpp"
#include "optosqueeze/sweep.hpp"

namespace optosqueeze {

/// printf %.9g; NaN prints as "nan".
[[nodiscard]] std::string format_number(double value);

/// {"basis": [8 labels], "entries": [64 numbers, row-major]}
[[nodiscard]] nlohmann::json covariance_to_json(const CovarianceMatrix& sigma);

/// Accepts the layout above (an "entries" list of 64 numbers or 8 rows of 8).
/// Throws UsageError on malformed input and ContractError on an asymmetric matrix.
[[nodiscard]] CovarianceMatrix covariance_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json stability_to_json(const StabilityReport& report);

/// Field names match PhysicalParams; the drive is {"P_minus","P_plus"} (W)
/// or {"G_minus","G_plus"} (rad/s) under "drive_spec".
[[nodiscard]] nlohmann::json params_to_json(const PhysicalParams& params);

/// Fields absent from j keep their value from base. Unknown keys throw UsageError.
[[nodiscard]] PhysicalParams params_from_json(const nlohmann::json& j, const PhysicalParams& base = {});

[[nodiscard]] nlohmann::json metrics_to_json(const MetricRow& row);

/// "v_xc,v_yc,v_xd,v_yd,s2_c_db,s2_m_db,en_cc,en_mm,physical"
[[nodiscard]] std::string metric_csv_header();
[[nodiscard]] std::string metric_csv_row(const MetricRow& row);

/// Axis columns, requested metric columns, then stable and physical.
/// Unstable points write "nan" in every metric column.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
[[nodiscard]] nlohmann::json sweep_to_json(const SweepResult& result);

/// Header t_over_kappa,trace.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
[[nodiscard]] nlohmann::json snapshots_to_json(const Trajectory& trajectory);

}  // namespace optosqueeze
