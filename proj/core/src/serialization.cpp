#include "optosqueeze/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "optosqueeze/errors.hpp"

namespace optosqueeze {

using nlohmann::json;

namespace {

constexpr double kJsonSymmetryTolerance = 1e-9;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double read_number(const json& j, const char* key) {
    if (!j.is_number()) throw UsageError(std::string("config: '") + key + "' must be a number");
    return j.get<double>();
}

json axis_to_json(const Axis& axis) {
    json j{{"name", to_string(axis.name)}};
    if (axis.scale == AxisScale::list) {
        j["scale"] = "list";
        j["values"] = axis.values;
    } else {
        j["scale"] = "linear";
        j["min"] = axis.min;
        j["max"] = axis.max;
        j["count"] = axis.count;
    }
    return j;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

json covariance_to_json(const CovarianceMatrix& sigma) {
    json entries = json::array();
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) entries.push_back(sigma.entries(i, j));
    }
    json basis = json::array();
    for (const auto label : kQuadratureLabels) basis.push_back(label);
    return {{"basis", basis}, {"entries", entries}};
}

CovarianceMatrix covariance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries")) throw UsageError("covariance: expected an object with 'entries'");
    if (j.contains("basis")) {
        const auto& basis = j.at("basis");
        bool ok = basis.is_array() && basis.size() == kQuadratureLabels.size();
        for (std::size_t i = 0; ok && i < basis.size(); ++i) {
            ok = basis[i].is_string() && basis[i].get<std::string>() == kQuadratureLabels[i];
        }
        if (!ok) throw UsageError("covariance: basis labels do not match the quadrature ordering");
    }
    const auto& e = j.at("entries");
    std::vector<double> flat;
    if (e.is_array() && e.size() == 64) {
        for (const auto& v : e) flat.push_back(read_number(v, "entries"));
    } else if (e.is_array() && e.size() == 8) {
        for (const auto& row : e) {
            if (!row.is_array() || row.size() != 8) throw UsageError("covariance: expected 8 rows of 8 entries");
            for (const auto& v : row) flat.push_back(read_number(v, "entries"));
        }
    } else {
        throw UsageError("covariance: expected 64 entries");
    }
    CovarianceMatrix sigma;
    for (int i = 0; i < 8; ++i) {
        for (int k = 0; k < 8; ++k) sigma.entries(i, k) = flat[static_cast<std::size_t>(8 * i + k)];
    }
    if (!sigma.entries.allFinite()) throw UsageError("covariance: entries must be finite");
    if (!sigma.is_symmetric(kJsonSymmetryTolerance)) throw ContractError("covariance: matrix is not symmetric");
    return sigma;
}

json stability_to_json(const StabilityReport& r) {
    json eig = json::array();
    for (const auto& z : r.eigenvalues) eig.push_back({{"re", z.real()}, {"im", z.imag()}});
    return {
        {"s1", r.coefficients.s1},
        {"s2", r.coefficients.s2},
        {"s3", r.coefficients.s3},
        {"s4", r.coefficients.s4},
        {"h1", r.h1},
        {"h2", r.h2},
        {"h3", r.h3},
        {"eigenvalues", eig},
        {"spectral_abscissa", r.spectral_abscissa},
        {"verdicts",
         {{"rhsc_stable", r.rhsc_stable},
          {"failed_condition", r.failed_condition},
          {"eig_stable", r.eig_stable},
          {"marginal", r.marginal},
          {"consistent", r.consistent},
          {"stable", r.usable()}}},
    };
}

json params_to_json(const PhysicalParams& p) {
    json drive;
    if (const auto* powers = std::get_if<DrivePowers>(&p.drive)) {
        drive = {{"P_minus", powers->p_minus}, {"P_plus", powers->p_plus}};
    } else {
        const auto& g = std::get<DirectCouplings>(p.drive);
        drive = {{"G_minus", g.g_minus}, {"G_plus", g.g_plus}};
    }
    return {
        {"omega_m", p.omega_m}, {"omega_c", p.omega_c},         {"kappa", p.kappa}, {"gamma", p.gamma},
        {"g", p.g},             {"lambda_pa", p.lambda_pa},     {"phi", p.phi},     {"temperature", p.temperature},
        {"drive_spec", drive},
    };
}

PhysicalParams params_from_json(const json& j, const PhysicalParams& base) {
    if (!j.is_object()) throw UsageError("config: expected a JSON object");
    PhysicalParams p = base;
    for (const auto& [key, value] : j.items()) {
        if (key == "omega_m") p.omega_m = read_number(value, "omega_m");
        else if (key == "omega_c") p.omega_c = read_number(value, "omega_c");
        else if (key == "kappa") p.kappa = read_number(value, "kappa");
        else if (key == "gamma") p.gamma = read_number(value, "gamma");
        else if (key == "g") p.g = read_number(value, "g");
        else if (key == "lambda_pa") p.lambda_pa = read_number(value, "lambda_pa");
        else if (key == "phi") p.phi = read_number(value, "phi");
        else if (key == "temperature") p.temperature = read_number(value, "temperature");
        else if (key == "drive_spec") {
            if (!value.is_object()) throw UsageError("config: 'drive_spec' must be an object");
            const bool powers = value.contains("P_minus") || value.contains("P_plus");
            const bool couplings = value.contains("G_minus") || value.contains("G_plus");
            if (powers == couplings) {
                throw UsageError("config: 'drive_spec' needs either P_minus/P_plus or G_minus/G_plus");
            }
            for (const auto& [k, _] : value.items()) {
                if (k != "P_minus" && k != "P_plus" && k != "G_minus" && k != "G_plus") {
                    throw UsageError("config: unknown drive_spec key '" + k + "'");
                }
            }
            const auto get = [&](const char* k) { return value.contains(k) ? read_number(value.at(k), k) : 0.0; };
            if (powers) {
                p.drive = DrivePowers{get("P_minus"), get("P_plus")};
            } else {
                p.drive = DirectCouplings{get("G_minus"), get("G_plus")};
            }
        } else {
            throw UsageError("config: unknown key '" + key + "'");
        }
    }
    return p;
}

json metrics_to_json(const MetricRow& row) {
    return {
        {"v_xc", number_or_null(row.v_xc)},       {"v_yc", number_or_null(row.v_yc)},
        {"v_xd", number_or_null(row.v_xd)},       {"v_yd", number_or_null(row.v_yd)},
        {"s2_c_db", number_or_null(row.s2_c_db)}, {"s2_m_db", number_or_null(row.s2_m_db)},
        {"en_cc", number_or_null(row.en_cc)},     {"en_mm", number_or_null(row.en_mm)},
        {"physical", row.physical},
    };
}

std::string metric_csv_header() { return "v_xc,v_yc,v_xd,v_yd,s2_c_db,s2_m_db,en_cc,en_mm,physical"; }

std::string metric_csv_row(const MetricRow& row) {
    std::string out;
    for (const Metric m : kAllMetrics) {
        out += format_number(metric_value(row, m));
        out += ',';
    }
    out += row.physical ? "1" : "0";
    return out;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    const auto& spec = result.spec;
    bool first = true;
    const auto sep = [&] {
        if (!first) out << ',';
        first = false;
    };
    for (const auto& axis : spec.axes) {
        sep();
        out << to_string(axis.name);
    }
    for (const Metric m : spec.outputs) {
        sep();
        out << to_string(m);
    }
    sep();
    out << "stable,physical\n";
    for (const auto& point : result.grid) {
        first = true;
        for (const double v : point.axis_values) {
            sep();
            out << format_number(v);
        }
        for (const Metric m : spec.outputs) {
            sep();
            const double v = point.metrics ? metric_value(*point.metrics, m) : std::numeric_limits<double>::quiet_NaN();
            out << format_number(v);
        }
        sep();
        out << (point.stable ? '1' : '0') << ',';
        if (point.stable && point.metrics) {
            out << (point.physical ? '1' : '0');
        } else {
            out << "nan";
        }
        out << '\n';
    }
}

json sweep_to_json(const SweepResult& result) {
    const auto& spec = result.spec;
    json axes = json::array();
    for (const auto& axis : spec.axes) axes.push_back(axis_to_json(axis));
    json outputs = json::array();
    for (const Metric m : spec.outputs) outputs.push_back(to_string(m));

    json grid = json::array();
    for (const auto& point : result.grid) {
        json values = json::object();
        for (std::size_t k = 0; k < spec.axes.size() && k < point.axis_values.size(); ++k) {
            values[std::string(to_string(spec.axes[k].name))] = point.axis_values[k];
        }
        json metrics = nullptr;
        if (point.metrics) {
            metrics = json::object();
            for (const Metric m : spec.outputs) {
                metrics[std::string(to_string(m))] = number_or_null(metric_value(*point.metrics, m));
            }
        }
        grid.push_back({
            {"index", point.index},
            {"axis_values", values},
            {"stable", point.stable},
            {"marginal", point.marginal},
            {"note", point.note},
            {"metrics", metrics},
            {"physical", point.stable && point.metrics ? json(point.physical) : json(nullptr)},
        });
    }

    json optima = json::array();
    for (const auto& o : result.optima) {
        json values = json::object();
        for (std::size_t k = 0; k < spec.axes.size() && k < o.axis_values.size(); ++k) {
            values[std::string(to_string(spec.axes[k].name))] = o.axis_values[k];
        }
        optima.push_back({{"metric", to_string(o.metric)}, {"index", o.index}, {"axis_values", values},
                          {"value", o.value}});
    }

    return {
        {"spec",
         {{"name", spec.name},
          {"base", params_to_json(spec.base)},
          {"coupling_mode", spec.coupling_mode() == CouplingMode::powers ? "powers" : "direct"},
          {"axes", axes},
          {"outputs", outputs},
          {"primary_metric", to_string(spec.primary_metric)},
          {"unstable_policy", spec.unstable_policy == UnstablePolicy::mark ? "mark" : "skip"}}},
        {"grid", grid},
        {"optima", optima},
    };
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t_over_kappa,trace\n";
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out << format_number(trajectory.times[i]) << ',' << format_number(trajectory.traces[i]) << '\n';
    }
}

json snapshots_to_json(const Trajectory& trajectory) {
    json basis = json::array();
    for (const auto label : kQuadratureLabels) basis.push_back(label);
    json snaps = json::array();
    for (const auto& [t, m] : trajectory.snapshots) {
        json entries = json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(m(i, k));
        }
        snaps.push_back({{"t_over_kappa", t}, {"entries", entries}});
    }
    return {{"basis", basis}, {"snapshots", snaps}};
}

}  // namespace optosqueeze
