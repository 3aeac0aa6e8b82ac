#include "eqp/serialization.hpp"

#include "eqp/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eqp {

namespace {

json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_significant(v);
}

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) {
        throw ValidationError(std::string("document is missing field '") + name + "'", "schema");
    }
    return j.at(name);
}

double number_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number()) throw ValidationError(std::string("field '") + name + "' must be a number", "schema");
    return v.get<double>();
}

std::optional<double> optional_number(const json& j, const char* name) {
    if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
    return number_field(j, name);
}

Eigen::VectorXd vector_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_array()) throw ValidationError(std::string("field '") + name + "' must be an array", "schema");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ValidationError(std::string("field '") + name + "' must hold numbers", "schema");
        out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
    }
    return out;
}

}  // namespace

double round_significant(double value, int digits) {
    if (!std::isfinite(value) || value == 0.0) return value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

json to_json(const EconomyDocument& doc) {
    const auto& e = doc.economy;
    json j;
    j["n"] = e.n();
    j["phi"] = matrix_json(e.phi());
    j["lambda"] = vector_json(e.lambda());
    j["pi"] = vector_json(e.pi());
    if (doc.alpha_e) j["alpha_e"] = number(*doc.alpha_e);
    if (doc.alpha_f) j["alpha_f"] = number(*doc.alpha_f);
    if (doc.beta) j["beta"] = number(*doc.beta);
    return j;
}

EconomyDocument economy_from_json(const json& j) {
    const json& phi_json = field(j, "phi");
    if (!phi_json.is_array() || phi_json.empty()) throw ValidationError("field 'phi' must be a non-empty array of rows", "schema");
    const auto n = static_cast<Eigen::Index>(phi_json.size());
    if (j.contains("n") && (!j.at("n").is_number_integer() || j.at("n").get<Eigen::Index>() != n)) {
        throw ValidationError("field 'n' disagrees with the number of rows in 'phi'", "schema");
    }
    Eigen::MatrixXd phi(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = phi_json[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ValidationError("'phi' must be a square matrix", "schema");
        }
        for (Eigen::Index k = 0; k < n; ++k) {
            const json& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) throw ValidationError("'phi' must hold numbers", "schema");
            phi(i, k) = v.get<double>();
        }
    }
    Eigen::VectorXd lambda = vector_field(j, "lambda");
    std::optional<Eigen::VectorXd> pi;
    if (j.contains("pi") && !j.at("pi").is_null()) pi = vector_field(j, "pi");

    return EconomyDocument{MarkovEconomy::create(std::move(phi), std::move(lambda), std::move(pi)),
                           optional_number(j, "alpha_e"), optional_number(j, "alpha_f"), optional_number(j, "beta")};
}

json to_json(const PricingSolution& s) {
    json j;
    j["w"] = vector_json(s.w);
    j["r_e"] = matrix_json(s.r_e);
    j["R_e_state"] = vector_json(s.R_e_state);
    j["R_e"] = number(s.R_e);
    j["sigma_e"] = number(s.sigma_e);
    j["p_f"] = vector_json(s.p_f);
    j["R_f_state"] = vector_json(s.R_f_state);
    j["R_f"] = number(s.R_f);
    return j;
}

json to_json(const TangencyResult& t) {
    json j;
    j["alpha_star"] = number(t.alpha_star);
    j["sigma_star"] = number(t.sigma_star);
    j["R_star"] = number(t.R_star);
    j["sharpe"] = number(t.sharpe);
    j["tangency_residual"] = number(t.tangency_residual);
    j["relative_residual"] = number(t.relative_residual);
    j["boundary_warning"] = t.boundary_warning;
    j["refined"] = t.refined;
    return j;
}

json to_json(const SimulationResult& r) {
    json j;
    j["steps"] = r.steps;
    j["seed"] = r.seed;
    j["generator"] = r.generator;
    j["initial_state"] = r.initial_state ? json(*r.initial_state) : json(nullptr);
    j["empirical_pi"] = vector_json(r.empirical_pi);
    j["empirical_stats"] = {{"xi", number(r.empirical_stats.xi)},
                            {"delta", number(r.empirical_stats.delta)},
                            {"sigma_c", number(r.empirical_stats.sigma_c)}};
    j["empirical_R_e"] = number(r.empirical_R_e);
    j["empirical_sigma_e"] = number(r.empirical_sigma_e);
    j["empirical_R_f"] = number(r.empirical_R_f);
    j["empirical_sigma_f"] = number(r.empirical_sigma_f);
    j["bond_return_range"] = number(r.bond_return_range);
    const auto& se = r.standard_errors;
    j["standard_errors"] = {{"pi", vector_json(se.pi)},   {"xi", number(se.xi)},
                            {"delta", number(se.delta)}, {"sigma_c", number(se.sigma_c)},
                            {"R_e", number(se.R_e)},     {"sigma_e", number(se.sigma_e)},
                            {"R_f", number(se.R_f)}};
    j["standard_errors_approximate"] = r.standard_errors_approximate;
    return j;
}

json to_json(const ingest::SummaryStats& s) {
    json j;
    j["r_f_mean"] = number(s.r_f_mean);
    j["r_e_mean"] = number(s.r_e_mean);
    j["growth_mean"] = number(s.growth_mean);
    j["growth_stddev"] = number(s.growth_stddev);
    j["growth_serial_corr"] = number(s.growth_serial_corr);
    j["first_year"] = s.first_year;
    j["last_year"] = s.last_year;
    j["observations"] = s.observations;
    return j;
}

json to_json(const CalibrationTarget& t) {
    json j;
    j["mean"] = number(t.stats.xi);
    j["stddev"] = number(t.stats.delta);
    j["serial_corr"] = number(t.stats.sigma_c);
    j["risk_free"] = number(t.r_f);
    j["actual_equity_return"] = t.r_e_actual ? number(*t.r_e_actual) : json(nullptr);
    return j;
}

CalibrationTarget target_from_json(const json& j) {
    const json& doc = (j.is_object() && j.contains("target")) ? j.at("target") : j;
    CalibrationTarget t;
    t.stats.xi = number_field(doc, "mean");
    t.stats.delta = number_field(doc, "stddev");
    t.stats.sigma_c = number_field(doc, "serial_corr");
    t.r_f = number_field(doc, "risk_free");
    t.r_e_actual = optional_number(doc, "actual_equity_return");
    return t;
}

std::string curve_to_csv(const FrontierCurve& curve, double R_f) {
    std::ostringstream out;
    out << "alpha_e,sigma_e,R_e,sharpe\n";
    for (const auto& p : curve.points) {
        out << format_number(p.alpha_e) << ',' << format_number(p.sigma_e) << ',' << format_number(p.R_e) << ','
            << format_number((p.R_e - R_f) / p.sigma_e) << '\n';
    }
    return out.str();
}

namespace {

void dump_into(std::string& out, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_number(v) : "null";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dump_into(out, item, indent, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + json(key).dump() + ": ";
                dump_into(out, value, indent, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

std::string dump(const json& j, int indent) {
    std::string out;
    dump_into(out, j, indent, 0);
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open '" + path + "'");
    try {
        return json::parse(file);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what(), "parse");
    }
}

}  // namespace eqp
