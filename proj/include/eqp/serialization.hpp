#pragma once

#include "eqp/calibration.hpp"
#include "eqp/frontier.hpp"
#include "eqp/ingest.hpp"
#include "eqp/model.hpp"
#include "eqp/pricing.hpp"
#include "eqp/simulation.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace eqp {

using json = nlohmann::ordered_json;

/// Rounds to `digits` significant decimal digits; serialised numbers all go
/// through this so output from different builds diffs cleanly.
double round_significant(double value, int digits = 10);

/// `%.10g` rendering used in CSV output.
std::string format_number(double value);

/// Economy plus whichever preference fields are known. Field names: n, phi,
/// lambda, pi (optional on input), alpha_e, alpha_f, beta.
struct EconomyDocument {
    MarkovEconomy economy;
    std::optional<double> alpha_e;
    std::optional<double> alpha_f;
    std::optional<double> beta;
};

json to_json(const EconomyDocument& doc);
EconomyDocument economy_from_json(const json& j);

json to_json(const PricingSolution& sol);
json to_json(const TangencyResult& t);
json to_json(const SimulationResult& r);
json to_json(const ingest::SummaryStats& s);

/// Target document: mean, stddev, serial_corr, risk_free, actual_equity_return.
json to_json(const CalibrationTarget& t);
/// Accepts a bare target document or any document holding one under "target".
CalibrationTarget target_from_json(const json& j);

/// Header `alpha_e,sigma_e,R_e,sharpe`, one row per curve point.
std::string curve_to_csv(const FrontierCurve& curve, double R_f);

/// Pretty-prints `j` with every floating-point number rendered by
/// format_number (non-finite values become null).
std::string dump(const json& j, int indent = 2);

json read_json_file(const std::string& path);

}  // namespace eqp
