#pragma once

#include "eqp/calibration.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqp::ingest {

/// One observation per calendar year, years strictly increasing.
struct AnnualSeries {
    std::vector<int> years;
    std::vector<double> values;
    std::string label;
    bool has_gaps = false;             ///< some year between front and back is missing
    std::size_t dropped_rows = 0;      ///< input rows skipped for a missing value
    std::vector<std::string> warnings;

    std::size_t size() const noexcept { return years.size(); }
    bool empty() const noexcept { return years.empty(); }
    std::optional<double> at(int year) const;

    /// Sorts by year, rejects duplicate years, and recomputes has_gaps.
    static AnnualSeries from_pairs(std::string label, std::vector<std::pair<int, double>> rows);
};

struct SummaryStats {
    double r_f_mean = 0.0;
    double r_e_mean = 0.0;
    double growth_mean = 0.0;
    double growth_stddev = 0.0;       ///< sample (n - 1) standard deviation
    double growth_serial_corr = 0.0;  ///< lag-1 autocorrelation
    int first_year = 0;
    int last_year = 0;
    std::size_t observations = 0;

    CalibrationTarget to_target() const;
};

/// Reads `year_column` and `value_column` from a headed CSV file. The year is
/// the leading four digits of the field, so FRED dates ("1960-04-01") work;
/// several rows in one year (quarterly, monthly, daily data) are averaged.
/// Empty, "." and "NA" values are dropped and counted.
AnnualSeries load_csv(const std::string& path, const std::string& year_column, const std::string& value_column);

/// Same as load_csv but reads from an in-memory document; `source` names it in errors.
AnnualSeries parse_csv(const std::string& text, const std::string& year_column, const std::string& value_column,
                       const std::string& source = "<memory>");

/// Multiplies every value by `factor` (e.g. 0.01 for percent data).
AnnualSeries scaled(AnnualSeries series, double factor);

/// Keeps observations with first <= year <= last.
AnnualSeries restricted(const AnnualSeries& series, int first, int last);

/// Growth of services + nondurables levels: level_t / level_{t-1} - 1.
AnnualSeries real_consumption_growth(const AnnualSeries& services, const AnnualSeries& nondurables);

/// Fisher relation (1 + nominal) / (1 + inflation) - 1, both as net rates.
AnnualSeries real_return_from_nominal(const AnnualSeries& nominal, const AnnualSeries& inflation);

/// (index_t + dividend_t) / index_{t-1} - 1 from real index levels and real dividends.
AnnualSeries real_equity_return(const AnnualSeries& index, const AnnualSeries& dividends);

/// Statistics over the years common to all three series.
SummaryStats summarize(const AnnualSeries& r_f, const AnnualSeries& r_e, const AnnualSeries& growth);

/// Input files of the riskless / equity / consumption pipeline.
struct PipelineInputs {
    std::string services;
    std::string nondurables;
    std::string inflation;
    std::string yield;
    std::string sp500;
    std::string year_column = "year";
    std::string value_column = "value";
    std::string index_column = "index";
    std::string dividend_column = "dividend";
    /// Inflation and yield are published in percent.
    bool rates_in_percent = true;
    int first_year = 1960;
    int last_year = 2022;
};

SummaryStats run_pipeline(const PipelineInputs& inputs);

}  // namespace eqp::ingest
