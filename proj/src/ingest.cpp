#include "eqp/ingest.hpp"

#include "eqp/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace eqp::ingest {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == ',' && !quoted) {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    fields.push_back(trim(current));
    return fields;
}

bool is_missing(const std::string& field) {
    return field.empty() || field == "." || field == "NA" || field == "N/A" || field == "#N/A";
}

std::optional<double> parse_number(const std::string& field) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<int> parse_year(const std::string& field) {
    if (field.size() < 4) return std::nullopt;
    int year = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + 4, year);
    if (ec != std::errc() || ptr != field.data() + 4) return std::nullopt;
    if (field.size() > 4 && std::isdigit(static_cast<unsigned char>(field[4]))) return std::nullopt;
    return year;
}

AnnualSeries canonical(const AnnualSeries& s) {
    std::vector<std::pair<int, double>> rows;
    rows.reserve(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) rows.emplace_back(s.years[k], s.values[k]);
    AnnualSeries out = AnnualSeries::from_pairs(s.label, std::move(rows));
    out.dropped_rows = s.dropped_rows;
    out.warnings = s.warnings;
    return out;
}

std::vector<int> common_years(std::initializer_list<const AnnualSeries*> series) {
    std::vector<int> years = (*series.begin())->years;
    std::sort(years.begin(), years.end());
    for (const AnnualSeries* s : series) {
        std::vector<int> other = s->years;
        std::sort(other.begin(), other.end());
        std::vector<int> both;
        std::set_intersection(years.begin(), years.end(), other.begin(), other.end(), std::back_inserter(both));
        years = std::move(both);
    }
    return years;
}

[[noreturn]] void span_error(const std::string& message) { throw ValidationError(message, "span"); }

}  // namespace

std::optional<double> AnnualSeries::at(int year) const {
    const auto it = std::lower_bound(years.begin(), years.end(), year);
    if (it == years.end() || *it != year) return std::nullopt;
    return values[static_cast<std::size_t>(it - years.begin())];
}

AnnualSeries AnnualSeries::from_pairs(std::string label, std::vector<std::pair<int, double>> rows) {
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    AnnualSeries s;
    s.label = std::move(label);
    for (const auto& [year, value] : rows) {
        if (!s.years.empty() && s.years.back() == year) {
            throw ValidationError("series '" + s.label + "' has duplicate year " + std::to_string(year));
        }
        if (!s.years.empty() && year != s.years.back() + 1) s.has_gaps = true;
        s.years.push_back(year);
        s.values.push_back(value);
    }
    return s;
}

AnnualSeries parse_csv(const std::string& text, const std::string& year_column, const std::string& value_column,
                       const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty() && trim(line)[0] != '#') {
            header = split_row(line);
            break;
        }
    }
    if (header.empty()) throw ValidationError(source + ": no header row", "schema");

    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ValidationError(source + ": missing column '" + name + "'", "schema");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t year_idx = column(year_column);
    const std::size_t value_idx = column(value_column);

    std::map<int, std::pair<double, int>> sums;
    std::size_t dropped = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto fields = split_row(line);
        const std::string where = source + ":" + std::to_string(line_no);
        if (fields.size() <= std::max(year_idx, value_idx)) {
            throw ValidationError(where + ": row has too few fields", "parse");
        }
        const auto year = parse_year(fields[year_idx]);
        if (!year) throw ValidationError(where + ": cannot read a year from '" + fields[year_idx] + "'", "parse");
        if (is_missing(fields[value_idx])) {
            ++dropped;
            continue;
        }
        const auto value = parse_number(fields[value_idx]);
        if (!value) throw ValidationError(where + ": '" + fields[value_idx] + "' is not a number", "parse");
        auto& [sum, count] = sums[*year];
        sum += *value;
        ++count;
    }

    std::vector<std::pair<int, double>> rows;
    for (const auto& [year, acc] : sums) rows.emplace_back(year, acc.first / acc.second);
    AnnualSeries s = AnnualSeries::from_pairs(value_column, std::move(rows));
    s.dropped_rows = dropped;
    if (dropped > 0) s.warnings.push_back(std::to_string(dropped) + " row(s) with missing values dropped from " + source);
    if (s.has_gaps) s.warnings.push_back(source + ": series has missing years");
    return s;
}

AnnualSeries load_csv(const std::string& path, const std::string& year_column, const std::string& value_column) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    AnnualSeries s = parse_csv(buffer.str(), year_column, value_column, path);
    s.label = path + ":" + value_column;
    return s;
}

AnnualSeries scaled(AnnualSeries series, double factor) {
    for (double& v : series.values) v *= factor;
    return series;
}

AnnualSeries restricted(const AnnualSeries& series, int first, int last) {
    AnnualSeries out;
    out.label = series.label;
    out.dropped_rows = series.dropped_rows;
    out.warnings = series.warnings;
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (series.years[k] < first || series.years[k] > last) continue;
        if (!out.years.empty() && series.years[k] != out.years.back() + 1) out.has_gaps = true;
        out.years.push_back(series.years[k]);
        out.values.push_back(series.values[k]);
    }
    return out;
}

AnnualSeries real_consumption_growth(const AnnualSeries& services_in, const AnnualSeries& nondurables_in) {
    const AnnualSeries services = canonical(services_in);
    const AnnualSeries nondurables = canonical(nondurables_in);
    const std::vector<int> years = common_years({&services, &nondurables});
    if (years.empty()) span_error("services and nondurables series do not overlap");

    std::vector<std::pair<int, double>> rows;
    for (std::size_t k = 1; k < years.size(); ++k) {
        if (years[k] != years[k - 1] + 1) continue;
        const double prev = *services.at(years[k - 1]) + *nondurables.at(years[k - 1]);
        const double curr = *services.at(years[k]) + *nondurables.at(years[k]);
        if (!(prev > 0.0)) throw ValidationError("consumption level must be positive", "domain");
        rows.emplace_back(years[k], curr / prev - 1.0);
    }
    AnnualSeries out = AnnualSeries::from_pairs("real consumption growth", std::move(rows));
    if (out.empty()) out.warnings.push_back("fewer than two overlapping years; growth series is empty");
    return out;
}

AnnualSeries real_return_from_nominal(const AnnualSeries& nominal_in, const AnnualSeries& inflation_in) {
    const AnnualSeries nominal = canonical(nominal_in);
    const AnnualSeries inflation = canonical(inflation_in);
    const std::vector<int> years = common_years({&nominal, &inflation});
    if (years.empty()) span_error("nominal and inflation series do not overlap");

    std::vector<std::pair<int, double>> rows;
    for (int year : years) {
        const double infl = *inflation.at(year);
        if (!(infl > -1.0)) throw ValidationError("inflation rate must exceed -1 in " + std::to_string(year), "domain");
        rows.emplace_back(year, (1.0 + *nominal.at(year)) / (1.0 + infl) - 1.0);
    }
    return AnnualSeries::from_pairs("real " + nominal.label, std::move(rows));
}

AnnualSeries real_equity_return(const AnnualSeries& index_in, const AnnualSeries& dividends_in) {
    const AnnualSeries index = canonical(index_in);
    const AnnualSeries dividends = canonical(dividends_in);
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (!(index.values[k] > 0.0)) {
            throw ValidationError("index level must be positive in " + std::to_string(index.years[k]), "domain");
        }
    }
    std::vector<std::pair<int, double>> rows;
    for (std::size_t k = 1; k < index.size(); ++k) {
        const int year = index.years[k];
        if (index.years[k - 1] != year - 1) continue;
        const auto dividend = dividends.at(year);
        if (!dividend) continue;
        rows.emplace_back(year, (index.values[k] + *dividend) / index.values[k - 1] - 1.0);
    }
    AnnualSeries out = AnnualSeries::from_pairs("real equity return", std::move(rows));
    if (out.empty()) out.warnings.push_back("fewer than two consecutive index years; return series is empty");
    return out;
}

SummaryStats summarize(const AnnualSeries& r_f_in, const AnnualSeries& r_e_in, const AnnualSeries& growth_in) {
    const AnnualSeries r_f = canonical(r_f_in);
    const AnnualSeries r_e = canonical(r_e_in);
    const AnnualSeries growth = canonical(growth_in);
    if (r_f.empty() || r_e.empty() || growth.empty()) span_error("summary needs three non-empty series");

    const std::vector<int> years = common_years({&r_f, &r_e, &growth});
    if (years.size() < 3) span_error("summary needs at least three common years, found " + std::to_string(years.size()));

    const double count = static_cast<double>(years.size());
    SummaryStats s;
    s.first_year = years.front();
    s.last_year = years.back();
    s.observations = years.size();

    std::vector<double> g;
    for (int year : years) {
        s.r_f_mean += *r_f.at(year);
        s.r_e_mean += *r_e.at(year);
        g.push_back(*growth.at(year));
    }
    s.r_f_mean /= count;
    s.r_e_mean /= count;

    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= count;
    double ss = 0.0;
    double lag = 0.0;
    for (std::size_t t = 0; t < g.size(); ++t) {
        ss += (g[t] - mean) * (g[t] - mean);
        if (t + 1 < g.size()) lag += (g[t] - mean) * (g[t + 1] - mean);
    }
    if (ss == 0.0) span_error("growth series is constant; serial correlation is undefined");
    s.growth_mean = mean;
    s.growth_stddev = std::sqrt(ss / (count - 1.0));
    s.growth_serial_corr = lag / ss;
    return s;
}

CalibrationTarget SummaryStats::to_target() const {
    CalibrationTarget t;
    t.stats = ConsumptionStats{growth_mean, growth_stddev, growth_serial_corr};
    t.r_f = r_f_mean;
    t.r_e_actual = r_e_mean;
    return t;
}

SummaryStats run_pipeline(const PipelineInputs& in) {
    const double rate_scale = in.rates_in_percent ? 0.01 : 1.0;
    const AnnualSeries services = load_csv(in.services, in.year_column, in.value_column);
    const AnnualSeries nondurables = load_csv(in.nondurables, in.year_column, in.value_column);
    const AnnualSeries inflation = scaled(load_csv(in.inflation, in.year_column, in.value_column), rate_scale);
    const AnnualSeries yield = scaled(load_csv(in.yield, in.year_column, in.value_column), rate_scale);
    const AnnualSeries index = load_csv(in.sp500, in.year_column, in.index_column);
    const AnnualSeries dividends = load_csv(in.sp500, in.year_column, in.dividend_column);

    const auto growth = restricted(real_consumption_growth(services, nondurables), in.first_year, in.last_year);
    const auto r_f = restricted(real_return_from_nominal(yield, inflation), in.first_year, in.last_year);
    const auto r_e = restricted(real_equity_return(index, dividends), in.first_year, in.last_year);
    return summarize(r_f, r_e, growth);
}

}  // namespace eqp::ingest
