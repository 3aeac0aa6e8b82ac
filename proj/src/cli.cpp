#include "eqp/cli.hpp"

#include "eqp/calibration.hpp"
#include "eqp/errors.hpp"
#include "eqp/fixtures.hpp"
#include "eqp/frontier.hpp"
#include "eqp/ingest.hpp"
#include "eqp/pricing.hpp"
#include "eqp/serialization.hpp"
#include "eqp/simulation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace eqp::cli {

namespace {

struct TargetFlags {
    std::optional<double> mean;
    std::optional<double> stddev;
    std::optional<double> serial_corr;
    std::optional<double> risk_free;
    std::optional<double> actual_return;
    std::optional<std::string> target_file;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--mean", mean, "Mean real consumption growth (net rate)");
        cmd->add_option("--stddev", stddev, "Standard deviation of real consumption growth");
        cmd->add_option("--serial-corr", serial_corr, "Lag-1 serial correlation of consumption growth");
        cmd->add_option("--risk-free", risk_free, "Riskless real return (net rate)");
        cmd->add_option("--actual-equity-return,--actual-return", actual_return,
                        "Observed mean real equity return to match");
        cmd->add_option("--target-file", target_file, "JSON target document (e.g. output of `stats`)");
    }

    bool any() const { return mean || stddev || serial_corr || risk_free || target_file; }

    CalibrationTarget resolve() const {
        CalibrationTarget t;
        bool have_mean = false, have_sd = false, have_corr = false, have_rf = false;
        if (target_file) {
            t = target_from_json(read_json_file(*target_file));
            have_mean = have_sd = have_corr = have_rf = true;
        }
        if (stddev) {
            if (!(*stddev > 0.0)) throw ValidationError("--stddev must be positive", "infeasible_growth");
            t.stats.delta = *stddev;
            have_sd = true;
        }
        if (serial_corr) {
            t.stats.sigma_c = *serial_corr;
            have_corr = true;
        }
        if (mean) {
            t.stats.xi = *mean;
            have_mean = true;
        }
        if (risk_free) {
            t.r_f = *risk_free;
            have_rf = true;
        }
        if (actual_return) t.r_e_actual = *actual_return;

        std::string missing;
        if (!have_mean) missing += " --mean";
        if (!have_sd) missing += " --stddev";
        if (!have_corr) missing += " --serial-corr";
        if (!have_rf) missing += " --risk-free";
        if (!missing.empty()) throw ValidationError("missing calibration input(s):" + missing);
        return t;
    }
};

struct SweepFlags {
    double alpha_min = 0.0;
    double alpha_max = 12.0;
    double step = 0.01;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--alpha-min", alpha_min, "Lower end of the alpha_e sweep")->capture_default_str();
        cmd->add_option("--alpha-max", alpha_max, "Upper end of the alpha_e sweep")->capture_default_str();
        cmd->add_option("--step", step, "Grid spacing of the sweep")->capture_default_str();
    }

    SweepOptions options() const { return SweepOptions{alpha_min, alpha_max, step}; }
};

/// Economy, discount factor and preferences, from a file or a calibration.
struct Setup {
    MarkovEconomy economy;
    double beta;
    double alpha_f;
    std::optional<double> alpha_e;
    std::optional<double> actual_return;
    std::string label;
};

Setup resolve_setup(const std::optional<std::string>& economy_file, const TargetFlags& target) {
    if (economy_file) {
        if (target.any()) throw ValidationError("give either --economy-file or calibration inputs, not both");
        EconomyDocument doc = economy_from_json(read_json_file(*economy_file));
        if (!doc.beta) throw ValidationError("economy file has no 'beta'", "schema");
        return Setup{std::move(doc.economy), *doc.beta, doc.alpha_f.value_or(0.0), doc.alpha_e, target.actual_return,
                     *economy_file};
    }
    const CalibrationTarget t = target.resolve();
    Calibration cal = calibrate_two_state(t);
    return Setup{std::move(cal.economy), cal.beta, 0.0, std::nullopt, t.r_e_actual, "calibrated"};
}

double riskless_return(const Setup& s) {
    return bond_returns(s.economy, bond_prices(s.economy, s.alpha_f, s.beta)).R_f;
}

struct FrontierReport {
    json summary;
    std::string csv;
};

/// With `match_required` an unattainable actual return is an error; otherwise
/// it is reported as a warning and a null match.
FrontierReport frontier_report(const Setup& s, const SweepOptions& sweep, std::ostream& err, bool match_required) {
    const double R_f = riskless_return(s);
    const FrontierCurve curve = sweep_frontier(s.economy, s.beta, R_f, sweep);
    const TangencyResult tangency = find_tangency(curve, R_f);
    if (tangency.boundary_warning) {
        err << "warning: maximum return on volatility lies at the edge of the swept range; "
               "the optimum may be outside it\n";
    }

    json summary;
    summary["source"] = s.label;
    summary["beta"] = round_significant(s.beta);
    summary["R_f"] = round_significant(R_f);
    summary["alpha_star"] = round_significant(tangency.alpha_star);
    summary["R_star"] = round_significant(tangency.R_star);
    summary["sigma_star"] = round_significant(tangency.sigma_star);
    summary["tangency"] = to_json(tangency);
    summary["sweep"] = {{"alpha_min", sweep.alpha_lo},
                        {"alpha_max", sweep.alpha_hi},
                        {"step", sweep.step},
                        {"points", curve.points.size()},
                        {"infeasible", curve.infeasible.size()}};
    if (!curve.infeasible.empty()) {
        summary["sweep"]["infeasible_alpha_max"] = round_significant(curve.infeasible.back());
    }
    if (s.actual_return) {
        summary["actual_return"] = round_significant(*s.actual_return);
        try {
            const ReturnMatch match = match_actual_return(s.economy, s.beta, *s.actual_return, sweep);
            summary["matched_alpha"] = round_significant(match.alpha_e);
            summary["matched"] = {{"alpha_e", round_significant(match.alpha_e)},
                                  {"R_e", round_significant(match.R_e)},
                                  {"multiple_roots", match.multiple_roots}};
            if (match.multiple_roots) err << "warning: target return is reached at more than one alpha_e\n";
        } catch (const NumericalError& e) {
            if (match_required) throw;
            err << "warning: " << e.what() << '\n';
            summary["matched_alpha"] = nullptr;
            summary["matched"] = nullptr;
        }
    } else {
        summary["matched_alpha"] = nullptr;
    }
    return FrontierReport{std::move(summary), curve_to_csv(curve, R_f)};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot write '" + path + "'");
    file << text;
    if (!file) throw IoError("failed writing '" + path + "'");
}

int exit_code_for(ErrorClass c) {
    switch (c) {
        case ErrorClass::validation: return kValidation;
        case ErrorClass::numerical: return kNumerical;
        case ErrorClass::io: return kIo;
    }
    return kValidation;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    json j;
    j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    err << j.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-state Markov consumption economy: calibration, asset pricing and return-on-volatility frontier",
                 "eqp"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> output_path;
    std::string format = "json";
    app.add_option("--output", output_path, "Write the artifact here instead of standard output");
    app.add_option("--format", format, "Artifact format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    // calibrate
    TargetFlags cal_target;
    auto* calibrate = app.add_subcommand("calibrate", "Fit the symmetric two-state economy to consumption statistics");
    cal_target.add_to(calibrate);

    // frontier
    TargetFlags fr_target;
    SweepFlags fr_sweep;
    std::optional<std::string> fr_economy;
    std::optional<std::string> fr_curve;
    auto* frontier = app.add_subcommand("frontier", "Sweep alpha_e, locate the tangency and match the actual return");
    fr_target.add_to(frontier);
    fr_sweep.add_to(frontier);
    frontier->add_option("--economy-file", fr_economy, "Economy JSON (n, phi, lambda, pi, alpha_f, beta)");
    frontier->add_option("--curve", fr_curve, "Also write the curve CSV to this file");

    // simulate
    TargetFlags sim_target;
    std::optional<std::string> sim_economy;
    std::optional<double> sim_alpha_e;
    std::optional<double> sim_alpha_f;
    long long sim_steps = 1'000'000;
    std::uint64_t sim_seed = 20231119;
    int sim_replications = 1;
    std::optional<int> sim_initial;
    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo path statistics versus the analytic solution");
    sim_target.add_to(simulate_cmd);
    simulate_cmd->add_option("--economy-file", sim_economy, "Economy JSON");
    simulate_cmd->add_option("--alpha-e", sim_alpha_e, "Equity risk-aversion coefficient");
    simulate_cmd->add_option("--alpha-f", sim_alpha_f, "Bond risk-aversion coefficient (default 0)");
    simulate_cmd->add_option("--steps", sim_steps, "Path length")->capture_default_str();
    simulate_cmd->add_option("--seed", sim_seed, "Generator seed")->capture_default_str();
    simulate_cmd->add_option("--replications", sim_replications, "Independent paths with seeds seed, seed+1, ...")
        ->capture_default_str();
    simulate_cmd->add_option("--initial-state", sim_initial, "Start every path in this state instead of drawing from pi");

    // stats
    ingest::PipelineInputs stats_in;
    std::string rates_unit = "percent";
    auto* stats = app.add_subcommand("stats", "Summary statistics from annual/quarterly CSV series");
    stats->add_option("--services", stats_in.services, "Real per-capita PCE: services")->required();
    stats->add_option("--nondurables", stats_in.nondurables, "Real per-capita PCE: nondurable goods")->required();
    stats->add_option("--inflation", stats_in.inflation, "Consumer price inflation")->required();
    stats->add_option("--yield", stats_in.yield, "1-year Treasury constant-maturity yield")->required();
    stats->add_option("--sp500", stats_in.sp500, "Real S&P 500 index and dividends")->required();
    stats->add_option("--from", stats_in.first_year, "First year")->capture_default_str();
    stats->add_option("--to", stats_in.last_year, "Last year")->capture_default_str();
    stats->add_option("--year-col", stats_in.year_column, "Year/date column name")->capture_default_str();
    stats->add_option("--value-col", stats_in.value_column, "Value column name")->capture_default_str();
    stats->add_option("--index-col", stats_in.index_column, "S&P index column name")->capture_default_str();
    stats->add_option("--dividend-col", stats_in.dividend_column, "S&P dividend column name")->capture_default_str();
    stats->add_option("--rates-unit", rates_unit, "Unit of the inflation and yield files")
        ->check(CLI::IsMember({"percent", "fraction"}))
        ->capture_default_str();

    // reproduce
    int figure_id = 0;
    SweepFlags rep_sweep;
    std::optional<std::string> rep_curve;
    auto* reproduce = app.add_subcommand("reproduce", "Regenerate figure data from the bundled historical statistics");
    reproduce->add_option("--figure", figure_id, "Figure number (1: 1889-1978, 2: 1960-2022)")->required();
    rep_sweep.add_to(reproduce);
    reproduce->add_option("--curve", rep_curve, "Also write the curve CSV to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what(), kValidation);
        return kValidation;
    }

    try {
        std::string artifact;
        auto json_only = [&](const char* cmd) {
            if (format != "json") throw ValidationError(std::string(cmd) + " only produces JSON");
        };

        if (*calibrate) {
            json_only("calibrate");
            const CalibrationTarget t = cal_target.resolve();
            const Calibration cal = calibrate_two_state(t);
            json doc = to_json(EconomyDocument{cal.economy, std::nullopt, 0.0, cal.beta});
            doc["target"] = to_json(t);
            artifact = dump(doc) + "\n";
        } else if (*frontier) {
            const Setup s = resolve_setup(fr_economy, fr_target);
            const FrontierReport rep = frontier_report(s, fr_sweep.options(), err, true);
            if (fr_curve) write_file(*fr_curve, rep.csv);
            artifact = format == "csv" ? rep.csv : dump(rep.summary) + "\n";
        } else if (*simulate_cmd) {
            json_only("simulate");
            if (sim_steps < 1) throw ValidationError("--steps must be at least 1");
            if (sim_replications < 1) throw ValidationError("--replications must be at least 1");
            Setup s = resolve_setup(sim_economy, sim_target);
            if (sim_alpha_e) s.alpha_e = *sim_alpha_e;
            if (sim_alpha_f) s.alpha_f = *sim_alpha_f;
            if (!s.alpha_e) throw ValidationError("simulate needs --alpha-e (or alpha_e in the economy file)");
            const Preferences prefs{*s.alpha_e, s.alpha_f, s.beta};
            SimulationOptions opts;
            if (sim_initial) opts.initial_state = *sim_initial;

            const PricingSolution analytic = price(s.economy, prefs);
            json doc;
            doc["alpha_e"] = round_significant(prefs.alpha_e);
            doc["alpha_f"] = round_significant(prefs.alpha_f);
            doc["beta"] = round_significant(prefs.beta);
            doc["analytic"] = to_json(analytic);
            doc["analytic"]["pi"] = to_json(EconomyDocument{s.economy, {}, {}, {}})["pi"];
            const ConsumptionStats m = consumption_moments(s.economy);
            doc["analytic"]["stats"] = {{"xi", round_significant(m.xi)},
                                        {"delta", round_significant(m.delta)},
                                        {"sigma_c", round_significant(m.sigma_c)}};
            json runs = json::array();
            for (int r = 0; r < sim_replications; ++r) {
                runs.push_back(to_json(simulate(s.economy, prefs, static_cast<std::uint64_t>(sim_steps),
                                                sim_seed + static_cast<std::uint64_t>(r), opts)));
            }
            doc["replications"] = std::move(runs);
            artifact = dump(doc) + "\n";
        } else if (*stats) {
            json_only("stats");
            stats_in.rates_in_percent = rates_unit == "percent";
            const ingest::SummaryStats summary = ingest::run_pipeline(stats_in);
            json doc;
            doc["summary"] = to_json(summary);
            doc["target"] = to_json(summary.to_target());
            artifact = dump(doc) + "\n";
        } else if (*reproduce) {
            const auto period = fixtures::figure(figure_id);
            if (!period) {
                throw ValidationError("unknown figure " + std::to_string(figure_id) + " (expected 1 or 2)", "unknown_figure");
            }
            Calibration cal = calibrate_two_state(period->target);
            const Setup s{std::move(cal.economy), cal.beta, 0.0, std::nullopt, period->target.r_e_actual,
                          std::string(period->label)};
            FrontierReport rep = frontier_report(s, rep_sweep.options(), err, false);
            rep.summary["figure"] = figure_id;
            rep.summary["period"] = std::string(period->label);
            if (rep_curve) write_file(*rep_curve, rep.csv);
            artifact = format == "csv" ? rep.csv : dump(rep.summary) + "\n";
        }

        if (output_path) {
            write_file(*output_path, artifact);
        } else {
            out << artifact;
        }
        return kSuccess;
    } catch (const Error& e) {
        const int code = exit_code_for(e.error_class());
        report_error(err, e.kind(), e.what(), code);
        return code;
    } catch (const json::exception& e) {
        report_error(err, "schema", e.what(), kValidation);
        return kValidation;
    }
}

}  // namespace eqp::cli
