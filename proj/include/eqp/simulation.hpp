#pragma once

#include "eqp/model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace eqp {

/// Generator used for every path. Uniforms are (x >> 11) * 2^-53 so that a
/// path is reproducible from (seed, steps) alone, independent of the
/// standard library's distribution implementations.
inline constexpr const char* kSimulationGenerator = "mt19937_64; uniform = (x >> 11) * 2^-53";

struct SimulationStandardErrors {
    Eigen::VectorXd pi;
    double xi = 0.0;
    double delta = 0.0;
    double sigma_c = 0.0;
    double R_e = 0.0;
    double sigma_e = 0.0;
    double R_f = 0.0;
};

struct SimulationResult {
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::string generator = kSimulationGenerator;
    std::optional<Eigen::Index> initial_state;  ///< set only in fixed-start mode

    /// Occupancy of the departure state over the `steps` transitions.
    Eigen::VectorXd empirical_pi;
    /// Moments of the realised growth sequence (arrival states).
    ConsumptionStats empirical_stats;
    double empirical_R_e = 0.0;
    double empirical_sigma_e = 0.0;
    double empirical_R_f = 0.0;
    double empirical_sigma_f = 0.0;
    /// max - min of the realised bond return; zero when the bond is riskless.
    double bond_return_range = 0.0;

    /// i.i.d.-formula standard errors. The path is serially dependent, so
    /// these are approximate; the flag is always set.
    SimulationStandardErrors standard_errors;
    bool standard_errors_approximate = true;
};

struct SimulationOptions {
    /// Start from this state instead of drawing from pi.
    std::optional<Eigen::Index> initial_state;
};

/// Samples a state path from Phi and accumulates realised equity returns
/// r_e(s_t, s_t+1) and bond returns R_f_state(s_t) along it.
SimulationResult simulate(const MarkovEconomy& econ, const Preferences& prefs, std::uint64_t steps,
                          std::uint64_t seed, const SimulationOptions& options = {});

}  // namespace eqp
