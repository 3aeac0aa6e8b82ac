#pragma once

#include "eqp/model.hpp"

#include <optional>

namespace eqp {

/// Historical statistics to fit, all as net annual rates.
struct CalibrationTarget {
    ConsumptionStats stats;
    double r_f = 0.0;                   ///< riskless real return
    std::optional<double> r_e_actual;   ///< observed mean real equity return

    void validate() const;
};

struct Calibration {
    MarkovEconomy economy;
    double beta;
};

/// Symmetric two-state fit: pi = [1/2, 1/2], lambda = 1 + xi +/- delta,
/// Phi = [[phi, 1 - phi], [1 - phi, phi]] with phi = (1 + sigma_c) / 2, and
/// beta = 1 / (1 + r_f) so that a risk-neutral bond earns exactly r_f.
Calibration calibrate_two_state(const CalibrationTarget& target);

}  // namespace eqp
