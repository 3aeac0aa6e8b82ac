#pragma once

#include "eqp/calibration.hpp"

#include <optional>
#include <string_view>

namespace eqp::fixtures {

struct HistoricalPeriod {
    std::string_view label;
    CalibrationTarget target;
};

/// Annual US statistics, 1889-1978: riskless real return, mean real S&P 500
/// return, and mean / standard deviation / serial correlation of real
/// per-capita consumption growth.
inline HistoricalPeriod period_1889_1978() {
    return {"1889-1978", CalibrationTarget{ConsumptionStats{0.0183, 0.0357, -0.14}, 0.008, 0.0698}};
}

/// Same statistics for 1960-2022.
inline HistoricalPeriod period_1960_2022() {
    return {"1960-2022", CalibrationTarget{ConsumptionStats{0.0194, 0.0158, 0.15}, 0.0097, 0.0733}};
}

/// Figure 1 uses the 1889-1978 statistics, figure 2 the 1960-2022 ones.
inline std::optional<HistoricalPeriod> figure(int id) {
    if (id == 1) return period_1889_1978();
    if (id == 2) return period_1960_2022();
    return std::nullopt;
}

}  // namespace eqp::fixtures
