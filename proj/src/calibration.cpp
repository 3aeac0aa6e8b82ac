#include "eqp/calibration.hpp"

#include "eqp/errors.hpp"

#include <cmath>

namespace eqp {

void CalibrationTarget::validate() const {
    stats.validate();
    if (!(r_f > -1.0) || !std::isfinite(r_f)) throw ValidationError("riskless return must exceed -1");
    if (r_e_actual && !std::isfinite(*r_e_actual)) throw ValidationError("actual equity return must be finite");
}

Calibration calibrate_two_state(const CalibrationTarget& target) {
    target.validate();
    const auto& s = target.stats;

    const double low = 1.0 + s.xi - s.delta;
    if (!(low > 0.0)) {
        throw ValidationError("contraction-state growth factor 1 + xi - delta is not positive", "infeasible_growth");
    }
    const double beta = 1.0 / (1.0 + target.r_f);
    if (!(beta <= 1.0)) {
        throw ValidationError("riskless return must be non-negative so that beta <= 1");
    }

    Eigen::VectorXd lambda(2);
    lambda << 1.0 + s.xi + s.delta, low;

    const double stay = (1.0 + s.sigma_c) / 2.0;
    Eigen::MatrixXd phi(2, 2);
    phi << stay, 1.0 - stay,
           1.0 - stay, stay;

    Eigen::VectorXd pi(2);
    pi << 0.5, 0.5;

    return Calibration{MarkovEconomy::create(std::move(phi), std::move(lambda), std::move(pi)), beta};
}

}  // namespace eqp
