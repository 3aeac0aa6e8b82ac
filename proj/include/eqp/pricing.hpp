#pragma once

#include "eqp/model.hpp"

#include <Eigen/Dense>

namespace eqp {

/// Everything the model says about one (economy, preferences) pair.
struct PricingSolution {
    Eigen::VectorXd w;          ///< equity price-dividend ratio per state
    Eigen::MatrixXd r_e;        ///< r_e(i, j): equity return on the i -> j transition
    Eigen::VectorXd R_e_state;  ///< expected equity return conditional on state i
    double R_e = 0.0;           ///< unconditional expected equity return
    double sigma_e = 0.0;       ///< standard deviation of the equity return
    Eigen::VectorXd p_f;        ///< one-period bond price per state
    Eigen::VectorXd R_f_state;  ///< bond return per state
    double R_f = 0.0;           ///< unconditional bond return
};

struct EquityReturns {
    Eigen::MatrixXd r_e;
    Eigen::VectorXd R_e_state;
    double R_e = 0.0;
};

struct BondReturns {
    Eigen::VectorXd R_f_state;
    double R_f = 0.0;
};

/// Solves w_i = beta * sum_j Phi_ij lambda_j^(1 - alpha_e) (w_j + 1) as a
/// dense linear system. Throws NoEquilibriumError when the system is
/// singular or a price comes out non-positive; the error carries
/// beta * rho(A) as a diagnostic.
Eigen::VectorXd solve_equity_prices(const MarkovEconomy& econ, double alpha_e, double beta);

/// Per-transition, per-state and total expected equity returns.
EquityReturns equity_returns(const MarkovEconomy& econ, const Eigen::VectorXd& w);

/// sqrt(sum_ij pi_i Phi_ij (r_e(i, j) - R_e)^2)
double equity_return_stdev(const MarkovEconomy& econ, const Eigen::MatrixXd& r_e, double R_e);

/// p_f(i) = beta * sum_j Phi_ij lambda_j^(-alpha_f)
Eigen::VectorXd bond_prices(const MarkovEconomy& econ, double alpha_f, double beta);

BondReturns bond_returns(const MarkovEconomy& econ, const Eigen::VectorXd& p_f);

/// Stationary variance of the bond return, written as the pairwise form
/// 1/2 sum_ij pi_i pi_j (R_i - R_j)^2 so that equal per-state returns give
/// exactly zero.
double bond_return_variance(const MarkovEconomy& econ, const Eigen::VectorXd& R_f_state);

/// beta * rho(A), with A_ij = Phi_ij lambda_j^(1 - alpha_e). Equity prices are
/// positive and finite iff this is below one (for irreducible chains).
double discounted_spectral_radius(const MarkovEconomy& econ, double alpha_e, double beta);

/// Full solve for one preference point.
PricingSolution price(const MarkovEconomy& econ, const Preferences& prefs);

}  // namespace eqp
