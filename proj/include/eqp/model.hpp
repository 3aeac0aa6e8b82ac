#pragma once

#include <Eigen/Dense>

#include <optional>

namespace eqp {

/// Finite-state Markov economy in which state i carries a gross
/// consumption-growth factor lambda_i (1.054 means +5.4%).
///
/// Immutable once built. The factory validates that Phi is row-stochastic,
/// that every lambda is positive (and, with two states, that state 0 is the
/// growth state), and that the chain has a unique aperiodic stationary
/// distribution.
class MarkovEconomy {
public:
    static MarkovEconomy create(Eigen::MatrixXd phi, Eigen::VectorXd lambda,
                                std::optional<Eigen::VectorXd> pi = std::nullopt);

    Eigen::Index n() const noexcept { return lambda_.size(); }
    const Eigen::MatrixXd& phi() const noexcept { return phi_; }
    const Eigen::VectorXd& lambda() const noexcept { return lambda_; }
    const Eigen::VectorXd& pi() const noexcept { return pi_; }

private:
    MarkovEconomy(Eigen::MatrixXd phi, Eigen::VectorXd lambda, Eigen::VectorXd pi)
        : phi_(std::move(phi)), lambda_(std::move(lambda)), pi_(std::move(pi)) {}

    Eigen::MatrixXd phi_;
    Eigen::VectorXd lambda_;
    Eigen::VectorXd pi_;
};

/// Risk aversion is context dependent: equities and bonds each get their own
/// CRRA coefficient, priced under a common time discount factor.
struct Preferences {
    double alpha_e = 0.0;
    double alpha_f = 0.0;
    double beta = 1.0;

    /// Throws ValidationError unless alpha_e, alpha_f >= 0 and 0 < beta <= 1.
    void validate() const;
};

/// Stationary moments of net consumption growth.
struct ConsumptionStats {
    double xi = 0.0;       ///< mean
    double delta = 0.0;    ///< standard deviation
    double sigma_c = 0.0;  ///< lag-1 serial correlation

    void validate() const;
};

/// Row-stochastic check (rows sum to 1 within 1e-12, entries in [0, 1]).
void validate_transition_matrix(const Eigen::MatrixXd& phi);

/// Unique stationary distribution p = Phi^T p. Two-state chains use the
/// closed-form balance equation; larger chains use fixed-point iteration.
/// Throws NumericalError("no_unique_stationary") for reducible chains with
/// several closed classes and for periodic chains.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& phi);

/// Population moments of net growth lambda_i - 1 under the stationary
/// measure, with serial correlation
///   sum_ij pi_i Phi_ij (lambda_i - 1 - xi)(lambda_j - 1 - xi) / delta^2.
ConsumptionStats consumption_moments(const MarkovEconomy& econ);

/// U(c, alpha) = (c^(1 - alpha) - 1) / (1 - alpha), with ln(c) at alpha = 1.
double crra_utility(double c, double alpha);

/// U'(c + 1, alpha) / U'(c, alpha) = (1 + 1/c)^(-alpha).
double crra_discount_ratio(double c, double alpha);

}  // namespace eqp
