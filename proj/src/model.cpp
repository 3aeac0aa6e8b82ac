#include "eqp/model.hpp"

#include "eqp/errors.hpp"

#include <cmath>
#include <string>

namespace eqp {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kStationaryTol = 1e-10;
constexpr double kIterationTol = 1e-12;
constexpr long kMaxIterations = 1'000'000;

}  // namespace

void validate_transition_matrix(const Eigen::MatrixXd& phi) {
    if (phi.rows() == 0 || phi.rows() != phi.cols()) {
        throw ValidationError("transition matrix must be square and non-empty");
    }
    for (Eigen::Index i = 0; i < phi.rows(); ++i) {
        for (Eigen::Index j = 0; j < phi.cols(); ++j) {
            const double p = phi(i, j);
            if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
                throw ValidationError("transition probability Phi(" + std::to_string(i) + "," +
                                      std::to_string(j) + ") is outside [0, 1]");
            }
        }
        if (std::abs(phi.row(i).sum() - 1.0) > kRowSumTol) {
            throw ValidationError("row " + std::to_string(i) + " of the transition matrix does not sum to 1");
        }
    }
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& phi) {
    validate_transition_matrix(phi);
    const Eigen::Index n = phi.rows();

    if (n == 1) {
        return Eigen::VectorXd::Ones(1);
    }

    if (n == 2) {
        // Balance: p0 * Phi01 = p1 * Phi10.
        const double leave0 = phi(0, 1);
        const double leave1 = phi(1, 0);
        if (leave0 + leave1 == 0.0) {
            throw NumericalError("no_unique_stationary", "both states are absorbing; stationary distribution is not unique");
        }
        if (leave0 == 1.0 && leave1 == 1.0) {
            throw NumericalError("no_unique_stationary", "chain is periodic (states alternate deterministically)");
        }
        Eigen::VectorXd p(2);
        p << leave1 / (leave0 + leave1), leave0 / (leave0 + leave1);
        return p;
    }

    // A unique, attracting fixed point needs exactly one unit-modulus eigenvalue.
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(phi, false);
    int unit_eigenvalues = 0;
    int unit_modulus = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto mu = solver.eigenvalues()(k);
        if (std::abs(mu - std::complex<double>(1.0, 0.0)) < 1e-9) ++unit_eigenvalues;
        if (std::abs(mu) > 1.0 - 1e-9) ++unit_modulus;
    }
    if (unit_eigenvalues != 1) {
        throw NumericalError("no_unique_stationary", "chain is reducible; stationary distribution is not unique");
    }
    if (unit_modulus != 1) {
        throw NumericalError("no_unique_stationary", "chain is periodic");
    }

    Eigen::VectorXd p = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd phi_t = phi.transpose();
    for (long it = 0; it < kMaxIterations; ++it) {
        Eigen::VectorXd next = phi_t * p;
        next /= next.sum();
        const double change = (next - p).lpNorm<Eigen::Infinity>();
        p = std::move(next);
        if (change < kIterationTol) {
            return p;
        }
    }
    throw NumericalError("no_unique_stationary", "stationary iteration did not converge");
}

MarkovEconomy MarkovEconomy::create(Eigen::MatrixXd phi, Eigen::VectorXd lambda,
                                    std::optional<Eigen::VectorXd> pi) {
    validate_transition_matrix(phi);
    if (lambda.size() != phi.rows()) {
        throw ValidationError("lambda has " + std::to_string(lambda.size()) + " entries but Phi has " +
                              std::to_string(phi.rows()) + " states");
    }
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (!std::isfinite(lambda(i)) || lambda(i) <= 0.0) {
            throw ValidationError("growth factor lambda[" + std::to_string(i) + "] must be positive");
        }
    }
    if (lambda.size() == 2 && !(lambda(0) > lambda(1))) {
        throw ValidationError("two-state economy requires lambda[0] > lambda[1] (growth state first)");
    }

    Eigen::VectorXd solved = stationary_distribution(phi);
    if (pi) {
        if (pi->size() != phi.rows()) {
            throw ValidationError("pi has the wrong number of entries");
        }
        const double residual = (phi.transpose() * *pi - *pi).lpNorm<Eigen::Infinity>();
        if (residual > kStationaryTol || std::abs(pi->sum() - 1.0) > kStationaryTol || (pi->array() < 0.0).any()) {
            throw ValidationError("supplied pi is not the stationary distribution of Phi");
        }
        solved = std::move(*pi);
    }
    return MarkovEconomy(std::move(phi), std::move(lambda), std::move(solved));
}

void Preferences::validate() const {
    if (!(alpha_e >= 0.0) || !std::isfinite(alpha_e)) throw ValidationError("alpha_e must be >= 0");
    if (!(alpha_f >= 0.0) || !std::isfinite(alpha_f)) throw ValidationError("alpha_f must be >= 0");
    if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
}

void ConsumptionStats::validate() const {
    if (!std::isfinite(xi)) throw ValidationError("mean growth must be finite");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("growth standard deviation must be positive");
    if (!(std::abs(sigma_c) < 1.0)) {
        throw ValidationError("serial correlation must lie in (-1, 1)", "correlation_out_of_range");
    }
}

ConsumptionStats consumption_moments(const MarkovEconomy& econ) {
    const auto& pi = econ.pi();
    const auto& phi = econ.phi();
    const Eigen::VectorXd growth = econ.lambda().array() - 1.0;

    ConsumptionStats s;
    s.xi = pi.dot(growth);
    const Eigen::VectorXd dev = growth.array() - s.xi;
    s.delta = std::sqrt(pi.dot(dev.cwiseProduct(dev)));
    if (s.delta == 0.0) {
        throw NumericalError("degenerate_moments", "all states share one growth rate; serial correlation is undefined");
    }

    double cov = 0.0;
    for (Eigen::Index i = 0; i < econ.n(); ++i) {
        for (Eigen::Index j = 0; j < econ.n(); ++j) {
            cov += pi(i) * phi(i, j) * dev(i) * dev(j);
        }
    }
    s.sigma_c = cov / (s.delta * s.delta);
    return s;
}

double crra_utility(double c, double alpha) {
    if (!(c > 0.0)) throw ValidationError("utility is defined only for positive consumption", "domain");
    if (alpha == 1.0) return std::log(c);
    const double k = 1.0 - alpha;
    return std::expm1(k * std::log(c)) / k;
}

double crra_discount_ratio(double c, double alpha) {
    if (!(c > 0.0)) throw ValidationError("discount ratio is defined only for positive consumption", "domain");
    return std::pow(1.0 + 1.0 / c, -alpha);
}

}  // namespace eqp
