#include "eqp/pricing.hpp"

#include "eqp/errors.hpp"

#include <cmath>
#include <sstream>

namespace eqp {

namespace {

void check_beta(double beta) {
    if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("beta must lie in (0, 1]");
}

void check_alpha(double alpha, const char* name) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError(std::string(name) + " must be >= 0");
}

Eigen::MatrixXd equity_kernel(const MarkovEconomy& econ, double alpha_e) {
    const Eigen::RowVectorXd weight = econ.lambda().array().pow(1.0 - alpha_e).matrix().transpose();
    Eigen::MatrixXd a = econ.phi();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        a.row(i) = a.row(i).cwiseProduct(weight);
    }
    return a;
}

}  // namespace

double discounted_spectral_radius(const MarkovEconomy& econ, double alpha_e, double beta) {
    const Eigen::MatrixXd a = equity_kernel(econ, alpha_e);
    const Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
    return beta * solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::VectorXd solve_equity_prices(const MarkovEconomy& econ, double alpha_e, double beta) {
    check_alpha(alpha_e, "alpha_e");
    check_beta(beta);

    const Eigen::Index n = econ.n();
    const Eigen::MatrixXd a = beta * equity_kernel(econ, alpha_e);
    const Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n) - a;
    const Eigen::VectorXd rhs = a.rowwise().sum();

    const double radius = discounted_spectral_radius(econ, alpha_e, beta);
    auto fail = [&](const std::string& why) {
        std::ostringstream msg;
        msg << "no equilibrium price for alpha_e = " << alpha_e << ", beta = " << beta << ": " << why
            << " (beta * rho(A) = " << radius << ")";
        throw NoEquilibriumError(msg.str(), radius);
    };

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) fail("price system is singular");
    Eigen::VectorXd w = lu.solve(rhs);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(w(i)) || w(i) <= 0.0) fail("solved price is not positive");
    }
    if (radius >= 1.0) fail("discounted kernel is not contracting");
    return w;
}

EquityReturns equity_returns(const MarkovEconomy& econ, const Eigen::VectorXd& w) {
    const Eigen::Index n = econ.n();
    if (w.size() != n) throw ValidationError("price vector has the wrong length");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(w(i) > 0.0)) throw ValidationError("equity prices must be positive", "domain");
    }

    EquityReturns out;
    out.r_e.resize(n, n);
    out.R_e_state.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out.r_e(i, j) = econ.lambda()(j) * (w(j) + 1.0) / w(i) - 1.0;
        }
        out.R_e_state(i) = econ.phi().row(i).dot(out.r_e.row(i));
    }
    out.R_e = econ.pi().dot(out.R_e_state);
    return out;
}

double equity_return_stdev(const MarkovEconomy& econ, const Eigen::MatrixXd& r_e, double R_e) {
    const Eigen::Index n = econ.n();
    if (r_e.rows() != n || r_e.cols() != n) throw ValidationError("return matrix has the wrong shape");
    double var = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double d = r_e(i, j) - R_e;
            var += econ.pi()(i) * econ.phi()(i, j) * d * d;
        }
    }
    return std::sqrt(var);
}

Eigen::VectorXd bond_prices(const MarkovEconomy& econ, double alpha_f, double beta) {
    check_alpha(alpha_f, "alpha_f");
    check_beta(beta);
    const Eigen::VectorXd payoff = econ.lambda().array().pow(-alpha_f);
    return beta * (econ.phi() * payoff);
}

BondReturns bond_returns(const MarkovEconomy& econ, const Eigen::VectorXd& p_f) {
    if (p_f.size() != econ.n()) throw ValidationError("bond price vector has the wrong length");
    for (Eigen::Index i = 0; i < p_f.size(); ++i) {
        if (!(p_f(i) > 0.0)) throw ValidationError("bond prices must be positive", "domain");
    }
    BondReturns out;
    out.R_f_state = p_f.cwiseInverse().array() - 1.0;
    out.R_f = econ.pi().dot(out.R_f_state);
    return out;
}

double bond_return_variance(const MarkovEconomy& econ, const Eigen::VectorXd& R_f_state) {
    const auto& pi = econ.pi();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < R_f_state.size(); ++i) {
        for (Eigen::Index j = i + 1; j < R_f_state.size(); ++j) {
            const double d = R_f_state(i) - R_f_state(j);
            acc += pi(i) * pi(j) * d * d;
        }
    }
    return acc;
}

PricingSolution price(const MarkovEconomy& econ, const Preferences& prefs) {
    prefs.validate();
    PricingSolution s;
    s.w = solve_equity_prices(econ, prefs.alpha_e, prefs.beta);
    auto eq = equity_returns(econ, s.w);
    s.r_e = std::move(eq.r_e);
    s.R_e_state = std::move(eq.R_e_state);
    s.R_e = eq.R_e;
    s.sigma_e = equity_return_stdev(econ, s.r_e, s.R_e);
    s.p_f = bond_prices(econ, prefs.alpha_f, prefs.beta);
    auto bond = bond_returns(econ, s.p_f);
    s.R_f_state = std::move(bond.R_f_state);
    s.R_f = bond.R_f;
    return s;
}

}  // namespace eqp
