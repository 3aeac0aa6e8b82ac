#include "eqp/errors.hpp"
#include "eqp/pricing.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace eqp;

namespace {

MarkovEconomy single_state(double lambda) {
    return MarkovEconomy::create(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Constant(1, lambda));
}

double eq2_residual(const MarkovEconomy& econ, double alpha, double beta, const Eigen::VectorXd& w) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < econ.n(); ++i) {
        double rhs = 0.0;
        for (Eigen::Index j = 0; j < econ.n(); ++j) {
            rhs += econ.phi()(i, j) * std::pow(econ.lambda()(j), 1.0 - alpha) * (w(j) + 1.0);
        }
        worst = std::max(worst, std::abs(w(i) - beta * rhs));
    }
    return worst;
}

/// Oracle: value iteration w <- beta * A (w + 1), independent of the linear solve.
Eigen::VectorXd prices_by_iteration(const MarkovEconomy& econ, double alpha, double beta) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(econ.n());
    for (int it = 0; it < 200000; ++it) {
        Eigen::VectorXd next(econ.n());
        for (Eigen::Index i = 0; i < econ.n(); ++i) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j < econ.n(); ++j) {
                acc += econ.phi()(i, j) * std::pow(econ.lambda()(j), 1.0 - alpha) * (w(j) + 1.0);
            }
            next(i) = beta * acc;
        }
        const double change = (next - w).lpNorm<Eigen::Infinity>();
        w = next;
        if (change < 1e-13 * (1.0 + w.lpNorm<Eigen::Infinity>())) break;
    }
    return w;
}

}  // namespace

TEST_CASE("log utility prices equities at beta / (1 - beta) in every state") {
    const auto econ = test::early_economy();
    const double beta = test::early_beta();
    const Eigen::VectorXd w = solve_equity_prices(econ, 1.0, beta);
    CHECK(std::abs(w(0) - 125.0) < 1e-8);
    CHECK(std::abs(w(1) - 125.0) < 1e-8);
    CHECK(std::abs(w(0) - beta / (1.0 - beta)) < 1e-10);
    CHECK(eq2_residual(econ, 1.0, beta, w) < 1e-10);
}

TEST_CASE("single-state economy") {
    const auto econ = single_state(1.0);
    for (double alpha : {0.0, 2.0, 7.0}) {
        const Eigen::VectorXd w = solve_equity_prices(econ, alpha, 0.9);
        CHECK(w(0) == doctest::Approx(9.0).epsilon(1e-14));
    }
    const Eigen::VectorXd w = solve_equity_prices(econ, 3.0, 0.9);
    const EquityReturns r = equity_returns(econ, w);
    CHECK(r.r_e(0, 0) == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(r.R_e == doctest::Approx(1.0 / 9.0).epsilon(1e-14));
    CHECK(equity_return_stdev(econ, r.r_e, r.R_e) == 0.0);
}

TEST_CASE("undiscounted risk-neutral pricing of a growing dividend has no equilibrium") {
    const auto econ = test::two_state(0.5, 0.5, 1.1, 1.05);
    try {
        solve_equity_prices(econ, 0.0, 1.0);
        FAIL("expected NoEquilibriumError");
    } catch (const NoEquilibriumError& e) {
        CHECK(e.kind() == "no_equilibrium");
        CHECK(e.discounted_spectral_radius() >= 1.0);
    }
}

TEST_CASE("price solve matches value iteration and satisfies the pricing equation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> alpha_dist(0.0, 10.0);
    std::uniform_real_distribution<double> beta_dist(0.85, 0.99);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto econ = test::random_two_state(rng);
        const double alpha = alpha_dist(rng);
        const double beta = beta_dist(rng);
        const double rho = discounted_spectral_radius(econ, alpha, beta);
        if (rho >= 1.0) {
            CHECK_THROWS_AS(solve_equity_prices(econ, alpha, beta), NoEquilibriumError);
            continue;
        }
        // Value iteration is too slow to serve as an oracle this close to the boundary.
        if (rho > 0.995) continue;
        const Eigen::VectorXd w = solve_equity_prices(econ, alpha, beta);
        CHECK((w.array() > 0.0).all());
        CHECK(eq2_residual(econ, alpha, beta, w) < 1e-10 * (1.0 + w.lpNorm<Eigen::Infinity>()));
        const Eigen::VectorXd oracle = prices_by_iteration(econ, alpha, beta);
        CHECK((w - oracle).lpNorm<Eigen::Infinity>() < 1e-8 * (1.0 + w.lpNorm<Eigen::Infinity>()));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("equity returns and volatility under log utility follow closed forms") {
    const auto econ = test::early_economy();
    const double beta = test::early_beta();
    const EquityReturns r = equity_returns(econ, solve_equity_prices(econ, 1.0, beta));

    // r_ij = lambda_j / beta - 1 regardless of i.
    for (Eigen::Index j = 0; j < 2; ++j) {
        CHECK(r.r_e(0, j) == doctest::Approx(r.r_e(1, j)).epsilon(1e-13));
        CHECK(r.r_e(0, j) == doctest::Approx(econ.lambda()(j) / beta - 1.0).epsilon(1e-12));
    }
    const double closed_R = 1.0183 * 1.008 - 1.0;
    CHECK(std::abs(r.R_e - closed_R) < 1e-12);
    CHECK(std::abs(r.R_e - 0.02645) < 1e-4);

    const double sigma = equity_return_stdev(econ, r.r_e, r.R_e);
    CHECK(std::abs(sigma - 0.0357 * 1.008) < 1e-12);
    CHECK(std::abs(sigma - 0.03599) < 1e-4);
}

TEST_CASE("equity returns reject non-positive prices") {
    const auto econ = test::early_economy();
    Eigen::VectorXd w(2);
    w << 10.0, 0.0;
    CHECK_THROWS_AS(equity_returns(econ, w), ValidationError);
    w << 10.0, -3.0;
    CHECK_THROWS_AS(equity_returns(econ, w), ValidationError);
}

TEST_CASE("bond prices") {
    const auto econ = test::early_economy();
    const double beta = test::early_beta();
    const Eigen::VectorXd risk_neutral = bond_prices(econ, 0.0, beta);
    CHECK(risk_neutral(0) == beta);
    CHECK(risk_neutral(1) == beta);

    const Eigen::VectorXd p2 = bond_prices(econ, 2.0, beta);
    const double hand = (0.43 / (1.054 * 1.054) + 0.57 / (0.9826 * 0.9826)) / 1.008;
    CHECK(p2(0) == doctest::Approx(hand).epsilon(1e-14));
    CHECK(std::abs(p2(0) - 0.9697) < 5e-5);

    const Eigen::VectorXd undiscounted = bond_prices(econ, 0.0, 1.0);
    CHECK(undiscounted(0) == 1.0);
    CHECK(undiscounted(1) == 1.0);
}

TEST_CASE("bond returns") {
    const auto econ = test::early_economy();
    Eigen::VectorXd p(2);
    p << 1.0 / 1.008, 1.0 / 1.008;
    CHECK(bond_returns(econ, p).R_f == doctest::Approx(0.008).epsilon(1e-12));
    p << 1.0, 1.0;
    CHECK(bond_returns(econ, p).R_f == 0.0);
    p << 0.95, 0.90;
    const BondReturns r = bond_returns(econ, p);
    CHECK(r.R_f == doctest::Approx(0.5 * (1.0 / 0.95 - 1.0) + 0.5 * (1.0 / 0.9 - 1.0)).epsilon(1e-14));
    CHECK(std::abs(r.R_f - 0.08187) < 1e-5);
    p << 0.95, 0.0;
    CHECK_THROWS_AS(bond_returns(econ, p), ValidationError);
}

TEST_CASE("risk-neutral bonds are riskless in every economy") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> beta_dist(0.5, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto econ = test::random_two_state(rng);
        const double beta = beta_dist(rng);
        const Eigen::VectorXd p = bond_prices(econ, 0.0, beta);
        CHECK(std::abs(p(0) - beta) < 1e-12);
        CHECK(std::abs(p(1) - beta) < 1e-12);
        const BondReturns r = bond_returns(econ, p);
        CHECK(bond_return_variance(econ, r.R_f_state) == 0.0);
        CHECK(std::abs(r.R_f - (1.0 / beta - 1.0)) < 1e-12);
    }
}

TEST_CASE("no positive risk aversion makes bond prices state independent when growth is correlated") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto econ = test::random_two_state(rng);
        if (std::abs(consumption_moments(econ).sigma_c) <= 0.01) continue;
        ++checked;
        for (int k = 1; k <= 100; ++k) {
            const Eigen::VectorXd p = bond_prices(econ, 0.1 * k, 0.99);
            CHECK(p.maxCoeff() - p.minCoeff() >= 1e-9);
        }
    }
    CHECK(checked > 200);
}

TEST_CASE("full solve bundles consistent statistics") {
    const auto econ = test::early_economy();
    const PricingSolution s = price(econ, Preferences{3.5, 0.0, test::early_beta()});
    CHECK(std::abs(s.R_e - econ.pi().dot(s.R_e_state)) < 1e-12);
    CHECK(std::abs(s.R_f - econ.pi().dot(s.R_f_state)) < 1e-12);
    CHECK(s.sigma_e >= 0.0);
    CHECK(std::abs(s.R_e - 0.0698) < 5e-4);
    CHECK(std::abs(s.R_f - 0.008) < 1e-12);
    CHECK_THROWS_AS(price(econ, Preferences{-1.0, 0.0, 0.99}), ValidationError);
    CHECK_THROWS_AS(price(econ, Preferences{1.0, 0.0, 1.5}), ValidationError);
}
