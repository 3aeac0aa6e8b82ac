#include "eqp/calibration.hpp"
#include "eqp/errors.hpp"
#include "eqp/fixtures.hpp"
#include "eqp/frontier.hpp"
#include "eqp/pricing.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>

using namespace eqp;

namespace {

struct Case {
    Calibration cal;
    double R_f;
};

Case setup(const fixtures::HistoricalPeriod& period) {
    Calibration cal = calibrate_two_state(period.target);
    const double R_f = bond_returns(cal.economy, bond_prices(cal.economy, 0.0, cal.beta)).R_f;
    return Case{std::move(cal), R_f};
}

FrontierCurve manual_curve(std::vector<FrontierPoint> pts) {
    FrontierCurve c;
    c.points = std::move(pts);
    return c;
}

}  // namespace

TEST_CASE("sweep sample at log utility matches the closed forms") {
    const Case c = setup(fixtures::period_1889_1978());
    const FrontierCurve curve = sweep_frontier(c.cal.economy, c.cal.beta, c.R_f, SweepOptions{0.0, 12.0, 0.05});
    const FrontierPoint* at_one = nullptr;
    const FrontierPoint* at_three_half = nullptr;
    for (const auto& p : curve.points) {
        if (std::abs(p.alpha_e - 1.0) < 1e-9) at_one = &p;
        if (std::abs(p.alpha_e - 3.5) < 1e-9) at_three_half = &p;
    }
    REQUIRE(at_one != nullptr);
    CHECK(std::abs(at_one->sigma_e - 0.03599) < 1e-4);
    CHECK(std::abs(at_one->R_e - 0.02645) < 1e-4);
    REQUIRE(at_three_half != nullptr);
    CHECK(std::abs(at_three_half->R_e - 0.0698) < 5e-4);

    // Low risk aversion makes the growth claim infinitely valuable.
    REQUIRE_FALSE(curve.infeasible.empty());
    CHECK(curve.infeasible.front() == 0.0);
    CHECK(curve.points.front().alpha_e > curve.infeasible.back());
    CHECK(curve.anchor_R_f == c.R_f);
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        CHECK(curve.points[k].alpha_e > curve.points[k - 1].alpha_e);
        CHECK(curve.points[k].sigma_e > 0.0);
    }
}

TEST_CASE("degenerate sweep range") {
    // A high riskless rate keeps alpha_e = 0 feasible.
    const Calibration cal = calibrate_two_state(CalibrationTarget{ConsumptionStats{0.0183, 0.0357, -0.14}, 0.05, {}});
    const FrontierCurve curve = sweep_frontier(cal.economy, cal.beta, 0.05, SweepOptions{0.0, 0.0, 1.0});
    REQUIRE(curve.points.size() == 1);
    CHECK(curve.points[0].alpha_e == 0.0);

    const Case c = setup(fixtures::period_1889_1978());
    try {
        sweep_frontier(c.cal.economy, c.cal.beta, c.R_f, SweepOptions{0.0, 0.0, 1.0});
        FAIL("expected all-infeasible");
    } catch (const NumericalError& e) {
        CHECK(e.kind() == "all_infeasible");
    }
    CHECK_THROWS_AS(sweep_frontier(c.cal.economy, c.cal.beta, c.R_f, SweepOptions{-1.0, 2.0, 0.1}), ValidationError);
    CHECK_THROWS_AS(sweep_frontier(c.cal.economy, c.cal.beta, c.R_f, SweepOptions{0.0, 2.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(sweep_frontier(c.cal.economy, c.cal.beta, c.R_f, SweepOptions{3.0, 2.0, 0.1}), ValidationError);
}

TEST_CASE("tangency on the 1889-1978 economy") {
    const Case c = setup(fixtures::period_1889_1978());
    const FrontierCurve curve = sweep_frontier(c.cal.economy, c.cal.beta, c.R_f);
    const TangencyResult t = find_tangency(curve, c.R_f);
    CHECK(std::abs(t.alpha_star - 9.75) <= 0.25);
    CHECK(std::abs(t.R_star - 0.157) <= 0.005);
    CHECK_FALSE(t.boundary_warning);
    CHECK(t.refined);
    CHECK(t.relative_residual < 0.02);
    for (const auto& p : curve.points) CHECK((p.R_e - c.R_f) / p.sigma_e <= t.sharpe + 1e-9);
}

TEST_CASE("tangency on the 1960-2022 economy") {
    const Case c = setup(fixtures::period_1960_2022());
    const FrontierCurve curve = sweep_frontier(c.cal.economy, c.cal.beta, c.R_f);
    const TangencyResult t = find_tangency(curve, c.R_f);
    CHECK(std::abs(t.alpha_star - 6.75) <= 0.25);
    CHECK(std::abs(t.R_star - 0.143) <= 0.005);
    CHECK(t.relative_residual < 0.02);
    for (const auto& p : curve.points) CHECK((p.R_e - c.R_f) / p.sigma_e <= t.sharpe + 1e-9);
}

TEST_CASE("tangency on a hand-built three-point curve") {
    const std::vector<FrontierPoint> pts{{1, 0.1, 0.02}, {2, 0.2, 0.06}, {3, 0.4, 0.08}};
    // Oracle: brute-force Sharpe over all points.
    double best = -1e300;
    double best_alpha = -1;
    for (const auto& p : pts) {
        if ((p.R_e - 0.01) / p.sigma_e > best) {
            best = (p.R_e - 0.01) / p.sigma_e;
            best_alpha = p.alpha_e;
        }
    }
    REQUIRE(best_alpha == 2.0);
    const TangencyResult t = find_tangency(manual_curve(pts), 0.01);
    CHECK(t.alpha_star == 2.0);
    CHECK(t.sharpe == doctest::Approx(0.25));
    CHECK_FALSE(t.refined);
    CHECK_FALSE(t.boundary_warning);
    CHECK(t.tangency_residual == doctest::Approx(0.05));
}

TEST_CASE("tangency ties go to the smallest alpha") {
    // Exactly representable values so the Sharpe ratios tie bit for bit.
    const std::vector<FrontierPoint> pts{{1, 0.5, 0.25}, {2, 1.0, 0.5}, {3, 2.0, 1.0}, {4, 4.0, 1.0}};
    const TangencyResult t = find_tangency(manual_curve(pts), 0.0);
    CHECK(t.alpha_star == 1.0);
    CHECK(t.boundary_warning);
}

TEST_CASE("tangency needs three points of positive volatility") {
    CHECK_THROWS_AS(find_tangency(manual_curve({{1, 0.1, 0.02}, {2, 0.2, 0.06}}), 0.01), ValidationError);
    CHECK_THROWS_AS(find_tangency(manual_curve({{1, 0.1, 0.02}, {2, 0.0, 0.06}, {3, 0.3, 0.07}}), 0.01),
                    ValidationError);
}

TEST_CASE("truncated sweep flags a boundary optimum") {
    const Case c = setup(fixtures::period_1889_1978());
    const FrontierCurve curve = sweep_frontier(c.cal.economy, c.cal.beta, c.R_f, SweepOptions{0.0, 2.0, 0.01});
    const TangencyResult t = find_tangency(curve, c.R_f);
    CHECK(t.boundary_warning);
    CHECK(t.alpha_star == doctest::Approx(2.0));
}

TEST_CASE("sweeps are deterministic") {
    const Case c = setup(fixtures::period_1960_2022());
    const FrontierCurve a = sweep_frontier(c.cal.economy, c.cal.beta, c.R_f);
    const FrontierCurve b = sweep_frontier(c.cal.economy, c.cal.beta, c.R_f);
    REQUIRE(a.points.size() == b.points.size());
    CHECK(std::memcmp(a.points.data(), b.points.data(), a.points.size() * sizeof(FrontierPoint)) == 0);
    const TangencyResult ta = find_tangency(a, c.R_f);
    const TangencyResult tb = find_tangency(b, c.R_f);
    CHECK(std::memcmp(&ta, &tb, sizeof(TangencyResult)) == 0);
}

TEST_CASE("matching the observed equity return") {
    const Case t1 = setup(fixtures::period_1889_1978());
    const ReturnMatch m1 = match_actual_return(t1.cal.economy, t1.cal.beta, 0.0698);
    CHECK(std::abs(m1.alpha_e - 3.5) <= 0.25);
    CHECK(std::abs(m1.R_e - 0.0698) < 1e-6);
    CHECK_FALSE(m1.multiple_roots);

    const Case t2 = setup(fixtures::period_1960_2022());
    const ReturnMatch m2 = match_actual_return(t2.cal.economy, t2.cal.beta, 0.0733);
    CHECK(std::abs(m2.alpha_e - 3.25) <= 0.25);
    CHECK(std::abs(m2.R_e - 0.0733) < 1e-6);
}

TEST_CASE("matching a root planted at log utility") {
    const Case c = setup(fixtures::period_1889_1978());
    const double planted = evaluate_point(c.cal.economy, c.cal.beta, 1.0).R_e;
    CHECK(std::abs(match_actual_return(c.cal.economy, c.cal.beta, planted).alpha_e - 1.0) < 1e-4);
    // Off-grid sweep so the root falls inside a cell.
    const ReturnMatch m = match_actual_return(c.cal.economy, c.cal.beta, planted, SweepOptions{0.003, 12.0, 0.07});
    CHECK(std::abs(m.alpha_e - 1.0) < 1e-4);
}

TEST_CASE("unattainable returns are reported") {
    const Case c = setup(fixtures::period_1889_1978());
    try {
        match_actual_return(c.cal.economy, c.cal.beta, 0.9);
        FAIL("expected unattainable_return");
    } catch (const NumericalError& e) {
        CHECK(e.kind() == "unattainable_return");
    }
    CHECK_THROWS_AS(match_actual_return(c.cal.economy, c.cal.beta, -0.5), NumericalError);
}

TEST_CASE("tangent line") {
    TangencyResult t;
    t.sigma_star = 0.0952;
    t.R_star = 0.157;
    const double R_f = 0.008;
    CHECK(tangent_line(t, R_f, 0.0) == R_f);
    CHECK(tangent_line(t, R_f, t.sigma_star) == t.R_star);
    CHECK(tangent_line(t, R_f, t.sigma_star / 2.0) == doctest::Approx((R_f + t.R_star) / 2.0).epsilon(1e-14));
    // Collinearity of three points.
    const double v1 = 0.03, v2 = 0.11, v3 = 0.4;
    const double r1 = tangent_line(t, R_f, v1), r2 = tangent_line(t, R_f, v2), r3 = tangent_line(t, R_f, v3);
    CHECK((r2 - r1) / (v2 - v1) == doctest::Approx((r3 - r2) / (v3 - v2)).epsilon(1e-12));
    CHECK_THROWS_AS(tangent_line(t, R_f, -0.1), ValidationError);
}

TEST_CASE("line search helpers") {
    const double peak = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0, 1e-8);
    CHECK(peak == doctest::Approx(0.3).epsilon(1e-7));
    const double root = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-14, 1e-15);
    CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1.0; }, 0.0, 2.0, 1e-9, 1e-12), ValidationError);
}
