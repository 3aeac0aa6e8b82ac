#pragma once

#include "eqp/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace eqp {

struct FrontierPoint {
    double alpha_e = 0.0;
    double sigma_e = 0.0;
    double R_e = 0.0;
};

/// Grid over alpha_e; the sample at index k sits at lo + k * step.
struct SweepOptions {
    double alpha_lo = 0.0;
    double alpha_hi = 12.0;
    double step = 0.01;
};

/// Return-vs-volatility curve traced by alpha_e.
///
/// When produced by sweep_frontier the curve remembers the economy and beta
/// it came from, so find_tangency can refine between grid points. Curves
/// built by hand carry only their samples.
struct FrontierCurve {
    struct Source {
        MarkovEconomy economy;
        double beta;
        double step;
    };

    std::vector<FrontierPoint> points;   ///< sorted by alpha_e, all with sigma_e > 0
    double anchor_R_f = 0.0;             ///< riskless point (0, R_f)
    std::vector<double> infeasible;      ///< grid alphas with no equilibrium price
    std::vector<double> zero_volatility; ///< grid alphas where sigma_e == 0
    std::optional<Source> source;

    /// Grid index of each point; consecutive indices mean no gap between them.
    std::vector<long> grid_index;
};

struct TangencyResult {
    double alpha_star = 0.0;
    double sigma_star = 0.0;
    double R_star = 0.0;
    double sharpe = 0.0;
    /// |dR/dsigma - (R_star - R_f)/sigma_star| from central differences.
    double tangency_residual = 0.0;
    /// tangency_residual / |sharpe|.
    double relative_residual = 0.0;
    /// Grid optimum sits at an end of the swept range (or next to a gap), so
    /// the true optimum may lie outside it.
    bool boundary_warning = false;
    bool refined = false;
};

struct ReturnMatch {
    double alpha_e = 0.0;
    double R_e = 0.0;
    bool multiple_roots = false;
};

/// Evaluates (sigma_e, R_e) at one alpha_e; throws NoEquilibriumError when
/// the price system has no positive solution.
FrontierPoint evaluate_point(const MarkovEconomy& econ, double beta, double alpha_e);

FrontierCurve sweep_frontier(const MarkovEconomy& econ, double beta, double R_f,
                             const SweepOptions& options = {});

/// Maximises (R_e - R_f)/sigma_e over the grid (ties: smallest alpha), then
/// refines by golden-section search over the two neighbouring grid cells.
TangencyResult find_tangency(const FrontierCurve& curve, double R_f);

/// Smallest alpha_e with |R_e(alpha_e) - target| < 1e-6, by bisection inside
/// a sign-change bracket of the swept curve.
ReturnMatch match_actual_return(const MarkovEconomy& econ, double beta, double target_R_e,
                                const SweepOptions& options = {});

/// Return of the bond/tangency-equity mix with volatility v.
double tangent_line(const TangencyResult& tangency, double R_f, double v);

/// Maximiser of f on [lo, hi] by golden-section search, to width tol.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Root of f on [lo, hi] (f(lo), f(hi) of opposite sign or zero) by bisection;
/// stops once |f| < ftol or the bracket is narrower than xtol.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double ftol, double xtol);

}  // namespace eqp
