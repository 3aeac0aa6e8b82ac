#include "eqp/frontier.hpp"

#include "eqp/errors.hpp"
#include "eqp/pricing.hpp"

#include <cmath>
#include <limits>

namespace eqp {

namespace {

constexpr double kRefineTol = 1e-4;
constexpr double kMatchFtol = 1e-6;
constexpr double kMatchXtol = 1e-12;
constexpr double kSlopeStep = 1e-3;

struct GridSample {
    long index;
    FrontierPoint point;
};

struct GridEvaluation {
    std::vector<GridSample> feasible;
    std::vector<double> infeasible;
};

void validate_sweep(const SweepOptions& o) {
    if (!(o.alpha_lo >= 0.0) || !std::isfinite(o.alpha_lo)) throw ValidationError("alpha range must start at >= 0");
    if (!(o.alpha_hi >= o.alpha_lo) || !std::isfinite(o.alpha_hi)) throw ValidationError("alpha range upper end is below its lower end");
    if (!(o.step > 0.0) || !std::isfinite(o.step)) throw ValidationError("sweep step must be positive");
}

GridEvaluation evaluate_grid(const MarkovEconomy& econ, double beta, const SweepOptions& o) {
    validate_sweep(o);
    const long count = static_cast<long>(std::floor((o.alpha_hi - o.alpha_lo) / o.step + 1e-9)) + 1;
    GridEvaluation out;
    out.feasible.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        const double alpha = o.alpha_lo + static_cast<double>(k) * o.step;
        try {
            out.feasible.push_back({k, evaluate_point(econ, beta, alpha)});
        } catch (const NoEquilibriumError&) {
            out.infeasible.push_back(alpha);
        }
    }
    return out;
}

double sharpe_of(const FrontierPoint& p, double R_f) { return (p.R_e - R_f) / p.sigma_e; }

}  // namespace

FrontierPoint evaluate_point(const MarkovEconomy& econ, double beta, double alpha_e) {
    const Eigen::VectorXd w = solve_equity_prices(econ, alpha_e, beta);
    const EquityReturns eq = equity_returns(econ, w);
    return FrontierPoint{alpha_e, equity_return_stdev(econ, eq.r_e, eq.R_e), eq.R_e};
}

FrontierCurve sweep_frontier(const MarkovEconomy& econ, double beta, double R_f, const SweepOptions& options) {
    GridEvaluation grid = evaluate_grid(econ, beta, options);

    FrontierCurve curve;
    curve.anchor_R_f = R_f;
    curve.infeasible = std::move(grid.infeasible);
    curve.source = FrontierCurve::Source{econ, beta, options.step};
    for (const auto& s : grid.feasible) {
        if (s.point.sigma_e > 0.0) {
            curve.points.push_back(s.point);
            curve.grid_index.push_back(s.index);
        } else {
            curve.zero_volatility.push_back(s.point.alpha_e);
        }
    }
    if (curve.points.empty()) {
        throw NumericalError("all_infeasible", "no alpha_e in the swept range admits an equilibrium with positive volatility");
    }
    return curve;
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return (lo + hi) / 2.0;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double ftol, double xtol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (std::abs(flo) < ftol) return lo;
    if (std::abs(fhi) < ftol) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw ValidationError("bisection bracket does not straddle a root");
    double mid = (lo + hi) / 2.0;
    while (hi - lo > xtol) {
        mid = (lo + hi) / 2.0;
        const double fm = f(mid);
        if (std::abs(fm) < ftol) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return mid;
}

TangencyResult find_tangency(const FrontierCurve& curve, double R_f) {
    const auto& pts = curve.points;
    if (pts.size() < 3) throw ValidationError("tangency search needs at least three curve points");
    for (const auto& p : pts) {
        if (!(p.sigma_e > 0.0)) throw ValidationError("curve points must have positive volatility");
    }
    auto adjacent = [&](std::size_t a, std::size_t b) {
        if (curve.grid_index.size() != pts.size()) return true;
        return curve.grid_index[b] - curve.grid_index[a] == 1;
    };

    std::size_t best = 0;
    double best_sharpe = sharpe_of(pts[0], R_f);
    for (std::size_t k = 1; k < pts.size(); ++k) {
        const double s = sharpe_of(pts[k], R_f);
        if (s > best_sharpe) {
            best_sharpe = s;
            best = k;
        }
    }

    const bool has_left = best > 0 && adjacent(best - 1, best);
    const bool has_right = best + 1 < pts.size() && adjacent(best, best + 1);

    TangencyResult result;
    result.alpha_star = pts[best].alpha_e;
    result.sigma_star = pts[best].sigma_e;
    result.R_star = pts[best].R_e;
    result.sharpe = best_sharpe;
    result.boundary_warning = !has_left || !has_right;

    if (curve.source) {
        const auto& src = *curve.source;
        auto evaluate = [&](double alpha) -> std::optional<FrontierPoint> {
            try {
                FrontierPoint p = evaluate_point(src.economy, src.beta, alpha);
                if (p.sigma_e > 0.0) return p;
            } catch (const NoEquilibriumError&) {
            }
            return std::nullopt;
        };
        auto sharpe_at = [&](double alpha) {
            const auto p = evaluate(alpha);
            return p ? sharpe_of(*p, R_f) : -std::numeric_limits<double>::infinity();
        };

        const double lo = has_left ? pts[best - 1].alpha_e : pts[best].alpha_e;
        const double hi = has_right ? pts[best + 1].alpha_e : pts[best].alpha_e;
        if (hi > lo) {
            const double alpha = golden_section_maximize(sharpe_at, lo, hi, kRefineTol);
            if (const auto p = evaluate(alpha); p && sharpe_of(*p, R_f) >= best_sharpe) {
                result.alpha_star = p->alpha_e;
                result.sigma_star = p->sigma_e;
                result.R_star = p->R_e;
                result.sharpe = sharpe_of(*p, R_f);
                result.refined = true;
            }
        }

        // Central difference along the curve; fall back to one side next to a gap.
        const double h = std::min(kSlopeStep, src.step);
        const auto below = result.alpha_star - h >= 0.0 ? evaluate(result.alpha_star - h) : std::nullopt;
        const auto above = evaluate(result.alpha_star + h);
        const FrontierPoint centre{result.alpha_star, result.sigma_star, result.R_star};
        const FrontierPoint a = below ? *below : centre;
        const FrontierPoint b = above ? *above : centre;
        if (b.sigma_e != a.sigma_e) {
            const double slope = (b.R_e - a.R_e) / (b.sigma_e - a.sigma_e);
            result.tangency_residual = std::abs(slope - result.sharpe);
        } else {
            result.tangency_residual = std::numeric_limits<double>::infinity();
        }
    } else {
        const FrontierPoint& a = has_left ? pts[best - 1] : pts[best];
        const FrontierPoint& b = has_right ? pts[best + 1] : pts[best];
        if (b.sigma_e != a.sigma_e) {
            const double slope = (b.R_e - a.R_e) / (b.sigma_e - a.sigma_e);
            result.tangency_residual = std::abs(slope - result.sharpe);
        } else {
            result.tangency_residual = std::numeric_limits<double>::infinity();
        }
    }
    result.relative_residual = result.tangency_residual / std::abs(result.sharpe);
    return result;
}

ReturnMatch match_actual_return(const MarkovEconomy& econ, double beta, double target_R_e, const SweepOptions& options) {
    if (!std::isfinite(target_R_e)) throw ValidationError("target return must be finite");
    const GridEvaluation grid = evaluate_grid(econ, beta, options);
    const auto& s = grid.feasible;
    if (s.empty()) throw NumericalError("all_infeasible", "no alpha_e in the swept range admits an equilibrium");

    double lowest = s.front().point.R_e;
    double highest = lowest;
    for (const auto& g : s) {
        lowest = std::min(lowest, g.point.R_e);
        highest = std::max(highest, g.point.R_e);
    }
    if (target_R_e < lowest || target_R_e > highest) {
        throw NumericalError("unattainable_return", "target return " + std::to_string(target_R_e) +
                                                        " lies outside the attained range [" + std::to_string(lowest) +
                                                        ", " + std::to_string(highest) + "]");
    }

    auto gap = [&](double alpha) { return evaluate_point(econ, beta, alpha).R_e - target_R_e; };

    std::vector<double> roots;
    auto add_root = [&](double alpha) {
        if (roots.empty() || std::abs(roots.back() - alpha) > options.step / 2.0) roots.push_back(alpha);
    };
    if (s.size() == 1 && std::abs(s[0].point.R_e - target_R_e) < kMatchFtol) add_root(s[0].point.alpha_e);
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        if (s[k + 1].index - s[k].index != 1) continue;
        const double fa = s[k].point.R_e - target_R_e;
        const double fb = s[k + 1].point.R_e - target_R_e;
        if (fa == 0.0) {
            add_root(s[k].point.alpha_e);
        } else if (fb == 0.0) {
            add_root(s[k + 1].point.alpha_e);
        } else if ((fa > 0.0) != (fb > 0.0)) {
            add_root(bisect_root(gap, s[k].point.alpha_e, s[k + 1].point.alpha_e, kMatchFtol, kMatchXtol));
        }
    }
    if (roots.empty()) {
        throw NumericalError("unattainable_return", "target return is not bracketed by any contiguous stretch of the curve");
    }

    ReturnMatch out;
    out.alpha_e = roots.front();
    out.R_e = evaluate_point(econ, beta, out.alpha_e).R_e;
    out.multiple_roots = roots.size() > 1;
    return out;
}

double tangent_line(const TangencyResult& tangency, double R_f, double v) {
    if (!(v >= 0.0)) throw ValidationError("volatility must be non-negative");
    // Mixing weight on the tangency portfolio; t = 1 lands on R_star exactly.
    const double t = v / tangency.sigma_star;
    return (1.0 - t) * R_f + t * tangency.R_star;
}

}  // namespace eqp
