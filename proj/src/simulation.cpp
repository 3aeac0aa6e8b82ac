#include "eqp/simulation.hpp"

#include "eqp/errors.hpp"
#include "eqp/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace eqp {

namespace {

class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

Eigen::Index draw(const Eigen::VectorXd& cdf, double u) {
    for (Eigen::Index j = 0; j + 1 < cdf.size(); ++j) {
        if (u < cdf(j)) return j;
    }
    return cdf.size() - 1;
}

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

template <typename Fn>
Moments moments(std::size_t count, Fn value) {
    Moments m;
    for (std::size_t t = 0; t < count; ++t) m.mean += value(t);
    m.mean /= static_cast<double>(count);
    double ss = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        const double d = value(t) - m.mean;
        ss += d * d;
    }
    m.sd = std::sqrt(ss / static_cast<double>(count));
    return m;
}

}  // namespace

SimulationResult simulate(const MarkovEconomy& econ, const Preferences& prefs, std::uint64_t steps,
                          std::uint64_t seed, const SimulationOptions& options) {
    if (steps < 1) throw ValidationError("simulation needs at least one step");
    const PricingSolution sol = price(econ, prefs);
    const Eigen::Index n = econ.n();

    Eigen::MatrixXd cdf(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            acc += econ.phi()(i, j);
            cdf(i, j) = acc;
        }
    }
    Eigen::VectorXd pi_cdf(n);
    {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) pi_cdf(j) = (acc += econ.pi()(j));
    }

    UniformSource uniform(seed);
    std::vector<Eigen::Index> path(steps + 1);
    if (options.initial_state) {
        if (*options.initial_state < 0 || *options.initial_state >= n) throw ValidationError("initial state out of range");
        path[0] = *options.initial_state;
    } else {
        path[0] = draw(pi_cdf, uniform());
    }
    for (std::uint64_t t = 1; t <= steps; ++t) {
        path[t] = draw(cdf.row(path[t - 1]).transpose(), uniform());
    }

    SimulationResult r;
    r.steps = steps;
    r.seed = seed;
    r.initial_state = options.initial_state;

    const auto count = static_cast<std::size_t>(steps);
    const double big_n = static_cast<double>(steps);

    r.empirical_pi = Eigen::VectorXd::Zero(n);
    for (std::size_t t = 0; t < count; ++t) r.empirical_pi(path[t]) += 1.0;
    r.empirical_pi /= big_n;

    // Growth realised on arrival in each state.
    auto growth = [&](std::size_t t) { return econ.lambda()(path[t + 1]) - 1.0; };
    const Moments g = moments(count, growth);
    double lag_cov = 0.0;
    double total_ss = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
        const double d = growth(t) - g.mean;
        total_ss += d * d;
        if (t + 1 < count) lag_cov += d * (growth(t + 1) - g.mean);
    }
    r.empirical_stats.xi = g.mean;
    r.empirical_stats.delta = g.sd;
    r.empirical_stats.sigma_c = total_ss > 0.0 ? lag_cov / total_ss : 0.0;

    const Moments eq = moments(count, [&](std::size_t t) { return sol.r_e(path[t], path[t + 1]); });
    r.empirical_R_e = eq.mean;
    r.empirical_sigma_e = eq.sd;

    auto bond = [&](std::size_t t) { return sol.R_f_state(path[t]); };
    const Moments bf = moments(count, bond);
    r.empirical_R_f = bf.mean;
    r.empirical_sigma_f = bf.sd;
    double lo = bond(0);
    double hi = lo;
    for (std::size_t t = 1; t < count; ++t) {
        lo = std::min(lo, bond(t));
        hi = std::max(hi, bond(t));
    }
    r.bond_return_range = hi - lo;
    if (r.bond_return_range == 0.0) {
        // A constant sequence; avoid summation round-off in its moments.
        r.empirical_R_f = lo;
        r.empirical_sigma_f = 0.0;
    }

    const double root_n = std::sqrt(big_n);
    auto& se = r.standard_errors;
    se.pi = (r.empirical_pi.array() * (1.0 - r.empirical_pi.array())).sqrt() / root_n;
    se.xi = g.sd / root_n;
    se.delta = g.sd / std::sqrt(2.0 * big_n);
    se.sigma_c = (1.0 - r.empirical_stats.sigma_c * r.empirical_stats.sigma_c) / root_n;
    se.R_e = eq.sd / root_n;
    se.sigma_e = eq.sd / std::sqrt(2.0 * big_n);
    se.R_f = bf.sd / root_n;
    return r;
}

}  // namespace eqp
