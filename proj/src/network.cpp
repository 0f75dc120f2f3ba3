#include "qdt/network.hpp"

#include "qdt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qdt {

namespace {

constexpr double kEps = 1e-12;

void check_probability_row(const std::vector<double>& p, const char* who) {
    if (p.empty())
        throw DimensionError(std::string(who) + ": empty probability vector");
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x))
            throw ModelError(std::string(who) + ": non-finite probability");
        if (x < -1e-10 || x > 1.0 + 1e-10)
            throw ModelError(std::string(who) + ": probability outside [0, 1]");
        sum += x;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ModelError(std::string(who) + ": probabilities sum to " + std::to_string(sum));
}

std::vector<std::size_t> ring_neighbors(std::size_t i, std::size_t n) {
    std::vector<std::size_t> nb;
    std::size_t left = (i + n - 1) % n;
    std::size_t right = (i + 1) % n;
    nb.push_back(left);
    if (right != left)
        nb.push_back(right);
    return nb;
}

std::vector<std::size_t> neighbors_of(const NetworkConfig& config, std::size_t i, std::size_t n) {
    if (!config.neighbors.empty())
        return config.neighbors[i];
    return ring_neighbors(i, n);
}

double gain_kernel(const GainMatrix& gains, const NetworkConfig& config, std::size_t n,
                   std::size_t i) {
    double acc = 0.0;
    if (config.interaction == Interaction::long_range) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            acc += gains[i * n + j];
        }
        acc /= static_cast<double>(n - 1);
    } else {
        for (std::size_t j : neighbors_of(config, i, n))
            acc += gains[i * n + j];
    }
    return config.coupling * acc;
}

} // namespace

double info_gain(const std::vector<double>& p_i, const std::vector<double>& p_j) {
    check_probability_row(p_i, "info_gain");
    check_probability_row(p_j, "info_gain");
    if (p_i.size() != p_j.size())
        throw DimensionError("info_gain: mismatched alternative sets");
    double mu = 0.0;
    for (std::size_t n = 0; n < p_i.size(); ++n) {
        double a = std::min(p_i[n], 1.0 - kEps);
        double b = std::min(p_j[n], 1.0 - kEps);
        bool a_low = a < kEps;
        bool b_low = b < kEps;
        if (a_low != b_low)
            throw DivergenceError("info_gain: vanishing probability component for one agent only");
        if (a_low && b_low)
            continue;
        mu += a * std::log(a / b);
    }
    // Roundoff can leave a tiny negative residue on identical rows.
    if (mu < 0.0 && mu > -1e-12)
        mu = 0.0;
    return mu;
}

void Agent::validate() const {
    if (f.empty() || f.size() != q0.size())
        throw DimensionError("Agent: f and q0 must share a nonempty alternative set");
    double fs = 0.0;
    double qs = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        if (!std::isfinite(f[n]) || !std::isfinite(q0[n]))
            throw ModelError("Agent: non-finite entry");
        if (f[n] < -1e-12 || f[n] > 1.0 + 1e-12)
            throw ModelError("Agent: rational fraction outside [0, 1]");
        double p = f[n] + q0[n];
        if (p < -1e-12 || p > 1.0 + 1e-12)
            throw ModelError("Agent: initial probability f + q0 outside [0, 1]");
        fs += f[n];
        qs += q0[n];
    }
    if (std::fabs(fs - 1.0) > 1e-9)
        throw ModelError("Agent: rational fractions sum to " + std::to_string(fs));
    if (std::fabs(qs) > 1e-9)
        throw ModelError("Agent: attractions sum to " + std::to_string(qs));
}

void NetworkConfig::validate(std::size_t n_agents) const {
    if (n_agents < 2)
        throw ModelError("NetworkConfig: need at least two agents");
    if (!std::isfinite(coupling) || coupling < 0.0)
        throw ModelError("NetworkConfig: coupling must be nonnegative");
    if (!std::isfinite(tau) || tau < 1.0)
        throw ModelError("NetworkConfig: tau must be at least one");
    if (horizon == 0)
        throw ModelError("NetworkConfig: horizon must be positive");
    if (!neighbors.empty()) {
        if (interaction != Interaction::short_range)
            throw ModelError("NetworkConfig: neighbor lists require short-range interaction");
        if (neighbors.size() != n_agents)
            throw DimensionError("NetworkConfig: one neighbor list per agent required");
        for (std::size_t i = 0; i < neighbors.size(); ++i) {
            for (std::size_t j : neighbors[i]) {
                if (j >= n_agents)
                    throw DimensionError("NetworkConfig: neighbor index out of range");
                if (j == i)
                    throw ModelError("NetworkConfig: agent listed as its own neighbor");
            }
        }
    }
}

double memory_functional(const std::vector<GainMatrix>& history, const NetworkConfig& config,
                         std::size_t n_agents, std::size_t i, std::size_t t) {
    if (t == 0 || t > history.size())
        throw ModelError("memory_functional: t must count completed exchanges");
    if (i >= n_agents)
        throw DimensionError("memory_functional: agent index out of range");
    for (const GainMatrix& g : history)
        if (g.size() != n_agents * n_agents)
            throw DimensionError("memory_functional: gain matrix has wrong shape");
    if (config.memory == MemoryKind::short_term)
        return gain_kernel(history[t - 1], config, n_agents, i);
    double acc = 0.0;
    for (std::size_t s = 0; s < t; ++s)
        acc += gain_kernel(history[s], config, n_agents, i);
    return acc;
}

double attraction_discount(double q0, double M) {
    if (!std::isfinite(q0) || !std::isfinite(M))
        throw ModelError("attraction_discount: non-finite argument");
    return q0 * std::exp(-M);
}

double consensus_fixed_point(double f1, double f2, double q10, double q20) {
    double denom = q20 - q10;
    if (std::fabs(denom) < 1e-15)
        throw ModelError("consensus_fixed_point: equal initial attractions have no unique fixed point");
    return (f1 * q20 - f2 * q10) / denom;
}

NetworkState init_network(const NetworkConfig& config, const std::vector<Agent>& agents) {
    config.validate(agents.size());
    std::size_t n_alts = 0;
    for (const Agent& a : agents) {
        a.validate();
        if (n_alts == 0)
            n_alts = a.f.size();
        else if (a.f.size() != n_alts)
            throw DimensionError("init_network: agents must share one alternative set");
    }
    NetworkState state;
    state.agents = agents;
    state.p.resize(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) {
        state.p[i].resize(n_alts);
        for (std::size_t n = 0; n < n_alts; ++n)
            state.p[i][n] = agents[i].f[n] + agents[i].q0[n];
    }
    state.M.assign(agents.size(), 0.0);
    state.memory_sum.assign(agents.size(), 0.0);
    return state;
}

void step(NetworkState& state, const NetworkConfig& config) {
    std::size_t n = state.agents.size();
    std::size_t n_alts = state.p.front().size();
    GainMatrix gains(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                gains[i * n + j] = info_gain(state.p[i], state.p[j]);
    state.gains.push_back(gains);
    for (std::size_t i = 0; i < n; ++i) {
        double latest = gain_kernel(gains, config, n, i);
        if (config.memory == MemoryKind::long_term) {
            state.memory_sum[i] += latest;
            state.M[i] = state.memory_sum[i];
        } else {
            state.M[i] = latest;
        }
        for (std::size_t a = 0; a < n_alts; ++a)
            state.p[i][a] = state.agents[i].f[a] +
                            attraction_discount(state.agents[i].q0[a], state.M[i]);
    }
    ++state.steps;
}

namespace {

double series_delta(const std::vector<std::vector<double>>& a,
                    const std::vector<std::vector<double>>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t n = 0; n < a[i].size(); ++n)
            d = std::max(d, std::fabs(a[i][n] - b[i][n]));
    return d;
}

} // namespace

RegimeReport classify_regime(const std::vector<std::vector<std::vector<double>>>& p_series,
                             const std::vector<Agent>& agents) {
    RegimeReport report;
    if (p_series.size() < 2)
        return report;

    constexpr double kConvergence = 1e-8;
    constexpr std::size_t kRunLength = 50;
    constexpr double kLabel = 1e-3;
    constexpr double kRecurrence = 1e-6;
    constexpr std::size_t kLookback = 100;

    // Trailing run of small per-step changes.
    std::size_t run = 0;
    for (std::size_t t = p_series.size() - 1; t >= 1; --t) {
        if (series_delta(p_series[t], p_series[t - 1]) < kConvergence)
            ++run;
        else
            break;
        if (t == 1)
            break;
    }
    if (run >= kRunLength) {
        report.converged = true;
        report.converged_at = p_series.size() - 1 - run;
        const auto& last = p_series.back();
        bool rational = true;
        for (std::size_t i = 0; i < last.size() && rational; ++i)
            for (std::size_t n = 0; n < last[i].size(); ++n)
                if (std::fabs(last[i][n] - agents[i].f[n]) > kLabel) {
                    rational = false;
                    break;
                }
        if (rational) {
            report.regime = Regime::rational_convention;
            return report;
        }
        bool common = true;
        for (std::size_t i = 1; i < last.size() && common; ++i)
            for (std::size_t n = 0; n < last[i].size(); ++n)
                if (std::fabs(last[i][n] - last[0][n]) > kLabel) {
                    common = false;
                    break;
                }
        report.regime = common ? Regime::common_convention : Regime::group_conventions;
        return report;
    }

    // Not converged: everlasting fluctuations, with a bounded-lag scan
    // for a revisited state.
    report.regime = Regime::everlasting_fluctuations;
    const auto& last = p_series.back();
    std::size_t first = p_series.size() > kLookback + 1 ? p_series.size() - 1 - kLookback : 0;
    for (std::size_t t = first; t + 1 < p_series.size(); ++t) {
        if (series_delta(last, p_series[t]) < kRecurrence) {
            report.recurrence_detected = true;
            break;
        }
    }
    return report;
}

Trajectory simulate(const NetworkConfig& config, const std::vector<Agent>& agents) {
    NetworkState state = init_network(config, agents);
    Trajectory traj;
    traj.p.push_back(state.p);
    traj.M.push_back(state.M);

    constexpr double kConvergence = 1e-8;
    constexpr std::size_t kRunLength = 50;
    std::size_t run = 0;
    for (std::size_t s = 0; s < config.horizon; ++s) {
        std::vector<std::vector<double>> prev = state.p;
        step(state, config);
        traj.p.push_back(state.p);
        traj.M.push_back(state.M);
        if (series_delta(state.p, prev) < kConvergence)
            ++run;
        else
            run = 0;
        if (run >= kRunLength)
            break;
    }
    traj.steps = traj.p.size() - 1;
    traj.report = classify_regime(traj.p, agents);
    return traj;
}

const char* regime_name(Regime regime) {
    switch (regime) {
    case Regime::rational_convention:
        return "rational-convention";
    case Regime::common_convention:
        return "common-convention";
    case Regime::group_conventions:
        return "group-conventions";
    case Regime::everlasting_fluctuations:
        return "everlasting-fluctuations";
    }
    return "unknown";
}

} // namespace qdt
