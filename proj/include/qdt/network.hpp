#pragma once

#include <cstddef>
#include <vector>

namespace qdt {

// Pairwise information-gain matrix for one exchange step, row-major
// N x N with mu_ii = 0.
using GainMatrix = std::vector<double>;

// Kullback-Leibler gain mu_ij = sum_n p_i ln(p_i / p_j).  Components
// are confined to [eps, 1 - eps] with eps = 1e-12; a component below
// eps on one side only is an information divergence and raises an
// error.
double info_gain(const std::vector<double>& p_i, const std::vector<double>& p_j);

enum class Interaction { long_range, short_range };
enum class MemoryKind { long_term, short_term };

// One agent of the decision-maker society.
struct Agent {
    std::vector<double> f;  // rational fractions, sum to one
    std::vector<double> q0; // initial attractions, sum to zero

    void validate() const;
};

struct NetworkConfig {
    double coupling = 1.0; // J
    double tau = 1.0;      // time step
    Interaction interaction = Interaction::long_range;
    MemoryKind memory = MemoryKind::long_term;
    std::size_t horizon = 10000; // steps
    // Optional neighbor lists for short-range interaction; empty means
    // the default ring (two neighbors).
    std::vector<std::vector<std::size_t>> neighbors;

    void validate(std::size_t n_agents) const;
};

// M_i(t) from the gain history: long-term memory sums every completed
// exchange, short-term memory keeps only the latest one; long-range
// interaction averages over the other N-1 agents, short-range sums the
// ring neighbors.  `t` counts completed exchanges, 1 <= t <=
// history.size().
double memory_functional(const std::vector<GainMatrix>& history, const NetworkConfig& config,
                         std::size_t n_agents, std::size_t i, std::size_t t);

// q0 * exp(-M)
double attraction_discount(double q0, double M);

// Closed-form common fixed point for two agents under long-range
// long-term memory: p* = (f1 q20 - f2 q10) / (q20 - q10).
double consensus_fixed_point(double f1, double f2, double q10, double q20);

struct NetworkState {
    std::vector<Agent> agents;
    std::vector<std::vector<double>> p; // current probabilities
    std::vector<double> M;              // current memory values
    std::vector<GainMatrix> gains;      // one matrix per completed step
    std::size_t steps = 0;

    // Incremental long-term accumulators (same numbers as
    // memory_functional, kept running so a step is O(N^2)).
    std::vector<double> memory_sum;
};

NetworkState init_network(const NetworkConfig& config, const std::vector<Agent>& agents);

// One exchange: record the gains at the current probabilities, update
// every memory value, then discount the attractions:
//   p_i(t + tau) = f_i + q_i(0) * exp(-M_i(t)).
// Rows stay normalized exactly because the q_i(0) sum to zero.
void step(NetworkState& state, const NetworkConfig& config);

enum class Regime {
    rational_convention,
    common_convention,
    group_conventions,
    everlasting_fluctuations
};

struct RegimeReport {
    Regime regime = Regime::everlasting_fluctuations;
    bool converged = false;
    std::size_t converged_at = 0;
    bool recurrence_detected = false;
};

// Trailing-window classifier: converged when the max per-step change
// stays below 1e-8 for 50 consecutive steps at the end of the series;
// labels use a 1e-3 tolerance.  Non-converged series are scanned for a
// recurrence (revisit of an earlier state within 1e-6).
RegimeReport classify_regime(const std::vector<std::vector<std::vector<double>>>& p_series,
                             const std::vector<Agent>& agents);

struct Trajectory {
    std::vector<std::vector<std::vector<double>>> p; // [step][agent][alternative]
    std::vector<std::vector<double>> M;              // [step][agent]
    std::size_t steps = 0;
    RegimeReport report;
};

// Runs the discrete dynamics for at most config.horizon steps,
// stopping early once convergence is certified.
Trajectory simulate(const NetworkConfig& config, const std::vector<Agent>& agents);

const char* regime_name(Regime regime);

} // namespace qdt
