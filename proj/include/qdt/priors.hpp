#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace qdt {

// Payoff / probability pairs.
struct Lottery {
    struct Outcome {
        double payoff = 0.0;
        double probability = 0.0;
    };
    std::vector<Outcome> outcomes;

    void validate() const;
};

using UtilityFn = std::function<double(double)>;

double expected_utility(const Lottery& lottery, const UtilityFn& utility);

// Attraction attributes from expected utilities: utilities as-is when
// all are nonnegative, inverse magnitudes when all are negative, and a
// shift that zeroes the worst alternative for mixed signs.
std::vector<double> attributes_from_utilities(const std::vector<double>& utilities);

// Luce's choice rule f_n = a_n / sum(a).
std::vector<double> luce_weights(const std::vector<double>& attributes);

// Prior density of the attraction factor on [-1, 1].
struct PriorDensity {
    std::function<double(double)> phi;
};

// Typical (non-informative) attraction magnitudes under the prior:
// (integral of x phi over [0, 1], integral of x phi over [-1, 0]).
// The uniform prior gives (+1/4, -1/4).
std::pair<double, double> quarter_law(const PriorDensity& prior);

enum class Attitude { attractive, repulsive, neutral };

struct AggregateResult {
    double value = 0.0;
    bool out_of_range = false;
};

// f +/- 1/4 depending on the attitude sign.  Out-of-range results are
// flagged, never clamped.
AggregateResult aggregate_probability(double f, Attitude attitude);

} // namespace qdt
