#include "qdt/priors.hpp"

#include <algorithm>
#include <cmath>

#include "qdt/errors.hpp"
#include "qdt/quadrature.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

void Lottery::validate() const {
    if (outcomes.empty()) throw ModelError("lottery has no outcomes");
    double total = 0.0;
    for (const Outcome& o : outcomes) {
        if (!std::isfinite(o.payoff)) throw ModelError("non-finite lottery payoff");
        if (!(o.probability >= 0.0) || !std::isfinite(o.probability))
            throw ModelError("lottery probabilities must be nonnegative");
        total += o.probability;
    }
    if (std::abs(total - 1.0) > tol::kDefault)
        throw ModelError("lottery probabilities do not sum to one");
}

double expected_utility(const Lottery& lottery, const UtilityFn& utility) {
    lottery.validate();
    double u = 0.0;
    for (const Lottery::Outcome& o : lottery.outcomes) {
        const double v = utility(o.payoff);
        if (!std::isfinite(v)) throw DivergenceError("non-finite utility value");
        u += v * o.probability;
    }
    return u;
}

std::vector<double> attributes_from_utilities(const std::vector<double>& utilities) {
    if (utilities.empty()) throw ModelError("no utilities given");
    for (double u : utilities)
        if (!std::isfinite(u)) throw ModelError("non-finite utility");

    const bool any_negative = std::any_of(utilities.begin(), utilities.end(),
                                          [](double u) { return u < 0.0; });
    const bool all_negative = std::all_of(utilities.begin(), utilities.end(),
                                          [](double u) { return u < 0.0; });
    std::vector<double> a;
    a.reserve(utilities.size());
    if (!any_negative) {
        a = utilities;
    } else if (all_negative) {
        for (double u : utilities) a.push_back(1.0 / std::abs(u));
    } else {
        const double shift = std::abs(*std::min_element(utilities.begin(), utilities.end()));
        for (double u : utilities) a.push_back(u + shift);
    }
    return a;
}

std::vector<double> luce_weights(const std::vector<double>& attributes) {
    if (attributes.empty()) throw ModelError("no attributes given");
    double total = 0.0;
    for (double a : attributes) {
        if (!(a >= 0.0) || !std::isfinite(a))
            throw ModelError("attributes must be nonnegative and finite");
        total += a;
    }
    if (!(total > 0.0)) throw ModelError("zero attraction mass");
    std::vector<double> f;
    f.reserve(attributes.size());
    for (double a : attributes) f.push_back(a / total);
    return f;
}

std::pair<double, double> quarter_law(const PriorDensity& prior) {
    if (!prior.phi) throw ModelError("prior density is empty");
    const auto phi = [&prior](double x) {
        const double v = prior.phi(x);
        if (!std::isfinite(v)) throw DivergenceError("non-finite prior density");
        if (v < -tol::kStrict) throw ModelError("prior density is negative");
        return v;
    };
    const double mass = integrate(phi, -1.0, 1.0, 1e-10);
    if (std::abs(mass - 1.0) > 1e-8)
        throw ModelError("prior density does not integrate to one on [-1, 1]");
    const double plus = integrate([&phi](double x) { return x * phi(x); }, 0.0, 1.0, 1e-10);
    const double minus = integrate([&phi](double x) { return x * phi(x); }, -1.0, 0.0, 1e-10);
    return {plus, minus};
}

AggregateResult aggregate_probability(double f, Attitude attitude) {
    if (!(f >= -tol::kStrict) || !(f <= 1.0 + tol::kStrict) || !std::isfinite(f))
        throw ModelError("rational fraction outside [0, 1]");
    AggregateResult r;
    switch (attitude) {
        case Attitude::attractive: r.value = f + 0.25; break;
        case Attitude::repulsive: r.value = f - 0.25; break;
        case Attitude::neutral: r.value = f; break;
    }
    r.out_of_range = r.value < -tol::kStrict || r.value > 1.0 + tol::kStrict;
    return r;
}

} // namespace qdt
