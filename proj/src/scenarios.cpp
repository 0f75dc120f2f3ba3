#include "qdt/scenarios.hpp"

#include "qdt/errors.hpp"
#include "qdt/priors.hpp"
#include "qdt/probability.hpp"
#include "qdt/prospects.hpp"
#include "qdt/quantum_state.hpp"
#include "qdt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qdt {

namespace {

bool in_unit_interval(double x) { return x >= -1e-12 && x <= 1.0 + 1e-12; }

PairwiseComparison compare_pair(const std::string& a, const std::string& b, double u_a, double u_b,
                                Attitude att_a, Attitude att_b) {
    std::vector<double> w = luce_weights({u_a, u_b});
    PairwiseComparison c;
    c.first = a;
    c.second = b;
    c.f_first = w[0];
    c.f_second = w[1];
    AggregateResult ra = aggregate_probability(w[0], att_a);
    AggregateResult rb = aggregate_probability(w[1], att_b);
    if (ra.out_of_range || rb.out_of_range)
        throw ModelError("compare_pair: attitude shift leaves [0, 1]");
    c.p_first = ra.value;
    c.p_second = rb.value;
    c.q_first = c.p_first - c.f_first;
    c.q_second = c.p_second - c.f_second;
    c.preferred = c.p_first >= c.p_second ? a : b;
    return c;
}

// A>B, B>C, C>A (or the full reverse) is a loop.
bool cyclic(const std::vector<PairwiseComparison>& pairs) {
    if (pairs.size() != 3)
        return false;
    int forward = 0;
    int backward = 0;
    for (const PairwiseComparison& c : pairs) {
        if (c.preferred == c.first)
            ++forward;
        else
            ++backward;
    }
    return forward == 3 || backward == 3;
}

} // namespace

PlanningResult planning_paradox(double p_a1) {
    if (!in_unit_interval(p_a1))
        throw ModelError("planning_paradox: p(A1) must lie in [0, 1]");
    PlanningResult r;
    r.p_a1 = p_a1;
    r.p_a2 = 1.0 - p_a1;
    // Planning frame: p(A1) = f1 + 1/4, so f1 = p(A1) - 1/4; the
    // execution frame flips the attitude: p(B1) = f1 - 1/4.
    r.f1 = p_a1 - 0.25;
    r.f2 = 1.0 - r.f1;
    AggregateResult b1 = aggregate_probability(std::clamp(r.f1, 0.0, 1.0), Attitude::repulsive);
    r.p_b1 = r.f1 - 0.25;
    r.p_b2 = 1.0 - r.p_b1;
    r.feasible = in_unit_interval(r.f1) && in_unit_interval(r.p_b1) && !b1.out_of_range;
    r.empirical_b1 = 0.36;
    r.empirical_b2 = 0.64;
    r.provenance = "stop-smoking surveys (Benfari et al.): 85% plan to stop, 36% stop within a year";
    return r;
}

DisjunctionResult disjunction_effect(const std::array<double, 4>& fractions) {
    double sum = std::accumulate(fractions.begin(), fractions.end(), 0.0);
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ModelError("disjunction_effect: joint fractions must sum to one");
    for (double x : fractions)
        if (!in_unit_interval(x))
            throw ModelError("disjunction_effect: fraction outside [0, 1]");
    DisjunctionResult r;
    r.fractions = fractions;
    r.f_accept = fractions[0] + fractions[1];
    r.f_reject = fractions[2] + fractions[3];
    // Playing without knowing the first outcome is unattractive.
    AggregateResult pa = aggregate_probability(r.f_accept, Attitude::repulsive);
    AggregateResult pr = aggregate_probability(r.f_reject, Attitude::attractive);
    if (pa.out_of_range || pr.out_of_range)
        throw ModelError("disjunction_effect: attitude shift leaves [0, 1]");
    r.p_accept = pa.value;
    r.p_reject = pr.value;
    r.sure_thing_for_f = r.f_accept > r.f_reject;
    r.sure_thing_for_p = r.p_accept > r.p_reject;
    r.empirical_accept = 0.36;
    r.empirical_reject = 0.64;
    r.provenance = "Tversky-Shafir two-stage gamble: 36% accept the second game unseen";
    return r;
}

FishburnResult fishburn_intransitivity(const std::array<double, 3>& salaries) {
    for (double s : salaries)
        if (!(s > 0.0) || !std::isfinite(s))
            throw ModelError("fishburn_intransitivity: salaries must be positive");
    FishburnResult r;
    r.salaries = salaries;
    r.pairs.push_back(compare_pair("A", "B", salaries[0], salaries[1], Attitude::neutral,
                                   Attitude::neutral));
    r.pairs.push_back(compare_pair("B", "C", salaries[1], salaries[2], Attitude::neutral,
                                   Attitude::neutral));
    r.pairs.push_back(compare_pair("C", "A", salaries[2], salaries[0], Attitude::attractive,
                                   Attitude::repulsive));
    r.loop_detected = cyclic(r.pairs);
    r.provenance = "Fishburn job-choice example: salary vs prestige over three offers";
    return r;
}

BreakLoopResult break_loop(LoopBreak mode, const std::array<double, 3>& salaries) {
    FishburnResult base = fishburn_intransitivity(salaries);
    BreakLoopResult r;
    r.mode = mode;
    if (mode == LoopBreak::decay) {
        // Attractions decay with time, so the C vs A comparison reverts
        // to its utility fractions.
        r.pair = compare_pair("C", "A", salaries[2], salaries[0], Attitude::neutral,
                              Attitude::neutral);
        std::vector<PairwiseComparison> resolved = base.pairs;
        resolved[2] = r.pair;
        r.loop_broken = !cyclic(resolved);
        r.provenance = "attraction decay: repeated exposure erodes the prestige pull";
        return r;
    }
    // Joint choice: one context, all three alternatives at once.
    r.labels = {"A", "B", "C"};
    r.f = luce_weights({salaries[0], salaries[1], salaries[2]});
    const Attitude attitudes[3] = {Attitude::repulsive, Attitude::neutral, Attitude::attractive};
    for (std::size_t n = 0; n < 3; ++n) {
        AggregateResult a = aggregate_probability(r.f[n], attitudes[n]);
        if (a.out_of_range)
            throw ModelError("break_loop: attitude shift leaves [0, 1]");
        r.p.push_back(a.value);
        r.q.push_back(a.value - r.f[n]);
    }
    r.ordering = {0, 1, 2};
    std::sort(r.ordering.begin(), r.ordering.end(),
              [&r](std::size_t i, std::size_t j) { return r.p[i] < r.p[j]; });
    r.loop_broken = true;
    r.provenance = "single-context re-choice over all three offers";
    return r;
}

OrderEffectResult order_effect_demo(std::uint64_t seed, bool commuting) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SpaceLayout layout({{"A", 2}, {"B", 2}, {"S", 2}});

    // Real rotation of the subject factor; the two stages disagree on
    // this basis unless the commuting control is requested.
    auto rotation = [](double theta) {
        ComplexMatrix m(2, 2);
        m(0, 0) = std::cos(theta);
        m(1, 0) = std::sin(theta);
        m(0, 1) = -std::sin(theta);
        m(1, 1) = std::cos(theta);
        return m;
    };
    // The deliberation dynamics must not be diagonal in the measured
    // answer basis, or the readout projector commutes with the stage
    // propagator and the order washes out.  Each stage therefore
    // rotates its own question factor; the two stages disagree on the
    // shared subject basis unless the commuting control is requested.
    auto jitter = [&rng, &unit](double x) { return x * (1.0 + 0.05 * (unit(rng) - 0.5)); };
    double alpha1 = jitter(0.55); // stage-1 rotation of factor A
    double beta2 = jitter(0.45);  // stage-2 rotation of factor B
    double theta1 = 0.3;
    double theta2 = commuting ? theta1 : theta1 + jitter(0.75);

    // Stage spectra couple each question factor to the subject factor.
    std::vector<double> eps1 = {0.0, jitter(1.9), jitter(3.1), jitter(4.3)};
    std::vector<double> eps2 = {0.0, jitter(2.2), jitter(3.5), jitter(5.1)};

    EvolutionGenerator gen1 = EvolutionGenerator::acting_on(
        layout, {"A", "S"}, eps1, {{"A", rotation(alpha1)}, {"S", rotation(theta1)}}, 1.0);
    EvolutionGenerator gen2 = EvolutionGenerator::acting_on(
        layout, {"B", "S"}, eps2, {{"B", rotation(beta2)}, {"S", rotation(theta2)}}, 1.0);

    // Real positive amplitudes leave every interference path open.
    CVector psi(layout.total_dim());
    for (Complex& c : psi)
        c = 0.25 + 0.75 * unit(rng);
    DensityOperator rho = DensityOperator::pure(psi, layout);

    std::vector<DecisionStage> stages;
    stages.push_back({gen1, DecisionWindow{0.0, 1.0}});
    stages.push_back({gen2, DecisionWindow{1.0, 1.0}});
    SuccessiveProcess process(layout, AlternativeSet::computational(2),
                              AlternativeSet::computational(2), stages);

    double t = stages.back().window.end();
    OrderEffectResult r;
    r.p_ab = joint_probability(process, rho, 0, 0, t).value;
    r.p_ba = joint_probability(process.swapped(), rho, 0, 0, t).value;
    r.gap = std::fabs(r.p_ab - r.p_ba);
    r.relative_gap = r.p_ab > 0.0 ? r.gap / r.p_ab : 0.0;
    r.commuting = commuting;
    r.seed = seed;
    r.provenance = "question-order bias in successive surveys (gaps up to tens of percent)";
    return r;
}

const std::vector<ScenarioInfo>& scenario_registry() {
    static const std::vector<ScenarioInfo> registry = {
        {"planning",
         "stop-smoking planning paradox: predict execution from planning",
         "Benfari et al. stop-smoking surveys",
         {{"p(A1)", 0.85}, {"p(A2)", 0.15}, {"p(B1)", 0.35}, {"p(B2)", 0.65}}},
        {"disjunction",
         "two-stage gamble disjunction effect",
         "Tversky-Shafir two-stage gamble experiment",
         {{"f(A1B)", 0.64}, {"f(A2B)", 0.36}, {"p(A1B)", 0.39}, {"p(A2B)", 0.61}}},
        {"fishburn",
         "job-choice preference loop A>B>C>A",
         "Fishburn job-choice example",
         {{"p1(A)", 0.528}, {"p1(B)", 0.472}, {"p2(B)", 0.537}, {"p2(C)", 0.463},
          {"p3(C)", 0.685}, {"p3(A)", 0.315}}},
        {"break-decay",
         "loop broken by attraction decay in the C vs A pair",
         "Fishburn job-choice example",
         {{"p3(C)", 0.435}, {"p3(A)", 0.565}}},
        {"break-joint",
         "loop broken by one joint choice over all three offers",
         "Fishburn job-choice example",
         {{"p(A)", 0.126}, {"p(B)", 0.335}, {"p(C)", 0.539}}},
        {"order-effect",
         "question-order gap on a seeded 2x2x2 successive instance",
         "question-order bias in successive surveys",
         {}},
    };
    return registry;
}

const ScenarioInfo* find_scenario(const std::string& name) {
    for (const ScenarioInfo& info : scenario_registry())
        if (info.name == name)
            return &info;
    return nullptr;
}

} // namespace qdt
