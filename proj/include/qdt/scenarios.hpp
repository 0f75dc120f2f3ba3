#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace qdt {

// Stop-smoking planning paradox.  The planning frame puts q = +1/4 on
// the plan, the execution frame flips it to -1/4, and the utility
// fractions are shared between the frames.
struct PlanningResult {
    double p_a1 = 0.0, p_a2 = 0.0; // planning frame
    double f1 = 0.0, f2 = 0.0;     // shared utility fractions
    double p_b1 = 0.0, p_b2 = 0.0; // execution frame
    bool feasible = true;
    double empirical_b1 = 0.0, empirical_b2 = 0.0; // survey comparison values
    std::string provenance;
};

PlanningResult planning_paradox(double p_a1 = 0.85);

// Two-stage gamble.  Fractions arrive in the order
// (accept|win, accept|lose, reject|win, reject|lose).
struct DisjunctionResult {
    std::array<double, 4> fractions{};
    double f_accept = 0.0, f_reject = 0.0;
    double p_accept = 0.0, p_reject = 0.0;
    bool sure_thing_for_f = false;
    bool sure_thing_for_p = false;
    double empirical_accept = 0.0, empirical_reject = 0.0;
    std::string provenance;
};

DisjunctionResult disjunction_effect(
    const std::array<double, 4>& fractions = {0.345, 0.295, 0.155, 0.205});

struct PairwiseComparison {
    std::string first, second;
    double f_first = 0.0, f_second = 0.0;
    double q_first = 0.0, q_second = 0.0;
    double p_first = 0.0, p_second = 0.0;
    std::string preferred;
};

// Job-choice triple: salaries decrease from A to C while prestige
// rises.  Adjacent pairs are close in prestige (neutral attitude); the
// extreme pair C vs A gets the +/-1/4 split favoring prestige.
struct FishburnResult {
    std::array<double, 3> salaries{};
    std::vector<PairwiseComparison> pairs; // (A,B), (B,C), (C,A)
    bool loop_detected = false;
    std::string provenance;
};

FishburnResult fishburn_intransitivity(
    const std::array<double, 3>& salaries = {65000.0, 58000.0, 50000.0});

enum class LoopBreak { decay, joint_choice };

struct BreakLoopResult {
    LoopBreak mode = LoopBreak::decay;
    // decay mode: the C vs A pair with the attractions decayed away
    PairwiseComparison pair;
    // joint mode: one three-way choice
    std::vector<std::string> labels;
    std::vector<double> f, q, p;
    std::vector<std::size_t> ordering; // indices by ascending p
    bool loop_broken = false;
    std::string provenance;
};

BreakLoopResult break_loop(LoopBreak mode,
                           const std::array<double, 3>& salaries = {65000.0, 58000.0, 50000.0});

inline constexpr std::uint64_t kOrderEffectSeed = 2;

// Two successive questions on a 2x2x2 space.  The stage generators
// share the alternative factors but use different subject-space bases,
// so the stage propagators do not commute and the answer statistics
// depend on the question order.  The commuting control keeps one
// shared subject basis.
struct OrderEffectResult {
    double p_ab = 0.0; // joint (A_0, B_0), A asked first
    double p_ba = 0.0; // same answers, B asked first
    double gap = 0.0;
    double relative_gap = 0.0; // gap / p_ab
    bool commuting = false;
    std::uint64_t seed = 0;
    std::string provenance;
};

OrderEffectResult order_effect_demo(std::uint64_t seed = kOrderEffectSeed,
                                    bool commuting = false);

// Registry entry for the CLI: name, description, and the published
// values the computation is expected to reproduce at 3 decimals.
struct ScenarioInfo {
    std::string name;
    std::string description;
    std::string provenance;
    std::vector<std::pair<std::string, double>> expected;
};

const std::vector<ScenarioInfo>& scenario_registry();
const ScenarioInfo* find_scenario(const std::string& name);

} // namespace qdt
