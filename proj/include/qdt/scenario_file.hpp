#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdt/network.hpp"
#include "qdt/prospects.hpp"
#include "qdt/quantum_state.hpp"
#include "qdt/scenarios.hpp"
#include "qdt/tensor.hpp"

namespace qdt {

enum class ScenarioKind { single_decision, successive, behavioral, network, paradox };

const char* kind_name(ScenarioKind kind);

// Sample grid for time-resolved runs: `steps` sample points from start
// to stop inclusive.
struct TimesSpec {
    double start = 0.0;
    double stop = 1.0;
    std::size_t steps = 2;
};

struct OutputSpec {
    std::string path = "run";
    std::string format = "csv";
};

struct GeneratorSpec {
    std::vector<double> eigenvalues;
    double rate = 1.0;
    bool cosine = false; // h(t) = cos(omega t) instead of h = 1
    double omega = 1.0;

    EigenProfile profile() const;
};

struct StageSpec {
    GeneratorSpec generator;
    DecisionWindow window;
    std::map<std::string, ComplexMatrix> bases; // optional per-factor eigenbases
};

struct StateSpec {
    bool pure = true;
    CVector vector;                    // pure
    std::vector<CVector> vectors;      // mixture
    std::vector<double> weights;
};

struct FeelingsSpec {
    std::uint64_t seed = 1;
    FeelingDistribution distribution = FeelingDistribution::complex_gaussian;
};

struct ParadoxSpec {
    std::string name;
    double p_a1 = 0.85;
    std::array<double, 4> fractions = {0.345, 0.295, 0.155, 0.205};
    std::array<double, 3> salaries = {65000.0, 58000.0, 50000.0};
    std::uint64_t seed = kOrderEffectSeed;
    bool commuting = false;
};

struct ScenarioFile {
    ScenarioKind kind = ScenarioKind::single_decision;

    // single-decision / behavioral
    std::size_t alternative_dim = 2;
    std::size_t subject_dim = 1;
    GeneratorSpec generator;
    std::optional<std::vector<CVector>> alternatives;
    FeelingsSpec feelings;

    // successive
    std::size_t first_dim = 2;
    std::size_t second_dim = 2;
    std::vector<StageSpec> stages;

    StateSpec state;

    // network
    NetworkConfig net_config;
    std::vector<Agent> agents;

    ParadoxSpec paradox;

    TimesSpec times;
    bool times_given = false;
    OutputSpec output;
    std::string source_path;
};

// Reads and validates a scenario document.  Unknown keys, missing
// required keys, wrong types, and out-of-range probability inputs all
// raise SchemaError with key context.
ScenarioFile parse_scenario(const std::string& path);
ScenarioFile parse_scenario_text(const std::string& text, const std::string& name);

// JSON document for a built-in paradox scenario (for `scenario show`).
std::string builtin_scenario_json(const std::string& name);

} // namespace qdt
