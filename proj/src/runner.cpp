#include "qdt/runner.hpp"

#include "qdt/behavioral.hpp"
#include "qdt/network.hpp"
#include "qdt/probability.hpp"
#include "qdt/scenarios.hpp"

#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

namespace qdt {

using nlohmann::json;

namespace {

struct MemoryRun {
    std::vector<std::pair<std::string, std::string>> files; // name -> content
    json summary;
};

std::string output_directory() {
    const char* dir = std::getenv("QDT_OUTPUT_DIR");
    return dir && *dir ? dir : ".";
}

std::string resolve_path(const std::string& name) {
    if (!name.empty() && name.front() == '/')
        return name;
    return output_directory() + "/" + name;
}

// RFC-4180: quote only when the field needs it (our fields never do,
// but the writer stays general).
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

class CsvBuilder {
public:
    explicit CsvBuilder(const std::vector<std::string>& header) { row(header); }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i)
                text_ += ',';
            text_ += csv_field(fields[i]);
        }
        text_ += "\r\n";
    }

    std::string take() { return std::move(text_); }

private:
    std::string text_;
};

double clamp_residue(double p) {
    if (p < 0.0 && p >= -1e-10)
        return 0.0;
    if (p > 1.0 && p <= 1.0 + 1e-10)
        return 1.0;
    return p;
}

double checked_probability(double p, const std::string& what) {
    if (!std::isfinite(p) || p < -1e-10 || p > 1.0 + 1e-10)
        throw ModelError(what + " outside [0, 1]: " + std::to_string(p));
    return clamp_residue(p);
}

json behavioral_row_json(const BehavioralProbability& b) {
    return json{{"alternative", b.alternative + 1},
                {"f", b.f},
                {"q", b.q},
                {"p", clamp_residue(b.p)}};
}

DensityOperator build_state(const StateSpec& spec, const SpaceLayout& layout) {
    if (spec.pure)
        return DensityOperator::pure(spec.vector, layout);
    return DensityOperator::mixture(spec.vectors, spec.weights, layout);
}

AlternativeSet build_alternatives(const ScenarioFile& sc) {
    if (!sc.alternatives)
        return AlternativeSet::computational(sc.alternative_dim);
    return AlternativeSet(*sc.alternatives);
}

MemoryRun run_behavioral(const ScenarioFile& sc) {
    SpaceLayout layout({{"A", sc.alternative_dim}, {"S", sc.subject_dim}});
    DensityOperator state0 = build_state(sc.state, layout);
    AlternativeSet alts = build_alternatives(sc);
    EvolutionGenerator gen = EvolutionGenerator::diagonal(layout, sc.generator.eigenvalues,
                                                          sc.generator.rate,
                                                          sc.generator.profile());
    FeelingAmplitudes feelings =
        normalize_feelings(state0, alts,
                           sample_feelings(alts.size(), sc.subject_dim, sc.feelings.seed,
                                           sc.feelings.distribution));

    const TimesSpec& times = sc.times;
    CsvBuilder csv({"t", "alternative", "f", "q", "p"});
    json initial = json::array();
    json final_table = json::array();
    for (std::size_t k = 0; k < times.steps; ++k) {
        double t = times.steps == 1
                       ? times.start
                       : times.start + (times.stop - times.start) * static_cast<double>(k) /
                                           static_cast<double>(times.steps - 1);
        for (std::size_t n = 0; n < alts.size(); ++n) {
            BehavioralProbability b = evolve_behavioral(state0, gen, alts, feelings, n, t);
            double p = checked_probability(b.p, "behavioral probability");
            csv.row({format_number(t), std::to_string(n + 1), format_number(b.f),
                     format_number(b.q), format_number(p)});
            if (k == 0)
                initial.push_back(behavioral_row_json(b));
            if (k + 1 == times.steps)
                final_table.push_back(behavioral_row_json(b));
        }
    }

    MemoryRun out;
    out.summary["kind"] = kind_name(sc.kind);
    out.summary["seed"] = sc.feelings.seed;
    out.summary["rate"] = sc.generator.rate;
    out.summary["initial"] = initial;
    out.summary["final"] = final_table;
    if (times.stop > times.start) {
        DecisionWindow window{times.start, times.stop - times.start};
        json averaged = json::array();
        for (std::size_t n = 0; n < alts.size(); ++n) {
            BehavioralProbability b = averaged_behavioral(state0, gen, alts, feelings, n, window);
            checked_probability(b.p, "averaged behavioral probability");
            averaged.push_back(behavioral_row_json(b));
        }
        out.summary["averaged"] = averaged;
    }
    out.files.emplace_back(sc.output.path + ".csv", csv.take());
    return out;
}

MemoryRun run_successive(const ScenarioFile& sc) {
    std::vector<SpaceLayout::Factor> factors = {{"A", sc.first_dim}, {"B", sc.second_dim}};
    if (sc.subject_dim > 1)
        factors.push_back({"S", sc.subject_dim});
    SpaceLayout layout(factors);
    DensityOperator state0 = build_state(sc.state, layout);

    std::vector<DecisionStage> stages;
    for (const StageSpec& stage : sc.stages)
        stages.push_back({EvolutionGenerator(layout, stage.bases, stage.generator.eigenvalues,
                                             stage.generator.rate, stage.generator.profile()),
                          stage.window});
    SuccessiveProcess process(layout, AlternativeSet::computational(sc.first_dim),
                              AlternativeSet::computational(sc.second_dim), stages);

    double t = sc.times_given ? sc.times.stop : sc.stages.back().window.end();
    json joint = json::array();
    json swapped = json::array();
    SuccessiveProcess reversed = process.swapped();
    double order_gap = 0.0;
    double total = 0.0;
    for (std::size_t n = 0; n < sc.first_dim; ++n) {
        json row = json::array();
        json row_sw = json::array();
        for (std::size_t k = 0; k < sc.second_dim; ++k) {
            double p = checked_probability(joint_probability(process, state0, n, k, t).value,
                                           "joint probability");
            double p_sw = checked_probability(
                joint_probability(reversed, state0, n, k, t).value, "joint probability");
            row.push_back(p);
            row_sw.push_back(p_sw);
            order_gap = std::max(order_gap, std::fabs(p - p_sw));
            total += p;
        }
        joint.push_back(row);
        swapped.push_back(row_sw);
    }

    MemoryRun out;
    out.summary["kind"] = kind_name(sc.kind);
    out.summary["time"] = t;
    out.summary["joint"] = joint;
    out.summary["swapped_order"] = swapped;
    out.summary["order_gap"] = order_gap;
    out.summary["total"] = total;
    return out;
}

MemoryRun run_network(const ScenarioFile& sc) {
    Trajectory traj = simulate(sc.net_config, sc.agents);
    std::size_t n_alts = sc.agents.front().f.size();

    CsvBuilder csv({"t", "agent", "alternative", "f", "q", "p", "M"});
    for (std::size_t s = 0; s < traj.p.size(); ++s) {
        double t = sc.net_config.tau * static_cast<double>(s);
        for (std::size_t i = 0; i < sc.agents.size(); ++i) {
            for (std::size_t n = 0; n < n_alts; ++n) {
                double p = checked_probability(traj.p[s][i][n], "network probability");
                double f = sc.agents[i].f[n];
                csv.row({format_number(t), std::to_string(i + 1), std::to_string(n + 1),
                         format_number(f), format_number(traj.p[s][i][n] - f), format_number(p),
                         format_number(traj.M[s][i])});
            }
        }
    }

    MemoryRun out;
    out.summary["kind"] = kind_name(sc.kind);
    out.summary["steps"] = traj.steps;
    out.summary["regime"] = regime_name(traj.report.regime);
    out.summary["converged"] = traj.report.converged;
    if (traj.report.converged)
        out.summary["converged_at"] = traj.report.converged_at;
    out.summary["recurrence_detected"] = traj.report.recurrence_detected;
    json final_p = json::array();
    for (std::size_t i = 0; i < sc.agents.size(); ++i)
        final_p.push_back(traj.p.back()[i]);
    out.summary["final"] = final_p;

    // Two-agent long-range long-term consensus has a closed form; report
    // it next to the simulated endpoint.
    if (sc.agents.size() == 2 && n_alts == 2 &&
        sc.net_config.interaction == Interaction::long_range &&
        sc.net_config.memory == MemoryKind::long_term &&
        std::fabs(sc.agents[0].q0[0] - sc.agents[1].q0[0]) > 1e-12) {
        double p_star = consensus_fixed_point(sc.agents[0].f[0], sc.agents[1].f[0],
                                              sc.agents[0].q0[0], sc.agents[1].q0[0]);
        out.summary["consensus"] = {
            {"p_star", p_star},
            {"gap_agent_1", std::fabs(traj.p.back()[0][0] - p_star)},
            {"gap_agent_2", std::fabs(traj.p.back()[1][0] - p_star)}};
    }
    out.files.emplace_back(sc.output.path + ".csv", csv.take());
    return out;
}

json pairwise_json(const PairwiseComparison& c) {
    return json{{"first", c.first},     {"second", c.second},   {"f_first", c.f_first},
                {"f_second", c.f_second}, {"q_first", c.q_first}, {"q_second", c.q_second},
                {"p_first", c.p_first}, {"p_second", c.p_second}, {"preferred", c.preferred}};
}

MemoryRun run_paradox(const ScenarioFile& sc) {
    MemoryRun out;
    out.summary["kind"] = kind_name(sc.kind);
    out.summary["name"] = sc.paradox.name;
    const ScenarioInfo* info = find_scenario(sc.paradox.name);
    json expected = json::object();
    if (info)
        for (const auto& [label, value] : info->expected)
            expected[label] = value;
    out.summary["expected"] = expected;

    const std::string& name = sc.paradox.name;
    if (name == "planning") {
        PlanningResult r = planning_paradox(sc.paradox.p_a1);
        out.summary["provenance"] = r.provenance;
        out.summary["feasible"] = r.feasible;
        out.summary["f"] = {{"f1", r.f1}, {"f2", r.f2}};
        out.summary["planning_frame"] = {{"p(A1)", r.p_a1}, {"p(A2)", r.p_a2}};
        if (r.feasible) {
            out.summary["execution_frame"] = {{"p(B1)", r.p_b1}, {"p(B2)", r.p_b2}};
            out.summary["empirical"] = {{"p(B1)", r.empirical_b1}, {"p(B2)", r.empirical_b2}};
        } else {
            // Not probabilities; reported raw so the infeasibility is
            // inspectable.
            out.summary["execution_frame_raw"] = {{"p(B1)", r.p_b1}, {"p(B2)", r.p_b2}};
        }
    } else if (name == "disjunction") {
        DisjunctionResult r = disjunction_effect(sc.paradox.fractions);
        out.summary["provenance"] = r.provenance;
        out.summary["fractions"] = r.fractions;
        out.summary["f"] = {{"f(A1B)", r.f_accept}, {"f(A2B)", r.f_reject}};
        out.summary["p"] = {{"p(A1B)", r.p_accept}, {"p(A2B)", r.p_reject}};
        out.summary["sure_thing_for_f"] = r.sure_thing_for_f;
        out.summary["sure_thing_for_p"] = r.sure_thing_for_p;
        out.summary["empirical"] = {{"p(A1B)", r.empirical_accept},
                                    {"p(A2B)", r.empirical_reject}};
    } else if (name == "fishburn") {
        FishburnResult r = fishburn_intransitivity(sc.paradox.salaries);
        out.summary["provenance"] = r.provenance;
        out.summary["salaries"] = r.salaries;
        json pairs = json::array();
        for (const PairwiseComparison& c : r.pairs)
            pairs.push_back(pairwise_json(c));
        out.summary["pairs"] = pairs;
        out.summary["loop_detected"] = r.loop_detected;
    } else if (name == "break-decay" || name == "break-joint") {
        BreakLoopResult r =
            break_loop(name == "break-decay" ? LoopBreak::decay : LoopBreak::joint_choice,
                       sc.paradox.salaries);
        out.summary["provenance"] = r.provenance;
        out.summary["loop_broken"] = r.loop_broken;
        if (r.mode == LoopBreak::decay) {
            out.summary["pair"] = pairwise_json(r.pair);
        } else {
            out.summary["labels"] = r.labels;
            out.summary["f"] = r.f;
            out.summary["q"] = r.q;
            out.summary["p"] = r.p;
            json ordering = json::array();
            for (std::size_t i : r.ordering)
                ordering.push_back(r.labels[i]);
            out.summary["ordering"] = ordering;
        }
    } else if (name == "order-effect") {
        OrderEffectResult r = order_effect_demo(sc.paradox.seed, sc.paradox.commuting);
        out.summary["provenance"] = r.provenance;
        out.summary["seed"] = r.seed;
        out.summary["commuting"] = r.commuting;
        out.summary["p_ab"] = checked_probability(r.p_ab, "order-effect probability");
        out.summary["p_ba"] = checked_probability(r.p_ba, "order-effect probability");
        out.summary["gap"] = r.gap;
        out.summary["relative_gap"] = r.relative_gap;
    } else {
        throw SchemaError("unknown paradox name \"" + name + "\"");
    }
    return out;
}

MemoryRun run_in_memory(const ScenarioFile& sc) {
    switch (sc.kind) {
    case ScenarioKind::single_decision:
    case ScenarioKind::behavioral:
        return run_behavioral(sc);
    case ScenarioKind::successive:
        return run_successive(sc);
    case ScenarioKind::network:
        return run_network(sc);
    case ScenarioKind::paradox:
        return run_paradox(sc);
    }
    throw ModelError("unhandled scenario kind");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write output file: " + path);
    out << content;
    if (!out)
        throw Error("short write on output file: " + path);
}

// Applies a numeric parameter for sweeps.
void set_parameter(ScenarioFile& sc, const std::string& name, double value) {
    bool probability_kind = sc.kind == ScenarioKind::single_decision ||
                            sc.kind == ScenarioKind::behavioral ||
                            sc.kind == ScenarioKind::successive;
    auto as_positive_count = [&](const char* what) {
        if (value < 1.0 || value != std::floor(value))
            throw SchemaError(std::string("sweep: ") + what + " needs a positive integer, got " +
                              std::to_string(value));
        return static_cast<std::size_t>(value);
    };
    if (name == "generator.rate" && probability_kind) {
        if (value < 0.0)
            throw SchemaError("sweep: generator.rate must be nonnegative");
        sc.generator.rate = value;
        for (StageSpec& stage : sc.stages)
            stage.generator.rate = value;
    } else if (name == "generator.omega" && probability_kind) {
        sc.generator.omega = value;
        for (StageSpec& stage : sc.stages)
            stage.generator.omega = value;
    } else if (name == "network.J" && sc.kind == ScenarioKind::network) {
        if (value < 0.0)
            throw SchemaError("sweep: network.J must be nonnegative");
        sc.net_config.coupling = value;
    } else if (name == "network.tau" && sc.kind == ScenarioKind::network) {
        if (value < 1.0)
            throw SchemaError("sweep: network.tau must be at least 1");
        sc.net_config.tau = value;
    } else if (name == "network.horizon" && sc.kind == ScenarioKind::network) {
        sc.net_config.horizon = as_positive_count("network.horizon");
    } else if (name == "times.stop" && probability_kind) {
        if (value < sc.times.start)
            throw SchemaError("sweep: times.stop must not precede times.start");
        sc.times.stop = value;
        sc.times_given = true;
    } else if (name == "feelings.seed" &&
               (sc.kind == ScenarioKind::single_decision ||
                sc.kind == ScenarioKind::behavioral)) {
        sc.feelings.seed = as_positive_count("feelings.seed");
    } else if (name == "paradox.p_a1" && sc.kind == ScenarioKind::paradox) {
        if (value < 0.0 || value > 1.0)
            throw SchemaError("sweep: paradox.p_a1 must lie in [0, 1]");
        sc.paradox.p_a1 = value;
    } else if (name == "paradox.seed" && sc.kind == ScenarioKind::paradox) {
        sc.paradox.seed = as_positive_count("paradox.seed");
    } else {
        throw SchemaError("sweep: \"" + name + "\" is not a numeric field of this scenario kind");
    }
}

} // namespace

std::string format_number(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const SchemaError*>(&e))
        return 2;
    if (dynamic_cast<const DivergenceError*>(&e))
        return 4;
    if (dynamic_cast<const ModelError*>(&e) || dynamic_cast<const DimensionError*>(&e) ||
        dynamic_cast<const LayoutError*>(&e) || dynamic_cast<const ConditioningError*>(&e) ||
        dynamic_cast<const ConsistencyError*>(&e))
        return 3;
    return 1;
}

RunReport run(const ScenarioFile& scenario) {
    RunReport report;
    auto t0 = std::chrono::steady_clock::now();
    try {
        MemoryRun mem = run_in_memory(scenario);
        for (const auto& [name, content] : mem.files) {
            std::string path = resolve_path(name);
            write_file(path, content);
            report.outputs.push_back(path);
        }
        mem.summary["outputs"] = report.outputs;
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        mem.summary["wall_seconds"] = report.wall_seconds;
        report.summary = mem.summary.dump(2) + "\n";
        std::string summary_path = resolve_path(scenario.output.path + ".summary.json");
        write_file(summary_path, report.summary);
        report.outputs.push_back(summary_path);
    } catch (const Error& e) {
        report.exit_status = exit_code_for(e);
        report.error = e.what();
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return report;
}

RunReport sweep(const ScenarioFile& scenario, const std::string& parameter,
                const std::vector<double>& values) {
    RunReport report;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (values.empty())
            throw SchemaError("sweep: empty value list");

        struct WorkerResult {
            double value;
            std::string path_stem;
            MemoryRun mem;
        };
        std::vector<std::future<WorkerResult>> futures;
        for (std::size_t i = 0; i < values.size(); ++i) {
            ScenarioFile copy = scenario;
            set_parameter(copy, parameter, values[i]);
            copy.output.path = scenario.output.path + "_" + std::to_string(i);
            futures.push_back(std::async(std::launch::async, [copy, value = values[i]]() {
                return WorkerResult{value, copy.output.path, run_in_memory(copy)};
            }));
        }

        // Single collector writes everything.
        json index = json::array();
        for (auto& f : futures) {
            WorkerResult r = f.get();
            json entry;
            entry["value"] = r.value;
            json outputs = json::array();
            for (const auto& [name, content] : r.mem.files) {
                std::string path = resolve_path(name);
                write_file(path, content);
                report.outputs.push_back(path);
                outputs.push_back(path);
            }
            std::string summary_path = resolve_path(r.path_stem + ".summary.json");
            r.mem.summary["outputs"] = outputs;
            write_file(summary_path, r.mem.summary.dump(2) + "\n");
            report.outputs.push_back(summary_path);
            outputs.push_back(summary_path);
            entry["outputs"] = outputs;
            entry["summary"] = r.mem.summary;
            index.push_back(entry);
        }
        json top;
        top["parameter"] = parameter;
        top["runs"] = index;
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        top["wall_seconds"] = report.wall_seconds;
        report.summary = top.dump(2) + "\n";
        std::string index_path = resolve_path(scenario.output.path + ".index.json");
        write_file(index_path, report.summary);
        report.outputs.push_back(index_path);
    } catch (const Error& e) {
        report.exit_status = exit_code_for(e);
        report.error = e.what();
        report.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return report;
}

} // namespace qdt
