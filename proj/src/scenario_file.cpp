#include "qdt/scenario_file.hpp"

#include "qdt/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qdt {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw SchemaError(msg); }

std::string ctx_key(const std::string& ctx, const std::string& key) {
    return ctx.empty() ? key : ctx + "." + key;
}

const json& need(const json& obj, const char* key, const std::string& ctx) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail("missing key \"" + ctx_key(ctx, key) + "\"");
    return *it;
}

void allow_only(const json& obj, std::initializer_list<const char*> keys, const std::string& ctx) {
    if (!obj.is_object())
        fail((ctx.empty() ? std::string("document") : ctx) + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            fail("unknown key \"" + ctx_key(ctx, it.key()) + "\"");
    }
}

double as_number(const json& v, const std::string& ctx) {
    if (!v.is_number())
        fail("\"" + ctx + "\" must be a number");
    double x = v.get<double>();
    if (!std::isfinite(x))
        fail("\"" + ctx + "\" must be finite");
    return x;
}

std::size_t as_count(const json& v, const std::string& ctx) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        fail("\"" + ctx + "\" must be a nonnegative integer");
    return static_cast<std::size_t>(v.get<long long>());
}

std::string as_string(const json& v, const std::string& ctx) {
    if (!v.is_string())
        fail("\"" + ctx + "\" must be a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& ctx) {
    if (!v.is_boolean())
        fail("\"" + ctx + "\" must be a boolean");
    return v.get<bool>();
}

double as_probability(const json& v, const std::string& ctx) {
    double x = as_number(v, ctx);
    if (x < 0.0 || x > 1.0)
        fail("\"" + ctx + "\" must lie in [0, 1]");
    return x;
}

// A complex entry is either a plain number (real) or a [re, im] pair.
Complex as_complex(const json& v, const std::string& ctx) {
    if (v.is_number())
        return Complex(as_number(v, ctx), 0.0);
    if (v.is_array() && v.size() == 2)
        return Complex(as_number(v[0], ctx + "[0]"), as_number(v[1], ctx + "[1]"));
    fail("\"" + ctx + "\" must be a number or a [re, im] pair");
}

CVector as_cvector(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty())
        fail("\"" + ctx + "\" must be a nonempty array");
    CVector out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_complex(v[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

// Matrix given as a list of columns.
ComplexMatrix as_matrix(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty())
        fail("\"" + ctx + "\" must be a nonempty array of columns");
    std::vector<CVector> cols;
    for (std::size_t j = 0; j < v.size(); ++j)
        cols.push_back(as_cvector(v[j], ctx + "[" + std::to_string(j) + "]"));
    std::size_t rows = cols[0].size();
    for (const CVector& c : cols)
        if (c.size() != rows)
            fail("\"" + ctx + "\" columns must share one length");
    ComplexMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    return m;
}

std::vector<double> as_real_vector(const json& v, const std::string& ctx) {
    if (!v.is_array() || v.empty())
        fail("\"" + ctx + "\" must be a nonempty array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

GeneratorSpec parse_generator_fields(const json& g, const std::string& ctx) {
    GeneratorSpec spec;
    spec.eigenvalues = as_real_vector(need(g, "eigenvalues", ctx), ctx_key(ctx, "eigenvalues"));
    if (g.contains("rate")) {
        spec.rate = as_number(g["rate"], ctx_key(ctx, "rate"));
        if (spec.rate < 0.0)
            fail("\"" + ctx_key(ctx, "rate") + "\" must be nonnegative");
    }
    if (g.contains("profile")) {
        const json& p = g["profile"];
        if (p.is_string()) {
            if (p.get<std::string>() != "constant")
                fail("\"" + ctx_key(ctx, "profile") + "\" must be \"constant\" or a cosine object");
        } else {
            allow_only(p, {"type", "omega"}, ctx_key(ctx, "profile"));
            std::string type = as_string(need(p, "type", ctx_key(ctx, "profile")),
                                         ctx_key(ctx, "profile.type"));
            if (type != "cosine")
                fail("\"" + ctx_key(ctx, "profile.type") + "\" must be \"cosine\"");
            spec.cosine = true;
            if (p.contains("omega"))
                spec.omega = as_number(p["omega"], ctx_key(ctx, "profile.omega"));
        }
    }
    return spec;
}

StateSpec parse_state(const json& s, const std::string& ctx) {
    allow_only(s, {"pure", "mixture"}, ctx);
    StateSpec spec;
    bool has_pure = s.contains("pure");
    bool has_mix = s.contains("mixture");
    if (has_pure == has_mix)
        fail("\"" + ctx + "\" needs exactly one of \"pure\" or \"mixture\"");
    if (has_pure) {
        spec.pure = true;
        spec.vector = as_cvector(s["pure"], ctx_key(ctx, "pure"));
        return spec;
    }
    spec.pure = false;
    const json& m = s["mixture"];
    allow_only(m, {"weights", "vectors"}, ctx_key(ctx, "mixture"));
    const json& w = need(m, "weights", ctx_key(ctx, "mixture"));
    if (!w.is_array() || w.empty())
        fail("\"" + ctx_key(ctx, "mixture.weights") + "\" must be a nonempty array");
    for (std::size_t i = 0; i < w.size(); ++i)
        spec.weights.push_back(
            as_probability(w[i], ctx_key(ctx, "mixture.weights[" + std::to_string(i) + "]")));
    const json& vecs = need(m, "vectors", ctx_key(ctx, "mixture"));
    if (!vecs.is_array() || vecs.size() != spec.weights.size())
        fail("\"" + ctx_key(ctx, "mixture.vectors") + "\" must match the weight count");
    for (std::size_t i = 0; i < vecs.size(); ++i)
        spec.vectors.push_back(
            as_cvector(vecs[i], ctx_key(ctx, "mixture.vectors[" + std::to_string(i) + "]")));
    return spec;
}

TimesSpec parse_times(const json& t, const std::string& ctx) {
    allow_only(t, {"start", "stop", "steps"}, ctx);
    TimesSpec spec;
    if (t.contains("start"))
        spec.start = as_number(t["start"], ctx_key(ctx, "start"));
    if (t.contains("stop"))
        spec.stop = as_number(t["stop"], ctx_key(ctx, "stop"));
    if (t.contains("steps"))
        spec.steps = as_count(t["steps"], ctx_key(ctx, "steps"));
    if (spec.steps == 0)
        fail("\"" + ctx_key(ctx, "steps") + "\" must be positive");
    if (spec.stop < spec.start)
        fail("\"" + ctx_key(ctx, "stop") + "\" must not precede start");
    if (spec.steps > 1 && spec.stop == spec.start)
        fail("\"" + ctx + "\": several samples need a nonzero interval");
    return spec;
}

OutputSpec parse_output(const json& o, const std::string& ctx) {
    allow_only(o, {"path", "format"}, ctx);
    OutputSpec spec;
    if (o.contains("path")) {
        spec.path = as_string(o["path"], ctx_key(ctx, "path"));
        if (spec.path.empty())
            fail("\"" + ctx_key(ctx, "path") + "\" must be nonempty");
    }
    if (o.contains("format")) {
        spec.format = as_string(o["format"], ctx_key(ctx, "format"));
        if (spec.format != "csv")
            fail("\"" + ctx_key(ctx, "format") + "\" must be \"csv\"");
    }
    return spec;
}

FeelingsSpec parse_feelings(const json& f, const std::string& ctx) {
    allow_only(f, {"seed", "distribution"}, ctx);
    FeelingsSpec spec;
    if (f.contains("seed"))
        spec.seed = static_cast<std::uint64_t>(as_count(f["seed"], ctx_key(ctx, "seed")));
    if (f.contains("distribution")) {
        std::string d = as_string(f["distribution"], ctx_key(ctx, "distribution"));
        if (d == "complex-gaussian")
            spec.distribution = FeelingDistribution::complex_gaussian;
        else if (d == "uniform-modulus")
            spec.distribution = FeelingDistribution::uniform_modulus;
        else
            fail("\"" + ctx_key(ctx, "distribution") +
                 "\" must be \"complex-gaussian\" or \"uniform-modulus\"");
    }
    return spec;
}

std::vector<CVector> parse_alternatives(const json& a, const std::string& ctx) {
    if (!a.is_array() || a.empty())
        fail("\"" + ctx + "\" must be a nonempty array of vectors");
    std::vector<CVector> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(as_cvector(a[i], ctx + "[" + std::to_string(i) + "]"));
    return out;
}

void parse_network(const json& n, ScenarioFile& file) {
    allow_only(n,
               {"N", "J", "tau", "interaction", "memory", "horizon", "agents", "neighbors"},
               "network");
    std::size_t count = as_count(need(n, "N", "network"), "network.N");
    if (count < 2)
        fail("\"network.N\" must be at least 2");
    if (n.contains("J")) {
        file.net_config.coupling = as_number(n["J"], "network.J");
        if (file.net_config.coupling < 0.0)
            fail("\"network.J\" must be nonnegative");
    }
    if (n.contains("tau")) {
        file.net_config.tau = as_number(n["tau"], "network.tau");
        if (file.net_config.tau < 1.0)
            fail("\"network.tau\" must be at least 1");
    }
    if (n.contains("interaction")) {
        std::string s = as_string(n["interaction"], "network.interaction");
        if (s == "long-range")
            file.net_config.interaction = Interaction::long_range;
        else if (s == "short-range")
            file.net_config.interaction = Interaction::short_range;
        else
            fail("\"network.interaction\" must be \"long-range\" or \"short-range\"");
    }
    if (n.contains("memory")) {
        std::string s = as_string(n["memory"], "network.memory");
        if (s == "long-term")
            file.net_config.memory = MemoryKind::long_term;
        else if (s == "short-term")
            file.net_config.memory = MemoryKind::short_term;
        else
            fail("\"network.memory\" must be \"long-term\" or \"short-term\"");
    }
    if (n.contains("horizon")) {
        file.net_config.horizon = as_count(n["horizon"], "network.horizon");
        if (file.net_config.horizon == 0)
            fail("\"network.horizon\" must be positive");
    }
    const json& agents = need(n, "agents", "network");
    if (!agents.is_array() || agents.size() != count)
        fail("\"network.agents\" must list exactly N agents");
    for (std::size_t i = 0; i < agents.size(); ++i) {
        std::string actx = "network.agents[" + std::to_string(i) + "]";
        allow_only(agents[i], {"f", "q0"}, actx);
        Agent a;
        const json& fv = need(agents[i], "f", actx);
        if (!fv.is_array() || fv.empty())
            fail("\"" + actx + ".f\" must be a nonempty array");
        for (std::size_t k = 0; k < fv.size(); ++k)
            a.f.push_back(as_probability(fv[k], actx + ".f[" + std::to_string(k) + "]"));
        a.q0 = as_real_vector(need(agents[i], "q0", actx), actx + ".q0");
        try {
            a.validate();
        } catch (const Error& e) {
            fail(actx + ": " + e.what());
        }
        file.agents.push_back(a);
    }
    if (n.contains("neighbors")) {
        const json& nb = n["neighbors"];
        if (!nb.is_array() || nb.size() != count)
            fail("\"network.neighbors\" must list one neighbor set per agent");
        for (std::size_t i = 0; i < nb.size(); ++i) {
            std::string nctx = "network.neighbors[" + std::to_string(i) + "]";
            if (!nb[i].is_array())
                fail("\"" + nctx + "\" must be an array");
            std::vector<std::size_t> row;
            for (std::size_t k = 0; k < nb[i].size(); ++k)
                row.push_back(as_count(nb[i][k], nctx + "[" + std::to_string(k) + "]"));
            file.net_config.neighbors.push_back(row);
        }
    }
    try {
        file.net_config.validate(count);
    } catch (const Error& e) {
        fail(std::string("network: ") + e.what());
    }
}

void parse_paradox(const json& p, ScenarioFile& file) {
    allow_only(p, {"name", "inputs"}, "paradox");
    file.paradox.name = as_string(need(p, "name", "paradox"), "paradox.name");
    const std::string& name = file.paradox.name;
    if (!find_scenario(name))
        fail("\"paradox.name\": unknown scenario \"" + name + "\"");
    if (!p.contains("inputs"))
        return;
    const json& in = p["inputs"];
    if (name == "planning") {
        allow_only(in, {"p_a1"}, "paradox.inputs");
        if (in.contains("p_a1"))
            file.paradox.p_a1 = as_probability(in["p_a1"], "paradox.inputs.p_a1");
    } else if (name == "disjunction") {
        allow_only(in, {"fractions"}, "paradox.inputs");
        if (in.contains("fractions")) {
            const json& fr = in["fractions"];
            if (!fr.is_array() || fr.size() != 4)
                fail("\"paradox.inputs.fractions\" must hold four entries");
            for (std::size_t i = 0; i < 4; ++i)
                file.paradox.fractions[i] =
                    as_probability(fr[i], "paradox.inputs.fractions[" + std::to_string(i) + "]");
        }
    } else if (name == "fishburn" || name == "break-decay" || name == "break-joint") {
        allow_only(in, {"salaries"}, "paradox.inputs");
        if (in.contains("salaries")) {
            const json& sal = in["salaries"];
            if (!sal.is_array() || sal.size() != 3)
                fail("\"paradox.inputs.salaries\" must hold three entries");
            for (std::size_t i = 0; i < 3; ++i) {
                file.paradox.salaries[i] =
                    as_number(sal[i], "paradox.inputs.salaries[" + std::to_string(i) + "]");
                if (file.paradox.salaries[i] <= 0.0)
                    fail("\"paradox.inputs.salaries\" must be positive");
            }
        }
    } else if (name == "order-effect") {
        allow_only(in, {"seed", "commuting"}, "paradox.inputs");
        if (in.contains("seed"))
            file.paradox.seed =
                static_cast<std::uint64_t>(as_count(in["seed"], "paradox.inputs.seed"));
        if (in.contains("commuting"))
            file.paradox.commuting = as_bool(in["commuting"], "paradox.inputs.commuting");
    }
}

void parse_stages(const json& g, ScenarioFile& file, std::size_t total_dim) {
    allow_only(g, {"stages"}, "generator");
    const json& stages = need(g, "stages", "generator");
    if (!stages.is_array() || stages.empty())
        fail("\"generator.stages\" must be a nonempty array");
    double prev_end = -1e300;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        std::string sctx = "generator.stages[" + std::to_string(i) + "]";
        allow_only(stages[i], {"eigenvalues", "rate", "profile", "window", "bases"}, sctx);
        StageSpec stage;
        stage.generator = parse_generator_fields(stages[i], sctx);
        if (stage.generator.eigenvalues.size() != total_dim)
            fail("\"" + sctx + ".eigenvalues\" must hold " + std::to_string(total_dim) +
                 " entries");
        const json& w = need(stages[i], "window", sctx);
        allow_only(w, {"start", "duration"}, sctx + ".window");
        stage.window.start = as_number(need(w, "start", sctx + ".window"), sctx + ".window.start");
        stage.window.duration =
            as_number(need(w, "duration", sctx + ".window"), sctx + ".window.duration");
        if (stage.window.duration <= 0.0)
            fail("\"" + sctx + ".window.duration\" must be positive");
        if (stage.window.start < prev_end - 1e-12)
            fail("\"" + sctx + ".window\" overlaps the previous stage");
        prev_end = stage.window.end();
        if (stages[i].contains("bases")) {
            const json& bases = stages[i]["bases"];
            allow_only(bases, {"A", "B", "S"}, sctx + ".bases");
            for (auto it = bases.begin(); it != bases.end(); ++it)
                stage.bases[it.key()] = as_matrix(*it, sctx + ".bases." + it.key());
        }
        file.stages.push_back(stage);
    }
}

ScenarioFile parse_document(const json& doc, const std::string& name) {
    if (!doc.is_object())
        fail("scenario document must be a JSON object");
    ScenarioFile file;
    file.source_path = name;

    std::string kind = as_string(need(doc, "kind", ""), "kind");
    if (kind == "single-decision")
        file.kind = ScenarioKind::single_decision;
    else if (kind == "successive")
        file.kind = ScenarioKind::successive;
    else if (kind == "behavioral")
        file.kind = ScenarioKind::behavioral;
    else if (kind == "network")
        file.kind = ScenarioKind::network;
    else if (kind == "paradox")
        file.kind = ScenarioKind::paradox;
    else
        fail("\"kind\" must be one of single-decision, successive, behavioral, network, paradox");

    switch (file.kind) {
    case ScenarioKind::single_decision:
    case ScenarioKind::behavioral: {
        allow_only(doc,
                   {"kind", "dimensions", "generator", "state", "alternatives", "feelings",
                    "times", "output"},
                   "");
        const json& dims = need(doc, "dimensions", "");
        if (file.kind == ScenarioKind::single_decision) {
            allow_only(dims, {"alternative"}, "dimensions");
            file.subject_dim = 1;
        } else {
            allow_only(dims, {"alternative", "subject"}, "dimensions");
            file.subject_dim = as_count(need(dims, "subject", "dimensions"), "dimensions.subject");
        }
        file.alternative_dim =
            as_count(need(dims, "alternative", "dimensions"), "dimensions.alternative");
        if (file.alternative_dim < 2)
            fail("\"dimensions.alternative\" must be at least 2");
        if (file.subject_dim < 1)
            fail("\"dimensions.subject\" must be at least 1");
        std::size_t total = file.alternative_dim * file.subject_dim;
        if (total > 4096)
            fail("\"dimensions\": total dimension too large");
        const json& g = need(doc, "generator", "");
        allow_only(g, {"eigenvalues", "rate", "profile"}, "generator");
        file.generator = parse_generator_fields(g, "generator");
        if (file.generator.eigenvalues.size() != total)
            fail("\"generator.eigenvalues\" must hold " + std::to_string(total) + " entries");
        file.state = parse_state(need(doc, "state", ""), "state");
        if (doc.contains("alternatives"))
            file.alternatives = parse_alternatives(doc["alternatives"], "alternatives");
        if (doc.contains("feelings"))
            file.feelings = parse_feelings(doc["feelings"], "feelings");
        if (doc.contains("times")) {
            file.times = parse_times(doc["times"], "times");
            file.times_given = true;
        }
        break;
    }
    case ScenarioKind::successive: {
        allow_only(doc, {"kind", "dimensions", "generator", "state", "times", "output"}, "");
        const json& dims = need(doc, "dimensions", "");
        allow_only(dims, {"first", "second", "subject"}, "dimensions");
        file.first_dim = as_count(need(dims, "first", "dimensions"), "dimensions.first");
        file.second_dim = as_count(need(dims, "second", "dimensions"), "dimensions.second");
        file.subject_dim = 1;
        if (dims.contains("subject"))
            file.subject_dim = as_count(dims["subject"], "dimensions.subject");
        if (file.first_dim < 2 || file.second_dim < 2)
            fail("\"dimensions\": both decision factors need at least 2 alternatives");
        if (file.subject_dim < 1)
            fail("\"dimensions.subject\" must be at least 1");
        std::size_t total = file.first_dim * file.second_dim * file.subject_dim;
        if (total > 4096)
            fail("\"dimensions\": total dimension too large");
        parse_stages(need(doc, "generator", ""), file, total);
        file.state = parse_state(need(doc, "state", ""), "state");
        if (doc.contains("times")) {
            file.times = parse_times(doc["times"], "times");
            file.times_given = true;
        }
        break;
    }
    case ScenarioKind::network: {
        allow_only(doc, {"kind", "network", "output"}, "");
        parse_network(need(doc, "network", ""), file);
        break;
    }
    case ScenarioKind::paradox: {
        allow_only(doc, {"kind", "paradox", "output"}, "");
        parse_paradox(need(doc, "paradox", ""), file);
        break;
    }
    }

    if (doc.contains("output"))
        file.output = parse_output(doc["output"], "output");
    return file;
}

} // namespace

const char* kind_name(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::single_decision:
        return "single-decision";
    case ScenarioKind::successive:
        return "successive";
    case ScenarioKind::behavioral:
        return "behavioral";
    case ScenarioKind::network:
        return "network";
    case ScenarioKind::paradox:
        return "paradox";
    }
    return "unknown";
}

EigenProfile GeneratorSpec::profile() const {
    if (!cosine)
        return EigenProfile::constant_one();
    double w = omega;
    return EigenProfile::from_function([w](double t) { return std::cos(w * t); });
}

ScenarioFile parse_scenario_text(const std::string& text, const std::string& name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(name + ": " + e.what());
    }
    return parse_document(doc, name);
}

ScenarioFile parse_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

std::string builtin_scenario_json(const std::string& name) {
    const ScenarioInfo* info = find_scenario(name);
    if (!info)
        throw SchemaError("unknown built-in scenario \"" + name + "\"");
    json doc;
    doc["kind"] = "paradox";
    doc["paradox"]["name"] = name;
    if (name == "planning")
        doc["paradox"]["inputs"] = {{"p_a1", 0.85}};
    else if (name == "disjunction")
        doc["paradox"]["inputs"] = {{"fractions", {0.345, 0.295, 0.155, 0.205}}};
    else if (name == "fishburn" || name == "break-decay" || name == "break-joint")
        doc["paradox"]["inputs"] = {{"salaries", {65000.0, 58000.0, 50000.0}}};
    else if (name == "order-effect")
        doc["paradox"]["inputs"] = {{"seed", kOrderEffectSeed}, {"commuting", false}};
    doc["output"] = {{"path", name}, {"format", "csv"}};
    return doc.dump(2) + "\n";
}

} // namespace qdt
