#include "qdt/probability.hpp"

#include <cmath>

#include "qdt/errors.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

namespace {

constexpr double kImagResidue = 1e-12;

// Label of the first factor whose dimension matches the projector, or
// empty when the projector spans the whole space.
std::string target_label(const SpaceLayout& layout, std::size_t proj_dim) {
    if (proj_dim == layout.total_dim() && layout.factor_count() >= 1) {
        if (layout.factor_count() == 1) return layout.factor(0).label;
        return {};
    }
    for (const auto& f : layout.factors())
        if (f.dim == proj_dim) return f.label;
    throw LayoutError("projector matches no factor of the state");
}

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > kImagResidue)
        throw ConsistencyError(std::string(what) + ": imaginary residue above tolerance");
    return z.real();
}

} // namespace

void ProbabilityRecord::validate() const {
    if (!(value >= -tol::kOrthonormal) || !(value <= 1.0 + tol::kOrthonormal))
        throw ModelError("probability outside [0, 1]: " + context);
}

double single_probability(const DensityOperator& state, const ComplexMatrix& proj) {
    if (!proj.square()) throw DimensionError("projector must be square");
    if (proj.rows() == state.dim())
        return real_checked(trace_product(state.matrix(), proj), "single_probability");
    const std::string label = target_label(state.layout(), proj.rows());
    const DensityOperator reduced = reduce(state, {label});
    return real_checked(trace_product(reduced.matrix(), proj), "single_probability");
}

double evolved_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                           const ComplexMatrix& proj, double t) {
    if (!(state0.layout() == gen.layout()))
        throw LayoutError("generator layout does not match the state");
    const SpaceLayout& layout = state0.layout();
    const ComplexMatrix& v = gen.basis();
    const ComplexMatrix rho_eig = v.adjoint() * state0.matrix() * v;

    CVector phases(state0.dim());
    for (std::size_t u = 0; u < phases.size(); ++u) phases[u] = gen.phase(u, 0.0, t);

    Complex p{0.0, 0.0};
    if (proj.rows() == state0.dim() && layout.factor_count() > 1) {
        const ComplexMatrix p_eig = v.adjoint() * proj * v;
        for (std::size_t u = 0; u < phases.size(); ++u)
            for (std::size_t w = 0; w < phases.size(); ++w)
                p += phases[u] * rho_eig(u, w) * std::conj(phases[w]) * p_eig(w, u);
        return real_checked(p, "evolved_probability");
    }

    // Factor-local projector: the double sum runs over the two indices
    // of the decision factor while every other eigenlabel stays fixed.
    const std::string label = target_label(layout, proj.rows());
    const std::size_t pos = layout.position(label);
    const std::size_t fdim = layout.factor(pos).dim;
    const ComplexMatrix& vf = gen.factor_basis(label);
    const ComplexMatrix p_eig = vf.adjoint() * proj * vf;

    std::vector<std::size_t> digits(layout.factor_count());
    for (std::size_t rest = 0; rest < state0.dim() / fdim; ++rest) {
        // Spread `rest` over the non-target factors.
        std::size_t r = rest;
        for (std::size_t i = layout.factor_count(); i-- > 0;) {
            if (i == pos) continue;
            digits[i] = r % layout.factor(i).dim;
            r /= layout.factor(i).dim;
        }
        for (std::size_t a1 = 0; a1 < fdim; ++a1) {
            digits[pos] = a1;
            const std::size_t u = layout.compose(digits);
            for (std::size_t a2 = 0; a2 < fdim; ++a2) {
                digits[pos] = a2;
                const std::size_t w = layout.compose(digits);
                p += phases[u] * rho_eig(u, w) * std::conj(phases[w]) * p_eig(a2, a1);
            }
        }
    }
    return real_checked(p, "evolved_probability");
}

double limit_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                         const ComplexMatrix& proj, double t, LimitMode mode) {
    (void)t; // both limits are stationary
    if (!(state0.layout() == gen.layout()))
        throw LayoutError("generator layout does not match the state");
    if (mode == LimitMode::slow) return single_probability(state0, proj);

    const std::string label = target_label(state0.layout(), proj.rows());
    if (label.empty()) {
        const DensityOperator frozen = dephase(state0, gen.basis());
        return real_checked(trace_product(frozen.matrix(), proj), "limit_probability");
    }
    DensityOperator reduced = state0.layout().factor_count() == 1 ? state0
                                                                  : reduce(state0, {label});
    const DensityOperator frozen = dephase(reduced, gen.factor_basis(label));
    return real_checked(trace_product(frozen.matrix(), proj), "limit_probability");
}

double post_decision_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                                 const AlternativeSet& alternatives, std::size_t n, double t_n,
                                 std::size_t m, double t) {
    if (!(t > t_n)) throw ModelError("readout time must follow the decision time");
    const DensityOperator at_tn = evolve(state0, gen, 0.0, t_n);
    const DensityOperator conditioned = luders_update(at_tn, projector(alternatives, n));
    const DensityOperator at_t = evolve(conditioned, gen, t_n, t);
    return single_probability(at_t, projector(alternatives, m));
}

double luders_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                          const AlternativeSet& alternatives, double t_n, std::size_t n,
                          std::size_t m) {
    DensityOperator at_tn = evolve(state0, gen, 0.0, t_n);
    if (at_tn.layout().factor_count() > 1) {
        const std::string label = target_label(at_tn.layout(), alternatives.dim());
        at_tn = reduce(at_tn, {label});
    }
    const DensityOperator conditioned = luders_update(at_tn, projector(alternatives, n));
    return single_probability(conditioned, projector(alternatives, m));
}

double wigner_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                          const AlternativeSet& alternatives, double t_n, std::size_t n,
                          std::size_t m) {
    DensityOperator at_tn = evolve(state0, gen, 0.0, t_n);
    if (at_tn.layout().factor_count() > 1) {
        const std::string label = target_label(at_tn.layout(), alternatives.dim());
        at_tn = reduce(at_tn, {label});
    }
    const ComplexMatrix pn = projector(alternatives, n);
    const ComplexMatrix pm = projector(alternatives, m);
    return real_checked(trace_product(at_tn.matrix(), pn * pm * pn), "wigner_probability");
}

Complex kirkwood(const DensityOperator& state, const AlternativeSet& b_set, std::size_t k,
                 const AlternativeSet& a_set, std::size_t n) {
    if (a_set.dim() != b_set.dim())
        throw DimensionError("both alternative families must share one space");
    DensityOperator rho = state;
    if (state.dim() != a_set.dim()) {
        const std::string label = target_label(state.layout(), a_set.dim());
        rho = reduce(state, {label});
    }
    return trace_product(rho.matrix(), projector(b_set, k) * projector(a_set, n));
}

SuccessiveProcess::SuccessiveProcess(SpaceLayout layout, AlternativeSet first_alternatives,
                                     AlternativeSet second_alternatives,
                                     std::vector<DecisionStage> stages)
    : layout_(std::move(layout)), first_(std::move(first_alternatives)),
      second_(std::move(second_alternatives)), stages_(std::move(stages)) {
    if (stages_.empty()) throw ModelError("successive process needs at least one stage");
    if (!layout_.has_label("A") || !layout_.has_label("B"))
        throw LayoutError("successive process expects factors labeled A and B");
    if (first_.dim() != layout_.dim_of("A") || second_.dim() != layout_.dim_of("B"))
        throw LayoutError("alternative families do not match the A/B factors");
    for (const DecisionStage& s : stages_) {
        s.window.validate();
        if (!(s.generator.layout() == layout_))
            throw LayoutError("stage generator layout does not match the process");
    }
    for (std::size_t i = 1; i < stages_.size(); ++i)
        if (stages_[i].window.start < stages_[i - 1].window.end() - 1e-15)
            throw ModelError("decision windows overlap");
}

DensityOperator SuccessiveProcess::state_at(const DensityOperator& state0, double t) const {
    if (!(state0.layout() == layout_)) throw LayoutError("state layout does not match the process");
    DensityOperator rho = state0;
    if (t >= 0.0) {
        for (const DecisionStage& s : stages_) {
            if (s.window.start >= t) break;
            rho = evolve(rho, s.generator, s.window.start, std::min(s.window.end(), t));
        }
        return rho;
    }
    // Inverse propagator to |t|: stages in reverse with reversed
    // integration limits.
    const double horizon = -t;
    for (std::size_t i = stages_.size(); i-- > 0;) {
        const DecisionStage& s = stages_[i];
        if (s.window.start >= horizon) continue;
        rho = evolve(rho, s.generator, std::min(s.window.end(), horizon), s.window.start);
    }
    return rho;
}

SuccessiveProcess SuccessiveProcess::swapped() const {
    // Reverse the application order: the stage that acted last now acts
    // first.  Window durations travel with their generators, so each
    // stage accumulates exactly the phase it had before the swap; the
    // idle gaps between windows are preserved.
    std::vector<double> gaps;
    for (std::size_t i = 1; i < stages_.size(); ++i)
        gaps.push_back(stages_[i].window.start - stages_[i - 1].window.end());
    std::vector<DecisionStage> reversed(stages_.rbegin(), stages_.rend());
    double cursor = stages_.front().window.start;
    for (std::size_t i = 0; i < reversed.size(); ++i) {
        reversed[i].window.start = cursor;
        cursor = reversed[i].window.end();
        if (i < gaps.size()) cursor += gaps[i];
    }
    SuccessiveProcess out(*this);
    out.stages_ = std::move(reversed);
    return out;
}

JointProbabilityRecord joint_probability(const SuccessiveProcess& process,
                                         const DensityOperator& state0, std::size_t n,
                                         std::size_t k, double t) {
    const DensityOperator at_t = process.state_at(state0, t);
    const ComplexMatrix op =
        embed(projector(process.second_alternatives(), k), process.layout(), {"B"}) *
        embed(projector(process.first_alternatives(), n), process.layout(), {"A"});
    const Complex z = trace_product(at_t.matrix(), op);
    if (std::abs(z.imag()) > kImagResidue)
        throw ConsistencyError("joint probability: imaginary residue above tolerance");
    JointProbabilityRecord record;
    record.value = z.real();
    record.first = n;
    record.second = k;
    record.time = t;
    return record;
}

double behavioral_joint(const DensityOperator& state, const SpaceLayout& layout,
                        const ProspectOperator& prospect_a, const ProspectOperator& prospect_b) {
    if (!(state.layout() == layout)) throw LayoutError("state layout mismatch");
    const ComplexMatrix op = embed(prospect_b.matrix, layout, {"B", "SB"}) *
                             embed(prospect_a.matrix, layout, {"A", "SA"});
    return real_checked(trace_product(state.matrix(), op), "behavioral_joint");
}

std::pair<FeelingAmplitudes, FeelingAmplitudes> normalize_joint_feelings(
    const DensityOperator& state, const AlternativeSet& a_set, const AlternativeSet& b_set,
    const FeelingAmplitudes& feelings_a, const FeelingAmplitudes& feelings_b) {
    const SpaceLayout& layout = state.layout();
    double total = 0.0;
    for (std::size_t n = 0; n < a_set.size(); ++n) {
        const ProspectOperator pa = prospect_operator(a_set, n, feelings_a);
        for (std::size_t k = 0; k < b_set.size(); ++k) {
            const ProspectOperator pb = prospect_operator(b_set, k, feelings_b);
            total += behavioral_joint(state, layout, pa, pb);
        }
    }
    if (!(total > tol::kStrict))
        throw ModelError("total joint prospect weight vanishes; feelings cannot be normalized");
    const double scale = std::pow(total, -0.25);
    FeelingAmplitudes a = feelings_a;
    FeelingAmplitudes b = feelings_b;
    for (Complex& z : a.b) z *= scale;
    for (Complex& z : b.b) z *= scale;
    a.normalized = true;
    b.normalized = true;
    return {a, b};
}

} // namespace qdt
