#include "qdt/behavioral.hpp"

#include <cmath>

#include "qdt/errors.hpp"
#include "qdt/tolerances.hpp"

namespace qdt {

namespace {

constexpr double kResidue = 1e-10;

void require_behavioral_layout(const DensityOperator& state, const AlternativeSet& alternatives,
                               const FeelingAmplitudes& feelings) {
    if (state.layout().factor_count() != 2)
        throw LayoutError("behavioral decomposition expects alternative (x) subject factors");
    if (state.layout().factor(0).dim != alternatives.dim())
        throw LayoutError("alternative vectors do not match the first factor");
    if (state.layout().factor(1).dim != feelings.subject_dim)
        throw LayoutError("feeling columns do not match the subject factor");
    if (feelings.alternatives != alternatives.size())
        throw DimensionError("feeling rows do not match the alternative count");
    if (!feelings.normalized)
        throw ModelError("feelings are not normalized (weak resolution of unity)");
}

} // namespace

BehavioralProbability decompose(const DensityOperator& state, const AlternativeSet& alternatives,
                                const FeelingAmplitudes& feelings, std::size_t n, double time) {
    require_behavioral_layout(state, alternatives, feelings);
    const std::size_t da = alternatives.dim();
    const std::size_t ds = feelings.subject_dim;
    const CVector& an = alternatives.vector(n);
    const ComplexMatrix& rho = state.matrix();

    // m(alpha, beta) = <alpha A_n| rho |A_n beta>
    ComplexMatrix m(ds, ds);
    for (std::size_t alpha = 0; alpha < ds; ++alpha)
        for (std::size_t beta = 0; beta < ds; ++beta) {
            Complex s{0.0, 0.0};
            for (std::size_t a1 = 0; a1 < da; ++a1)
                for (std::size_t a2 = 0; a2 < da; ++a2)
                    s += std::conj(an[a1]) * rho(a1 * ds + alpha, a2 * ds + beta) * an[a2];
            m(alpha, beta) = s;
        }

    Complex f{0.0, 0.0};
    Complex q{0.0, 0.0};
    for (std::size_t alpha = 0; alpha < ds; ++alpha) {
        for (std::size_t beta = 0; beta < ds; ++beta) {
            const Complex term =
                std::conj(feelings.at(n, alpha)) * feelings.at(n, beta) * m(alpha, beta);
            if (alpha == beta)
                f += term;
            else
                q += term;
        }
    }
    if (std::abs(f.imag()) > kResidue || std::abs(q.imag()) > kResidue)
        throw ConsistencyError("behavioral decomposition: imaginary residue above tolerance");

    BehavioralProbability out;
    out.alternative = n;
    out.time = time;
    out.f = f.real();
    out.q = q.real();
    out.p = out.f + out.q;
    return out;
}

BehavioralProbability evolve_behavioral(const DensityOperator& state0,
                                        const EvolutionGenerator& gen,
                                        const AlternativeSet& alternatives,
                                        const FeelingAmplitudes& feelings, std::size_t n,
                                        double t) {
    return decompose(evolve(state0, gen, 0.0, t), alternatives, feelings, n, t);
}

BehavioralProbability averaged_behavioral(const DensityOperator& state0,
                                          const EvolutionGenerator& gen,
                                          const AlternativeSet& alternatives,
                                          const FeelingAmplitudes& feelings, std::size_t n,
                                          const DecisionWindow& window) {
    const DensityOperator averaged = time_averaged_state(state0, gen, window);
    const double midpoint = window.start + 0.5 * window.duration;
    return decompose(averaged, alternatives, feelings, n, midpoint);
}

bool correspondence_check(const std::vector<BehavioralProbability>& trajectory,
                          double final_tolerance) {
    if (trajectory.empty()) return false;
    double previous = std::abs(trajectory.front().q);
    for (const BehavioralProbability& b : trajectory) {
        if (std::abs(b.p - b.f - b.q) > tol::kStrict) return false;
        const double mag = std::abs(b.q);
        if (mag > previous + tol::kStrict) return false;
        previous = mag;
    }
    return std::abs(trajectory.back().q) <= final_tolerance;
}

} // namespace qdt
