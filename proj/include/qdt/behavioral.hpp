#pragma once

#include <vector>

#include "qdt/probability.hpp"
#include "qdt/prospects.hpp"
#include "qdt/quantum_state.hpp"

namespace qdt {

// Decision probability split into its rational fraction f (diagonal in
// the subject index) and attraction factor q (off-diagonal part).
// p = f + q exactly as stored.
struct BehavioralProbability {
    std::size_t alternative = 0;
    double time = 0.0;
    double f = 0.0;
    double q = 0.0;
    double p = 0.0;
};

// Splits p(A_n) = Tr(rho P(A_n z_n)) on a two-factor state
// (alternative factor first, subject factor second).  The feelings must
// have been normalized; an imaginary residue above 1e-10 on f or q is
// reported as a consistency error.
BehavioralProbability decompose(const DensityOperator& state, const AlternativeSet& alternatives,
                                const FeelingAmplitudes& feelings, std::size_t n,
                                double time = 0.0);

// Decomposition along the self-similar evolution at rate gen.rate().
BehavioralProbability evolve_behavioral(const DensityOperator& state0,
                                        const EvolutionGenerator& gen,
                                        const AlternativeSet& alternatives,
                                        const FeelingAmplitudes& feelings, std::size_t n,
                                        double t);

// Decomposition of the window-averaged state; this is the quantity that
// realizes the fast-rate decoherence limit (pointwise unitary q keeps
// oscillating, the window average decays like 1/(g t)).
BehavioralProbability averaged_behavioral(const DensityOperator& state0,
                                          const EvolutionGenerator& gen,
                                          const AlternativeSet& alternatives,
                                          const FeelingAmplitudes& feelings, std::size_t n,
                                          const DecisionWindow& window);

// True when the trajectory is internally consistent (p = f + q), |q|
// never grows, and the final attraction is below the tolerance: the
// quantum probability has handed over to the classical fraction.
bool correspondence_check(const std::vector<BehavioralProbability>& trajectory,
                          double final_tolerance = 1e-3);

} // namespace qdt
