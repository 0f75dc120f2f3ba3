#pragma once

#include <string>
#include <vector>

#include "qdt/prospects.hpp"
#include "qdt/quantum_state.hpp"
#include "qdt/tensor.hpp"

namespace qdt {

// A single probability evaluation, tagged for reporting.
struct ProbabilityRecord {
    double value = 0.0;
    double time = 0.0;
    std::size_t alternative = 0;
    std::string context;

    void validate() const;
};

// Tr(rho * P).  When the state lives on a composite space and the
// projector is factor-sized, the state is first reduced onto the first
// factor of matching dimension.
double single_probability(const DensityOperator& state, const ComplexMatrix& proj);

// p(A_n, t) for the self-similar evolution, written as the explicit
// eigenbasis double sum: phases attach to eigenlabels, the projector
// contributes its matrix elements in the generator basis.
double evolved_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                           const ComplexMatrix& proj, double t);

enum class LimitMode { slow, fast };

// Rate-parameter limits: slow keeps the initial reduced state frozen,
// fast dephases it in the generator basis of the decision factor.
double limit_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                         const ComplexMatrix& proj, double t, LimitMode mode);

// Evolve to t_n, condition on A_n (Luders), keep evolving to t, then
// read out A_m.
double post_decision_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                                 const AlternativeSet& alternatives, std::size_t n, double t_n,
                                 std::size_t m, double t);

// Probability of A_m under the Luders state conditioned on A_n at t_n.
double luders_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                          const AlternativeSet& alternatives, double t_n, std::size_t n,
                          std::size_t m);

// Wigner's conditional form Tr(P(A_n) rho(t_n) P(A_n) P(A_m)).
double wigner_probability(const DensityOperator& state0, const EvolutionGenerator& gen,
                          const AlternativeSet& alternatives, double t_n, std::size_t n,
                          std::size_t m);

// Kirkwood quasiprobability Tr(rho * P(B_k) * P(A_n)); complex in
// general, with conj(kirkwood(k, n)) = kirkwood(n, k).
Complex kirkwood(const DensityOperator& state, const AlternativeSet& b_set, std::size_t k,
                 const AlternativeSet& a_set, std::size_t n);

// One evolution stage of a successive-decision process.
struct DecisionStage {
    EvolutionGenerator generator;
    DecisionWindow window;
};

struct JointProbabilityRecord {
    double value = 0.0;
    std::size_t first = 0;  // alternative decided in the earlier window
    std::size_t second = 0; // alternative decided in the later window
    double time = 0.0;
};

// Two (or more) decisions taken in ordered windows on a composite
// space.  The first alternative family lives on factor "A", the second
// on factor "B"; each stage generator is self-similar on its own window
// and the generator is zero between windows.
class SuccessiveProcess {
public:
    SuccessiveProcess(SpaceLayout layout, AlternativeSet first_alternatives,
                      AlternativeSet second_alternatives, std::vector<DecisionStage> stages);

    const SpaceLayout& layout() const { return layout_; }
    const AlternativeSet& first_alternatives() const { return first_; }
    const AlternativeSet& second_alternatives() const { return second_; }
    const std::vector<DecisionStage>& stages() const { return stages_; }

    // State at time t.  Negative t applies the inverse of the forward
    // propagator to |t| (time reversal).
    DensityOperator state_at(const DensityOperator& state0, double t) const;

    // Same stages in reversed application order: the decisions are
    // interchanged.
    SuccessiveProcess swapped() const;

private:
    SpaceLayout layout_;
    AlternativeSet first_;
    AlternativeSet second_;
    std::vector<DecisionStage> stages_;
};

// p(B_k A_n, t) = Tr(rho(t) P(B_k) (x) P(A_n)); real within a 1e-12
// imaginary residue, else a consistency error.
JointProbabilityRecord joint_probability(const SuccessiveProcess& process,
                                         const DensityOperator& state0, std::size_t n,
                                         std::size_t k, double t);

// Prospect version on a four-factor layout (A, B, SA, SB): the joint
// event operator is P(A_n z_n) on (A, SA) times P(B_k z_k) on (B, SB).
double behavioral_joint(const DensityOperator& state, const SpaceLayout& layout,
                        const ProspectOperator& prospect_a, const ProspectOperator& prospect_b);

// One positive scalar applied to both amplitude tables so that the
// joint prospect family sums to one on the given state.
std::pair<FeelingAmplitudes, FeelingAmplitudes> normalize_joint_feelings(
    const DensityOperator& state, const AlternativeSet& a_set, const AlternativeSet& b_set,
    const FeelingAmplitudes& feelings_a, const FeelingAmplitudes& feelings_b);

} // namespace qdt
