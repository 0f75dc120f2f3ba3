#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qdt/tensor.hpp"

namespace qdt {

// Closed time interval [start, start + duration] during which one
// decision is being formed.
struct DecisionWindow {
    double start = 0.0;
    double duration = 1.0;

    double end() const { return start + duration; }
    void validate() const;
};

// Bounded time profile h(t) shared by all eigenvalues of a generator.
// The constant case keeps phase integrals in closed form.
struct EigenProfile {
    bool constant = true;
    double value = 1.0;
    std::function<double(double)> fn;

    static EigenProfile constant_one() { return {}; }
    static EigenProfile from_function(std::function<double(double)> f);

    double operator()(double t) const;
    // Integral of h over [t0, t1].
    double integral(double t0, double t1) const;
};

// Evolution generator with a fixed eigenbasis and a separable
// time dependence E_u(t) = g * eps_u * h(t).  The eigenbasis is a
// tensor product of one orthonormal basis per layout factor, so the
// commutator [H(t), integral of H] vanishes by construction and the
// propagator is a pure phase per eigenlabel.
class EvolutionGenerator {
public:
    // `bases` maps factor labels to orthonormal basis matrices (columns
    // are the basis vectors); omitted factors use the computational
    // basis.  `eps` has one entry per composite eigenlabel.
    EvolutionGenerator(SpaceLayout layout, std::map<std::string, ComplexMatrix> bases,
                       std::vector<double> eps, double rate,
                       EigenProfile profile = EigenProfile::constant_one());

    // Identity bases everywhere.
    static EvolutionGenerator diagonal(SpaceLayout layout, std::vector<double> eps, double rate,
                                       EigenProfile profile = EigenProfile::constant_one());

    // Generator acting on a subset of factors: `active_eps` is indexed
    // mixed-radix over `active` (in listed order) and broadcast over
    // the remaining factors.
    static EvolutionGenerator acting_on(const SpaceLayout& layout,
                                        const std::vector<std::string>& active,
                                        const std::vector<double>& active_eps,
                                        std::map<std::string, ComplexMatrix> bases, double rate,
                                        EigenProfile profile = EigenProfile::constant_one());

    const SpaceLayout& layout() const { return layout_; }
    std::size_t dim() const { return layout_.total_dim(); }
    double rate() const { return rate_; }
    const std::vector<double>& spectrum() const { return eps_; }
    const EigenProfile& profile() const { return profile_; }

    // Full eigenvector matrix (tensor product of the factor bases).
    const ComplexMatrix& basis() const { return basis_; }
    const ComplexMatrix& factor_basis(const std::string& label) const;

    // E_u(t)
    double eigenvalue(std::size_t u, double t) const;
    // exp(-i * integral of E_u over [t0, t1])
    Complex phase(std::size_t u, double t0, double t1) const;

    // Copy with a different rate.
    EvolutionGenerator with_rate(double rate) const;

    // Materialized H(t) (used by the self-similarity check and tests).
    ComplexMatrix hamiltonian(double t) const;

    // E -> 0 at small g and |E| -> infinity at large g, evaluated at
    // g = 1e-6 and g = 1e6 for every label with a nonzero coefficient.
    bool rate_limits_ok() const;

private:
    SpaceLayout layout_;
    std::vector<ComplexMatrix> factor_bases_;
    ComplexMatrix basis_;
    std::vector<double> eps_;
    double rate_;
    EigenProfile profile_;
};

// Density operator on a labeled tensor-product space.  Construction
// validates hermiticity, unit trace, and positivity; the state is
// immutable afterwards.
class DensityOperator {
public:
    static DensityOperator pure(const CVector& v, SpaceLayout layout);
    static DensityOperator mixture(const std::vector<CVector>& vectors,
                                   const std::vector<double>& weights, SpaceLayout layout);
    static DensityOperator from_matrix(ComplexMatrix m, SpaceLayout layout);

    const ComplexMatrix& matrix() const { return matrix_; }
    const SpaceLayout& layout() const { return layout_; }
    std::size_t dim() const { return layout_.total_dim(); }

private:
    DensityOperator(ComplexMatrix m, SpaceLayout layout)
        : matrix_(std::move(m)), layout_(std::move(layout)) {}

    ComplexMatrix matrix_;
    SpaceLayout layout_;

    friend DensityOperator evolve(const DensityOperator&, const EvolutionGenerator&, double,
                                  double);
    friend DensityOperator luders_update(const DensityOperator&, const ComplexMatrix&);
    friend DensityOperator dephase(const DensityOperator&, const ComplexMatrix&);
    friend DensityOperator reduce(const DensityOperator&, const std::vector<std::string>&);
    friend DensityOperator time_averaged_state(const DensityOperator&, const EvolutionGenerator&,
                                               const DecisionWindow&);
};

DensityOperator make_density(const CVector& pure_vector, SpaceLayout layout);
DensityOperator make_density(const std::vector<CVector>& vectors,
                             const std::vector<double>& weights, SpaceLayout layout);

// Phase-rotates the state in the generator eigenbasis:
//   rho'_{uv} = phase_u * rho_{uv} * conj(phase_v).
// Trace, hermiticity and spectrum are preserved; [t0, t1] may run
// backwards, giving the inverse propagator.
DensityOperator evolve(const DensityOperator& state, const EvolutionGenerator& gen, double t0,
                       double t1);

// P rho P / Tr(rho P).  The projector may act on the full space or on a
// single factor (matched by dimension, first match wins).
DensityOperator luders_update(const DensityOperator& state, const ComplexMatrix& projector);

// Removes off-diagonal elements in the given orthonormal basis
// (columns); the infinitely-fast-decision limit.
DensityOperator dephase(const DensityOperator& state, const ComplexMatrix& basis);

// Partial trace, returned as a density operator on the reduced layout.
DensityOperator reduce(const DensityOperator& state, const std::vector<std::string>& keep);

// (1 / |window|) * integral of evolve(state, gen, 0, t) dt over the
// window; closed form per element for constant profiles.
DensityOperator time_averaged_state(const DensityOperator& state, const EvolutionGenerator& gen,
                                    const DecisionWindow& window);

// Commutator check [H(t), integral_0^t H] over sampled times in the
// window; true when the sampled norm stays below the tolerance.
bool check_self_similarity(const EvolutionGenerator& gen, const DecisionWindow& window);

// Raw-matrix adaptor for externally supplied H(t).
using RawGenerator = std::function<ComplexMatrix(double)>;
bool check_self_similarity(const RawGenerator& h, std::size_t dim, const DecisionWindow& window);

} // namespace qdt
