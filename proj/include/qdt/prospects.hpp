#pragma once

#include <cstdint>
#include <vector>

#include "qdt/quantum_state.hpp"
#include "qdt/tensor.hpp"

namespace qdt {

// Orthonormal family of alternative vectors on one decision factor.
class AlternativeSet {
public:
    explicit AlternativeSet(std::vector<CVector> vectors);

    // Computational basis of the given dimension.
    static AlternativeSet computational(std::size_t dim);

    std::size_t size() const { return vectors_.size(); }
    std::size_t dim() const { return vectors_.empty() ? 0 : vectors_[0].size(); }
    const CVector& vector(std::size_t n) const;

    // True when the family spans the whole factor.
    bool complete() const { return size() == dim(); }

private:
    std::vector<CVector> vectors_;
};

// |A_n><A_n|
ComplexMatrix projector(const AlternativeSet& alternatives, std::size_t n);

enum class FeelingDistribution {
    complex_gaussian, // re, im ~ N(0, 1)
    uniform_modulus   // |b| = 1, uniform phase
};

// Rows of feeling amplitudes, one row per alternative, one column per
// subject basis state.  Rows carry no normalization of their own; the
// weak resolution condition is imposed globally by normalize_feelings.
struct FeelingAmplitudes {
    std::size_t alternatives = 0;
    std::size_t subject_dim = 0;
    std::vector<Complex> b; // row-major
    std::uint64_t seed = 0;
    // Set by normalize_feelings.  The weak resolution condition is
    // relative to one reference state and is not conserved by
    // evolution, so the flag travels with the amplitudes instead of
    // being re-derived from whatever state is at hand.
    bool normalized = false;

    Complex& at(std::size_t n, std::size_t alpha) { return b[n * subject_dim + alpha]; }
    const Complex& at(std::size_t n, std::size_t alpha) const { return b[n * subject_dim + alpha]; }

    // Row n as a subject-space vector |z_n>.
    CVector row(std::size_t n) const;
};

FeelingAmplitudes sample_feelings(std::size_t alternatives, std::size_t subject_dim,
                                  std::uint64_t seed,
                                  FeelingDistribution distribution =
                                      FeelingDistribution::complex_gaussian);

// P(A_n z_n) = P(A_n) (x) |z_n><z_n| on the alternative (x) subject
// space.  Not a projector unless <z_n|z_n> = 1.
struct ProspectOperator {
    std::size_t alternative = 0;
    ComplexMatrix matrix;
};

ProspectOperator prospect_operator(const AlternativeSet& alternatives, std::size_t n,
                                   const FeelingAmplitudes& feelings);

std::vector<ProspectOperator> prospect_family(const AlternativeSet& alternatives,
                                              const FeelingAmplitudes& feelings);

// |Tr(rho * sum_n P(A_n z_n)) - 1|; the prospects must cover every
// alternative exactly once.
double check_resolution_weak(const DensityOperator& state,
                             const std::vector<ProspectOperator>& prospects);

// Scales all amplitudes by one positive scalar so that the weak
// resolution of unity holds exactly for the given state.
FeelingAmplitudes normalize_feelings(const DensityOperator& state,
                                     const AlternativeSet& alternatives,
                                     const FeelingAmplitudes& feelings);

} // namespace qdt
