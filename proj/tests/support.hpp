#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "qdt/prospects.hpp"
#include "qdt/quantum_state.hpp"
#include "qdt/tensor.hpp"

namespace qdt::test {

using Rng = std::mt19937_64;

CVector random_vector(Rng& rng, std::size_t dim);
CVector random_real_vector(Rng& rng, std::size_t dim);

// Gram-Schmidt on gaussian columns.
ComplexMatrix random_unitary(Rng& rng, std::size_t dim);
ComplexMatrix random_real_orthogonal(Rng& rng, std::size_t dim);

// Mixture of `dim` random pure states with random simplex weights.
DensityOperator random_density(Rng& rng, const SpaceLayout& layout);
DensityOperator random_real_density(Rng& rng, const SpaceLayout& layout);

// Tr(rho^k), k = 1..4; invariant under unitary evolution, so it pins
// the spectrum without an eigensolver.
std::array<double, 4> spectrum_signature(const ComplexMatrix& rho);

// Mixture of maximally entangled layers on {A: n, S: n}: the subject
// marginal is exactly I/n, which makes the alternation law hold
// exactly once the feeling rows are shared.
DensityOperator structured_state(Rng& rng, std::size_t n, const SpaceLayout& layout,
                                 std::size_t layers = 2);

// One random row copied to every alternative (not yet normalized).
FeelingAmplitudes shared_row_feelings(Rng& rng, std::size_t alternatives,
                                      std::size_t subject_dim);

} // namespace qdt::test
