#pragma once

namespace qdt::tol {

// Default comparison tolerance for probabilities and expectation values.
inline constexpr double kDefault = 1e-9;

// Strict tolerance for algebraic identities (hermiticity, trace).
inline constexpr double kStrict = 1e-12;

// Orthonormality of basis / alternative vectors.
inline constexpr double kOrthonormal = 1e-10;

// Most negative eigenvalue tolerated in a density operator.  States
// below this floor are rejected, never clipped.
inline constexpr double kPsdFloor = 1e-10;

// Commutator norm bound for the self-similarity check.
inline constexpr double kSelfSimilar = 1e-10;

// Absolute tolerance for phase integrals.
inline constexpr double kPhaseQuad = 1e-12;

} // namespace qdt::tol
