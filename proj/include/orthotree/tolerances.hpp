#pragma once

namespace orthotree::tol {

// Numerical tolerances used across the library. Matrix-level checks are
// relative to (1 + Frobenius norm) of the operand; eigenvalue-level checks
// (psd, trace, cluster) act on the values themselves.

inline constexpr double herm = 1e-10;          // Hermitian symmetry check
inline constexpr double orth = 1e-10;          // orthonormality / orthogonality
inline constexpr double eig = 1e-9;            // eigensolver residual contract
inline constexpr double norm = 1e-9;           // wave-vector normalization
inline constexpr double synth = 1e-9;          // decomposition round-trip error
inline constexpr double psd = 1e-9;            // eigenvalue non-negativity slack
inline constexpr double trace_one = 1e-9;      // unit-trace slack for states
inline constexpr double member = 1e-8;         // subspace membership classification
inline constexpr double subspace_match = 1e-8; // projector distance for subspace equality
inline constexpr double consistency = 1e-9;    // cross-context probability agreement
inline constexpr double additivity = 1e-10;    // projector additivity slack
inline constexpr double prob_clamp = 1e-12;    // clamp band around [0, 1]
inline constexpr double orth_family = 1e-8;    // pairwise projector orthogonality

// Jacobi eigensolver: stop once the off-diagonal Frobenius norm falls below
// jacobi_off * ||M||_F, giving up after jacobi_max_sweeps full sweeps.
inline constexpr double jacobi_off = 1e-13;
inline constexpr int jacobi_max_sweeps = 60;

// Eigenvalue clustering: merge raw eigenvalues closer than
// max(cluster_abs, cluster_rel * ||A||_F) by single linkage.
inline constexpr double cluster_abs = 1e-8;
inline constexpr double cluster_rel = 1e-10;

} // namespace orthotree::tol
