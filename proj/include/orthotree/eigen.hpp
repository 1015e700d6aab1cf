#pragma once

#include <vector>

#include "orthotree/complex_matrix.hpp"

namespace orthotree {

struct EigenResult {
    std::vector<double> values; // ascending
    CMatrix vectors;            // unitary; column j pairs with values[j]
    int sweeps = 0;
};

/// Eigenvalues and eigenvectors of a Hermitian matrix via the cyclic complex
/// Jacobi method (two-sided unitary rotations). Eigenvalues come back sorted
/// ascending; each eigenvector's global phase is fixed so that its
/// largest-modulus component is real and positive.
///
/// Throws NotHermitianError on a non-Hermitian input and NoConvergenceError
/// when the off-diagonal norm fails to drop below the threshold within
/// max_sweeps full sweeps.
EigenResult hermitian_eigensolve(const CMatrix& m, int max_sweeps);
EigenResult hermitian_eigensolve(const CMatrix& m);

/// True when the smallest eigenvalue is >= -tol * (1 + ||m||_F).
bool is_psd(const CMatrix& m, double tol);
bool is_psd(const CMatrix& m);

} // namespace orthotree
