#pragma once

#include "orthotree/complex_matrix.hpp"

namespace orthotree {

/// Linear subspace of the ambient space, held as an orthonormal basis in the
/// columns of an n x m matrix (1 <= m <= n). Immutable after construction.
class Subspace {
public:
    /// Wraps a basis whose columns must already be orthonormal.
    explicit Subspace(CMatrix orthonormal_basis);

    /// Orthonormalizes the columns of `vectors` (modified Gram-Schmidt,
    /// repeated once) and spans the result. Columns that are linearly
    /// dependent on earlier ones are rejected.
    static Subspace span(const CMatrix& vectors);

    static Subspace full(int n);
    static Subspace line(const WaveVector& direction);

    int ambient_dim() const { return basis_.rows(); }
    int dim() const { return basis_.cols(); }
    const CMatrix& basis() const { return basis_; }

    /// basis * adjoint(basis): idempotent and self-adjoint.
    CMatrix projector() const;

    /// Coefficients of the orthogonal projection of x, in this basis.
    std::vector<Complex> project_coords(const std::vector<Complex>& x) const;

    /// True when || P x - x || <= tol * || x ||; the zero vector is never a
    /// member.
    bool contains(const std::vector<Complex>& x, double tol) const;

private:
    struct Unchecked {};
    Subspace(CMatrix basis, Unchecked) : basis_(std::move(basis)) {}

    CMatrix basis_;
};

/// Basis-independent equality: Frobenius distance of the two projectors.
bool subspace_equal(const Subspace& s, const Subspace& t, double tol);
bool subspace_equal(const Subspace& s, const Subspace& t);

} // namespace orthotree
