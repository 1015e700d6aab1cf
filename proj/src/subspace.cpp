#include "orthotree/subspace.hpp"

#include <cmath>

#include "orthotree/error.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

namespace {

double orthonormality_defect(const CMatrix& basis) {
    const CMatrix gram = matmul_adj_left(basis, basis);
    double defect_sq = 0.0;
    for (int i = 0; i < gram.rows(); ++i) {
        for (int j = 0; j < gram.cols(); ++j) {
            const Complex expected = (i == j) ? Complex{1.0, 0.0}
                                              : Complex{0.0, 0.0};
            const Complex d = gram(i, j) - expected;
            defect_sq += d.real() * d.real() + d.imag() * d.imag();
        }
    }
    return std::sqrt(defect_sq);
}

} // namespace

Subspace::Subspace(CMatrix orthonormal_basis) : basis_(std::move(orthonormal_basis)) {
    if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
        throw InvalidDecompositionError("subspace dimension out of range");
    }
    if (orthonormality_defect(basis_) > tol::orth * (1.0 + std::sqrt(basis_.cols()))) {
        throw InvalidDecompositionError("subspace basis is not orthonormal");
    }
}

Subspace Subspace::span(const CMatrix& vectors) {
    const int n = vectors.rows();
    const int m = vectors.cols();
    if (m < 1 || n < 1) {
        throw InvalidDecompositionError("span requires at least one vector");
    }
    // Modified Gram-Schmidt, run twice for stability.
    std::vector<std::vector<Complex>> kept;
    for (int j = 0; j < m; ++j) {
        std::vector<Complex> v = vectors.column(j);
        const double original = std::sqrt(vec_norm_sq(v));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : kept) {
                const Complex proj = inner(u, v);
                for (std::size_t i = 0; i < v.size(); ++i) {
                    v[i] -= proj * u[i];
                }
            }
        }
        const double remaining = std::sqrt(vec_norm_sq(v));
        if (remaining <= 1e-12 * (1.0 + original)) {
            throw InvalidDecompositionError(
                "span: column is linearly dependent on earlier ones");
        }
        for (Complex& z : v) {
            z /= remaining;
        }
        kept.push_back(std::move(v));
    }
    CMatrix basis(n, static_cast<int>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) {
        for (int i = 0; i < n; ++i) {
            basis(i, static_cast<int>(j)) = kept[j][static_cast<std::size_t>(i)];
        }
    }
    return Subspace(std::move(basis), Unchecked{});
}

Subspace Subspace::full(int n) { return Subspace(CMatrix::identity(n), Unchecked{}); }

Subspace Subspace::line(const WaveVector& direction) {
    const WaveVector unit = direction.normalized();
    CMatrix basis(unit.dim(), 1);
    for (int i = 0; i < unit.dim(); ++i) {
        basis(i, 0) = unit[i];
    }
    return Subspace(std::move(basis), Unchecked{});
}

CMatrix Subspace::projector() const { return matmul_adj_right(basis_, basis_); }

std::vector<Complex> Subspace::project_coords(const std::vector<Complex>& x) const {
    if (static_cast<int>(x.size()) != ambient_dim()) {
        throw DimensionMismatchError("vector length differs from ambient dimension");
    }
    std::vector<Complex> coords(static_cast<std::size_t>(dim()), Complex{0.0, 0.0});
    for (int j = 0; j < dim(); ++j) {
        Complex s{0.0, 0.0};
        for (int i = 0; i < ambient_dim(); ++i) {
            s += std::conj(basis_(i, j)) * x[static_cast<std::size_t>(i)];
        }
        coords[static_cast<std::size_t>(j)] = s;
    }
    return coords;
}

bool Subspace::contains(const std::vector<Complex>& x, double tol) const {
    if (static_cast<int>(x.size()) != ambient_dim()) {
        throw DimensionMismatchError("vector length differs from ambient dimension");
    }
    const double x_sq = vec_norm_sq(x);
    if (x_sq == 0.0) {
        return false;
    }
    // Form the residual x - B (B* x) explicitly; the squared-norm shortcut
    // || x ||^2 - || B* x ||^2 cannot resolve residuals below the
    // cancellation floor, which membership tolerances sit under.
    const std::vector<Complex> coords = project_coords(x);
    std::vector<Complex> residual = x;
    for (int j = 0; j < dim(); ++j) {
        const Complex c = coords[static_cast<std::size_t>(j)];
        for (int i = 0; i < ambient_dim(); ++i) {
            residual[static_cast<std::size_t>(i)] -= basis_(i, j) * c;
        }
    }
    return vec_norm_sq(residual) <= tol * tol * x_sq;
}

bool subspace_equal(const Subspace& s, const Subspace& t, double tol) {
    if (s.ambient_dim() != t.ambient_dim()) {
        throw DimensionMismatchError("subspaces live in different ambient spaces");
    }
    return frobenius_norm(s.projector() - t.projector()) <= tol;
}

bool subspace_equal(const Subspace& s, const Subspace& t) {
    return subspace_equal(s, t, tol::subspace_match);
}

} // namespace orthotree
