#pragma once

#include <memory>
#include <vector>

#include "orthotree/complex_matrix.hpp"
#include "orthotree/subspace.hpp"

namespace orthotree {

/// One component of an orthogonal decomposition: a real identifier paired
/// with its subspace.
struct DecompositionPart {
    double identifier;
    Subspace subspace;
};

/// Orthogonal decomposition of the ambient space whose parts are labelled
/// by pairwise distinct real identifiers. Validates mutual orthogonality,
/// completeness (dimensions sum to the ambient dimension) and identifier
/// distinctness at construction.
class NumDecomposition {
public:
    NumDecomposition(int ambient_dim, std::vector<DecompositionPart> parts);

    /// The decomposition of C^n into the n canonical coordinate lines,
    /// labelled by the given identifiers.
    static NumDecomposition canonical(int n, const std::vector<double>& identifiers);

    int ambient_dim() const { return ambient_dim_; }
    std::size_t part_count() const { return parts_.size(); }
    const DecompositionPart& part(std::size_t i) const { return parts_[i]; }
    const std::vector<DecompositionPart>& parts() const { return parts_; }

    /// Identifiers in part order.
    std::vector<double> identifiers() const;

private:
    int ambient_dim_;
    std::vector<DecompositionPart> parts_;
};

/// Rebuilds the Hermitian matrix sum_d identifier_d * projector_d.
CMatrix synthesize(const NumDecomposition& d);

/// Single linkage threshold used to merge raw eigenvalues into eigenspaces:
/// max(cluster_abs, cluster_rel * ||a||_F).
double default_cluster_tol(const CMatrix& a);

/// Hermitian matrix together with its cached spectral data: the sorted
/// distinct spectrum and the eigenspace decomposition, parts in ascending
/// identifier order.
class HermitianObservable {
public:
    const CMatrix& matrix() const { return matrix_; }
    const NumDecomposition& decomposition() const { return decomposition_; }
    const std::vector<double>& spectrum() const { return spectrum_; }
    int dim() const { return matrix_.rows(); }

    /// Set when eigenvalue clustering chained values whose total spread
    /// exceeds the merge threshold; the result is still the single-linkage
    /// grouping but identifiers near the threshold are representation
    /// dependent.
    bool cluster_ambiguity() const { return cluster_ambiguity_; }

private:
    friend HermitianObservable decompose(const CMatrix&, double);
    friend HermitianObservable observable_from_decomposition(NumDecomposition);

    // synth_allowance is the exact Frobenius distortion introduced by
    // replacing raw eigenvalues with cluster identifiers; zero when the
    // decomposition is the source of truth.
    HermitianObservable(CMatrix matrix, NumDecomposition decomposition,
                        bool cluster_ambiguity, double synth_allowance);

    CMatrix matrix_;
    NumDecomposition decomposition_;
    std::vector<double> spectrum_;
    bool cluster_ambiguity_;
};

/// Spectral decomposition with eigenvalue clustering: raw eigenvalues closer
/// than tau_cluster (single linkage on the sorted list) merge into one
/// eigenspace labelled by the mean of the merged values. Pass a negative
/// tau_cluster to use default_cluster_tol(a).
HermitianObservable decompose(const CMatrix& a, double tau_cluster = -1.0);

/// Builds an observable directly from a decomposition (matrix synthesized,
/// spectrum = sorted identifiers). No eigensolve is run.
HermitianObservable observable_from_decomposition(NumDecomposition d);

/// Value in the one-point extension of the real line: either a real number
/// or the distinguished tag Star.
class ExtendedReal {
public:
    static ExtendedReal real(double v) { return ExtendedReal(false, v); }
    static ExtendedReal star() { return ExtendedReal(true, 0.0); }

    bool is_star() const { return star_; }
    bool is_real() const { return !star_; }
    double value() const; // throws if star

    bool operator==(const ExtendedReal& other) const {
        return star_ == other.star_ && (star_ || value_ == other.value_);
    }

private:
    ExtendedReal(bool star, double value) : star_(star), value_(value) {}
    bool star_;
    double value_;
};

/// Maps x to the identifier of the (unique) eigenspace containing it, to
/// Star otherwise. The zero vector is always Star. Membership is
/// || P x - x || <= eps_member * || x ||.
ExtendedReal eigen_pairing(const HermitianObservable& obs,
                           const std::vector<Complex>& x, double eps_member);
ExtendedReal eigen_pairing(const HermitianObservable& obs,
                           const std::vector<Complex>& x);

/// Function from the ambient space to the extended reals whose level set at
/// each graph value is exactly one punctured subspace of an orthogonal
/// decomposition, with Star on the residual set.
class OrthoMeasurableFunction {
public:
    explicit OrthoMeasurableFunction(NumDecomposition decomposition);

    const NumDecomposition& decomposition() const { return decomposition_; }
    std::size_t graph_size() const { return decomposition_.part_count(); }
    double value_at(std::size_t i) const { return decomposition_.part(i).identifier; }
    const Subspace& level_set(std::size_t i) const { return decomposition_.part(i).subspace; }

    ExtendedReal evaluate(const std::vector<Complex>& x, double eps_member) const;
    ExtendedReal evaluate(const std::vector<Complex>& x) const;

private:
    NumDecomposition decomposition_;
};

OrthoMeasurableFunction to_function(const HermitianObservable& obs);
HermitianObservable from_function(const OrthoMeasurableFunction& f);

} // namespace orthotree
