#pragma once

#include <optional>
#include <vector>

#include "orthotree/ortho_algebra.hpp"
#include "orthotree/spectral.hpp"

namespace orthotree {

/// Hermitian, positive semi-definite, trace-one matrix with its cached
/// eigen-decomposition. Eigenvalues in [-psd slack, 0) are clamped to zero
/// and the identifiers renormalized so they satisfy the unit-trace equation
/// exactly; anything further from a valid state is rejected.
class DensityMatrix {
public:
    static DensityMatrix validate(const CMatrix& rho, double tau_cluster = -1.0);

    const CMatrix& matrix() const { return matrix_; }
    const NumDecomposition& decomposition() const { return decomposition_; }
    int dim() const { return matrix_.rows(); }

private:
    DensityMatrix(CMatrix matrix, NumDecomposition decomposition)
        : matrix_(std::move(matrix)), decomposition_(std::move(decomposition)) {}

    friend DensityMatrix density_from_measure(const struct OrthoProbabilityMeasure&);

    CMatrix matrix_;
    NumDecomposition decomposition_; // identifiers clamped and renormalized
};

/// Probability measure on the event algebra of a decomposition that is
/// numerically identified by probability: cell d carries m_d * lambda_d,
/// the residual cell carries zero.
struct OrthoProbabilityMeasure {
    NumDecomposition decomposition;
    std::vector<double> cell_probs; // aligned with decomposition parts

    double prob_of_cell(std::size_t i) const { return cell_probs[i]; }
    double prob_of(const OrthoEvent& event) const;
};

OrthoProbabilityMeasure measure_from_density(const DensityMatrix& rho);
DensityMatrix density_from_measure(const OrthoProbabilityMeasure& measure);

/// Repairs rounding strays: values in [-band, 0) map to 0, values in
/// (1, 1+band] map to 1. Anything further outside [0, 1] is an internal
/// fault and throws std::logic_error.
double clamp_probability(double p);

/// Probability that a measurement in state psi lands in L. Non-normalized
/// vectors are handled by the Rayleigh quotient; the result is clamped into
/// [0, 1] within the rounding band.
double born_prob(const WaveVector& psi, const Subspace& L);

/// tr(rho * P_L), clamped into [0, 1] within the rounding band.
double trace_rule(const DensityMatrix& rho, const Subspace& L);

/// Distribution of an observable's value in a given state: one atom per
/// spectrum point. Atom probabilities are nonnegative and sum to one.
class ObservableCDF {
public:
    struct Atom {
        double lambda;
        double prob;
    };

    ObservableCDF(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }

    /// P(value <= r); a right-continuous step function of r.
    double operator()(double r) const;

private:
    std::vector<Atom> atoms_; // ascending lambda
};

ObservableCDF cdf(const HermitianObservable& obs, const WaveVector& psi);
ObservableCDF cdf(const HermitianObservable& obs, const DensityMatrix& rho);
double cdf_value(const HermitianObservable& obs, const WaveVector& psi, double r);
double cdf_value(const HermitianObservable& obs, const DensityMatrix& rho, double r);

/// Expected observable value; computed both as the probability-weighted sum
/// over the spectrum and as the quadratic form / trace expression, and
/// cross-checked.
double expectation(const HermitianObservable& obs, const WaveVector& psi);
double expectation(const HermitianObservable& obs, const DensityMatrix& rho);

/// The spanning unit vector when rho is a rank-one projector (spectrum
/// within the cluster tolerance of {0, 1} with a one-dimensional top
/// eigenspace); nullopt for mixed states.
std::optional<WaveVector> classify_state(const DensityMatrix& rho);

struct MixtureResult {
    DensityMatrix rho;
    /// True when the component states are pairwise orthogonal, i.e. the
    /// mixture's one-dimensional supports extend to a single common
    /// orthogonal decomposition.
    bool is_ortho;
};

/// rho = sum_k weights[k] * |phi_k><phi_k|. Weights must be positive and
/// sum to one; components are normalized before use.
MixtureResult mixture(const std::vector<double>& weights,
                      const std::vector<WaveVector>& states);

} // namespace orthotree
