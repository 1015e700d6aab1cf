#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orthotree/quantum_state.hpp"

namespace orthotree {

struct ContextEntry {
    std::string id;
    NumDecomposition decomposition;
};

/// Finite family of orthogonal decompositions of one ambient space, each
/// regarded as a measurement context.
class ContextFamily {
public:
    explicit ContextFamily(std::vector<ContextEntry> contexts);

    int ambient_dim() const { return ambient_dim_; }
    std::size_t size() const { return contexts_.size(); }
    const ContextEntry& context(std::size_t i) const { return contexts_[i]; }
    const std::vector<ContextEntry>& contexts() const { return contexts_; }

private:
    int ambient_dim_;
    std::vector<ContextEntry> contexts_;
};

/// One probability measure per context, each assigning a probability to
/// every subspace cell of its decomposition (residual cells carry zero).
class MultiProbabilitySpace {
public:
    MultiProbabilitySpace(ContextFamily family,
                          std::vector<std::vector<double>> cell_probs);

    /// Reads each context's identifiers as probability labels: cell d gets
    /// dim_d * identifier_d, which must form a valid distribution.
    static MultiProbabilitySpace from_probability_identified(ContextFamily family);

    const ContextFamily& family() const { return family_; }
    const std::vector<double>& cell_probs(std::size_t context) const {
        return cell_probs_[context];
    }

private:
    ContextFamily family_;
    std::vector<std::vector<double>> cell_probs_;
};

/// Trace-rule measures: cell d of context D gets tr(rho * P_d).
MultiProbabilitySpace from_density(const ContextFamily& family,
                                   const DensityMatrix& rho);

/// Born-rule measures: cell d of context D gets psi* P_d psi.
MultiProbabilitySpace from_wave_vector(const ContextFamily& family,
                                       const WaveVector& psi);

struct ConsistencyViolation {
    std::size_t context1;
    std::size_t context2;
    std::vector<std::size_t> cells1;
    std::vector<std::size_t> cells2;
    double prob1;
    double prob2;
    double delta; // |prob1 - prob2|
};

struct ConsistencyReport {
    bool consistent;
    std::vector<ConsistencyViolation> violations;
};

/// For every pair of contexts and every pair of cell unions spanning equal
/// subspaces, the two probabilities must agree within tol. The enumeration
/// is exhaustive over the 2^k cell unions of each context, so it is meant
/// for desk-scale decompositions.
ConsistencyReport check_consistency(const MultiProbabilitySpace& mps, double tol);
ConsistencyReport check_consistency(const MultiProbabilitySpace& mps);

/// [0, 1]-valued map on orthogonal projectors, additive over mutually
/// orthogonal families. Backed either by a density matrix via the trace
/// rule or by an explicit table over a finite projector set.
class QuantumProbabilityDistribution {
public:
    static QuantumProbabilityDistribution from_density(DensityMatrix rho);
    static QuantumProbabilityDistribution from_table(
        std::vector<std::pair<CMatrix, double>> table);

    /// mu(P). Table-backed distributions look the projector up within the
    /// subspace-matching tolerance and reject unknown projectors.
    double operator()(const CMatrix& projector) const;

    bool density_backed() const { return rho_.has_value(); }

private:
    QuantumProbabilityDistribution() = default;

    std::optional<DensityMatrix> rho_;
    std::vector<std::pair<CMatrix, double>> table_;
};

struct AdditivityViolation {
    std::size_t family_index;
    double mu_of_sum;
    double sum_of_mu;
    double delta;
};

struct AdditivityReport {
    bool additive;
    std::vector<AdditivityViolation> violations;
};

/// Checks mu(sum_k P_k) = sum_k mu(P_k) for each family of mutually
/// orthogonal projectors. Families failing pairwise orthogonality are
/// rejected with NotOrthogonalFamilyError.
AdditivityReport check_additivity(const QuantumProbabilityDistribution& mu,
                                  const std::vector<std::vector<CMatrix>>& families,
                                  double tol);

/// Experimental: least-squares reconstruction of a Hermitian matrix rho
/// with tr(rho * P_i) = mu_i from a table over a spanning projector set,
/// via the Hilbert-Schmidt pairing. The fit is unconstrained, so the result
/// need not be positive or trace-one unless the table came from a state.
CMatrix fit_density_lstsq(const std::vector<std::pair<CMatrix, double>>& table);

} // namespace orthotree
