#include "orthotree/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "orthotree/eigen.hpp"
#include "orthotree/error.hpp"
#include "orthotree/kernels.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

// Computed probabilities may stray outside [0, 1] by rounding; repair within
// the clamp band, treat anything further out as an internal fault.
double clamp_probability(double p) {
    if (p >= 0.0 && p <= 1.0) {
        return p;
    }
    if (p < 0.0 && p >= -tol::prob_clamp) {
        return 0.0;
    }
    if (p > 1.0 && p <= 1.0 + tol::prob_clamp) {
        return 1.0;
    }
    throw std::logic_error("probability " + std::to_string(p) +
                           " outside the clamp band");
}

DensityMatrix DensityMatrix::validate(const CMatrix& rho, double tau_cluster) {
    if (!rho.square()) {
        throw NotDensityMatrixError("not square");
    }
    if (!is_hermitian(rho, tol::herm)) {
        throw NotDensityMatrixError("not Hermitian");
    }
    const Complex tr = trace(rho);
    if (std::abs(tr - Complex{1.0, 0.0}) > tol::trace_one) {
        throw NotDensityMatrixError("trace differs from one by " +
                                    std::to_string(std::abs(tr - Complex{1.0, 0.0})));
    }
    HermitianObservable obs = decompose(rho, tau_cluster);
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        if (p.identifier < -tol::psd) {
            throw NotDensityMatrixError("negative eigenvalue " +
                                        std::to_string(p.identifier));
        }
    }

    // Clamp round-off negatives to zero. Clamping can collide identifiers,
    // so regroup parts by identifier before renormalizing.
    std::map<double, std::vector<const Subspace*>> groups;
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        const double lambda = p.identifier < 0.0 ? 0.0 : p.identifier;
        groups[lambda].push_back(&p.subspace);
    }
    double weighted_sum = 0.0;
    for (const auto& [lambda, spaces] : groups) {
        int dim = 0;
        for (const Subspace* s : spaces) {
            dim += s->dim();
        }
        weighted_sum += lambda * dim;
    }
    if (std::abs(weighted_sum - 1.0) > tol::trace_one) {
        throw NotDensityMatrixError("eigenvalue mass differs from one");
    }

    std::vector<DecompositionPart> parts;
    for (const auto& [lambda, spaces] : groups) {
        const int n = rho.rows();
        int dim = 0;
        for (const Subspace* s : spaces) {
            dim += s->dim();
        }
        CMatrix basis(n, dim);
        int col = 0;
        for (const Subspace* s : spaces) {
            for (int j = 0; j < s->dim(); ++j, ++col) {
                for (int i = 0; i < n; ++i) {
                    basis(i, col) = s->basis()(i, j);
                }
            }
        }
        parts.push_back({lambda / weighted_sum, Subspace(std::move(basis))});
    }
    return DensityMatrix(rho, NumDecomposition(rho.rows(), std::move(parts)));
}

double OrthoProbabilityMeasure::prob_of(const OrthoEvent& event) const {
    if (event.cell_count() != cell_probs.size() ||
        event.partition()->ambient_dim() != decomposition.ambient_dim()) {
        throw PartitionMismatchError("event does not match the measure's partition");
    }
    double p = 0.0;
    for (std::size_t i = 0; i < cell_probs.size(); ++i) {
        if (event.has_cell(i)) {
            p += cell_probs[i];
        }
    }
    // The residual cell contributes zero.
    return clamp_probability(p);
}

OrthoProbabilityMeasure measure_from_density(const DensityMatrix& rho) {
    OrthoProbabilityMeasure m{rho.decomposition(), {}};
    m.cell_probs.reserve(m.decomposition.part_count());
    for (const DecompositionPart& p : m.decomposition.parts()) {
        m.cell_probs.push_back(p.identifier * p.subspace.dim());
    }
    return m;
}

DensityMatrix density_from_measure(const OrthoProbabilityMeasure& measure) {
    double total = 0.0;
    for (std::size_t i = 0; i < measure.decomposition.part_count(); ++i) {
        const DecompositionPart& p = measure.decomposition.part(i);
        if (p.identifier < 0.0) {
            throw NotDensityMatrixError("negative probability identifier");
        }
        total += p.identifier * p.subspace.dim();
    }
    if (std::abs(total - 1.0) > tol::trace_one) {
        throw NotDensityMatrixError("identifier mass differs from one");
    }
    CMatrix matrix = synthesize(measure.decomposition);
    return DensityMatrix(std::move(matrix), measure.decomposition);
}

double born_prob(const WaveVector& psi, const Subspace& L) {
    if (psi.dim() != L.ambient_dim()) {
        throw DimensionMismatchError("state and subspace dimensions differ");
    }
    // psi* P psi = || B* psi ||^2 for an orthonormal basis B; divide by the
    // squared norm (Rayleigh quotient) so non-normalized input is accepted.
    const double coeff_sq = vec_norm_sq(L.project_coords(psi.components()));
    return clamp_probability(coeff_sq / psi.norm_sq());
}

double trace_rule(const DensityMatrix& rho, const Subspace& L) {
    if (rho.dim() != L.ambient_dim()) {
        throw DimensionMismatchError("state and subspace dimensions differ");
    }
    const CMatrix proj = L.projector();
    return clamp_probability(hs_inner(rho.matrix(), proj).real());
}

ObservableCDF::ObservableCDF(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.lambda < b.lambda; });
    double total = 0.0;
    for (const Atom& a : atoms_) {
        if (a.prob < 0.0) {
            throw Error("CDF atom with negative probability");
        }
        total += a.prob;
    }
    if (std::abs(total - 1.0) > tol::trace_one) {
        throw Error("CDF atoms sum to " + std::to_string(total));
    }
}

double ObservableCDF::operator()(double r) const {
    double f = 0.0;
    for (const Atom& a : atoms_) {
        if (a.lambda <= r) {
            f += a.prob;
        } else {
            break;
        }
    }
    return f;
}

namespace {

template <typename ProbFn>
ObservableCDF make_cdf(const HermitianObservable& obs, ProbFn prob_of_part) {
    std::vector<ObservableCDF::Atom> atoms;
    atoms.reserve(obs.decomposition().part_count());
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        atoms.push_back({p.identifier, prob_of_part(p)});
    }
    return ObservableCDF(std::move(atoms));
}

double cross_checked_expectation(const HermitianObservable& obs,
                                 double spectral_sum, double quadratic_form) {
    const double scale = 1.0 + frobenius_norm(obs.matrix());
    if (std::abs(spectral_sum - quadratic_form) > 1e-10 * scale) {
        throw std::logic_error("expectation routes disagree: " +
                               std::to_string(spectral_sum) + " vs " +
                               std::to_string(quadratic_form));
    }
    return spectral_sum;
}

} // namespace

ObservableCDF cdf(const HermitianObservable& obs, const WaveVector& psi) {
    return make_cdf(obs, [&psi](const DecompositionPart& p) {
        return born_prob(psi, p.subspace);
    });
}

ObservableCDF cdf(const HermitianObservable& obs, const DensityMatrix& rho) {
    return make_cdf(obs, [&rho](const DecompositionPart& p) {
        return trace_rule(rho, p.subspace);
    });
}

double cdf_value(const HermitianObservable& obs, const WaveVector& psi, double r) {
    return cdf(obs, psi)(r);
}

double cdf_value(const HermitianObservable& obs, const DensityMatrix& rho, double r) {
    return cdf(obs, rho)(r);
}

double expectation(const HermitianObservable& obs, const WaveVector& psi) {
    if (psi.dim() != obs.dim()) {
        throw DimensionMismatchError("state and observable dimensions differ");
    }
    double spectral = 0.0;
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        spectral += p.identifier * born_prob(psi, p.subspace);
    }
    const std::vector<Complex> ax = matvec(obs.matrix(), psi.components());
    const double quad = inner(psi.components(), ax).real() / psi.norm_sq();
    return cross_checked_expectation(obs, spectral, quad);
}

double expectation(const HermitianObservable& obs, const DensityMatrix& rho) {
    if (rho.dim() != obs.dim()) {
        throw DimensionMismatchError("state and observable dimensions differ");
    }
    double spectral = 0.0;
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        spectral += p.identifier * trace_rule(rho, p.subspace);
    }
    const double tr = hs_inner(rho.matrix(), obs.matrix()).real();
    return cross_checked_expectation(obs, spectral, tr);
}

std::optional<WaveVector> classify_state(const DensityMatrix& rho) {
    const double tau = default_cluster_tol(rho.matrix());
    const Subspace* top = nullptr;
    for (const DecompositionPart& p : rho.decomposition().parts()) {
        if (std::abs(p.identifier - 1.0) <= tau) {
            top = &p.subspace;
        } else if (std::abs(p.identifier) > tau) {
            return std::nullopt; // spectrum point away from {0, 1}
        }
    }
    if (top == nullptr || top->dim() != 1) {
        return std::nullopt;
    }
    // Phase convention: largest-modulus component real positive.
    std::vector<Complex> phi = top->basis().column(0);
    std::size_t arg_max = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (std::abs(phi[i]) > best) {
            best = std::abs(phi[i]);
            arg_max = i;
        }
    }
    const Complex z = phi[arg_max];
    const Complex phase = std::conj(z) / std::abs(z);
    for (Complex& c : phi) {
        c *= phase;
    }
    return WaveVector(std::move(phi)).normalized();
}

MixtureResult mixture(const std::vector<double>& weights,
                      const std::vector<WaveVector>& states) {
    if (weights.empty() || weights.size() != states.size()) {
        throw WeightInvalidError("need one positive weight per state");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) {
            throw WeightInvalidError("weights must be positive");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > tol::trace_one) {
        throw WeightInvalidError("weights sum to " + std::to_string(total));
    }
    const int n = states.front().dim();
    std::vector<WaveVector> normalized;
    normalized.reserve(states.size());
    for (const WaveVector& s : states) {
        if (s.dim() != n) {
            throw DimensionMismatchError("mixture states have differing dimensions");
        }
        normalized.push_back(s.normalized());
    }

    CMatrix rho(n, n);
    for (std::size_t k = 0; k < normalized.size(); ++k) {
        const CMatrix proj = outer(normalized[k].components(),
                                   normalized[k].components());
        kernels::accumulate_scaled(rho.data(), proj.data(), weights[k], rho.size());
    }

    bool is_ortho = true;
    for (std::size_t j = 0; j < normalized.size() && is_ortho; ++j) {
        for (std::size_t k = j + 1; k < normalized.size(); ++k) {
            if (std::abs(inner(normalized[j].components(),
                               normalized[k].components())) > tol::orth) {
                is_ortho = false;
                break;
            }
        }
    }
    return MixtureResult{DensityMatrix::validate(rho), is_ortho};
}

} // namespace orthotree
