#include "orthotree/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthotree/eigen.hpp"
#include "orthotree/error.hpp"
#include "orthotree/kernels.hpp"
#include "orthotree/log.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

NumDecomposition::NumDecomposition(int ambient_dim,
                                   std::vector<DecompositionPart> parts)
    : ambient_dim_(ambient_dim), parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw InvalidDecompositionError("decomposition has no parts");
    }
    int total_dim = 0;
    for (const DecompositionPart& p : parts_) {
        if (p.subspace.ambient_dim() != ambient_dim_) {
            throw InvalidDecompositionError("part ambient dimension mismatch");
        }
        if (!std::isfinite(p.identifier)) {
            throw InvalidDecompositionError("non-finite identifier");
        }
        total_dim += p.subspace.dim();
    }
    if (total_dim != ambient_dim_) {
        throw InvalidDecompositionError(
            "subspace dimensions sum to " + std::to_string(total_dim) +
            ", expected " + std::to_string(ambient_dim_));
    }
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        for (std::size_t j = i + 1; j < parts_.size(); ++j) {
            if (parts_[i].identifier == parts_[j].identifier) {
                throw InvalidDecompositionError("identifiers are not distinct");
            }
            // Cross-Gram block of the two bases must vanish.
            const CMatrix cross =
                matmul_adj_left(parts_[i].subspace.basis(), parts_[j].subspace.basis());
            if (frobenius_norm(cross) > tol::orth * (1.0 + std::sqrt(ambient_dim_))) {
                throw InvalidDecompositionError("subspaces are not mutually orthogonal");
            }
        }
    }
}

NumDecomposition NumDecomposition::canonical(int n,
                                             const std::vector<double>& identifiers) {
    if (static_cast<int>(identifiers.size()) != n) {
        throw InvalidDecompositionError("need one identifier per coordinate line");
    }
    std::vector<DecompositionPart> parts;
    parts.reserve(identifiers.size());
    for (int j = 0; j < n; ++j) {
        parts.push_back({identifiers[static_cast<std::size_t>(j)],
                         Subspace::line(WaveVector::basis_vector(n, j))});
    }
    return NumDecomposition(n, std::move(parts));
}

std::vector<double> NumDecomposition::identifiers() const {
    std::vector<double> ids;
    ids.reserve(parts_.size());
    for (const DecompositionPart& p : parts_) {
        ids.push_back(p.identifier);
    }
    return ids;
}

CMatrix synthesize(const NumDecomposition& d) {
    const int n = d.ambient_dim();
    CMatrix out(n, n);
    for (const DecompositionPart& p : d.parts()) {
        const CMatrix proj = p.subspace.projector();
        kernels::accumulate_scaled(out.data(), proj.data(), p.identifier,
                                   out.size());
    }
    return out;
}

double default_cluster_tol(const CMatrix& a) {
    return std::max(tol::cluster_abs, tol::cluster_rel * frobenius_norm(a));
}

HermitianObservable::HermitianObservable(CMatrix matrix,
                                         NumDecomposition decomposition,
                                         bool cluster_ambiguity,
                                         double synth_allowance)
    : matrix_(std::move(matrix)), decomposition_(std::move(decomposition)),
      cluster_ambiguity_(cluster_ambiguity) {
    spectrum_ = decomposition_.identifiers();
    const CMatrix rebuilt = synthesize(decomposition_);
    const double err = frobenius_norm(matrix_ - rebuilt);
    if (err > tol::synth * (1.0 + frobenius_norm(matrix_)) + synth_allowance) {
        throw InvalidDecompositionError(
            "cached decomposition does not reproduce the matrix");
    }
}

HermitianObservable decompose(const CMatrix& a, double tau_cluster) {
    if (!a.square()) {
        throw NonSquareError("decompose requires a square matrix");
    }
    if (!is_hermitian(a, tol::herm)) {
        throw NotHermitianError("decompose requires a Hermitian matrix");
    }
    const double tau = tau_cluster < 0.0 ? default_cluster_tol(a) : tau_cluster;
    const EigenResult eig = hermitian_eigensolve(a);
    const int n = a.rows();

    bool ambiguity = false;
    double distortion_sq = 0.0;
    std::vector<DecompositionPart> parts;
    int begin = 0;
    while (begin < n) {
        int end = begin + 1;
        while (end < n && eig.values[static_cast<std::size_t>(end)] -
                                  eig.values[static_cast<std::size_t>(end - 1)] <=
                              tau) {
            ++end;
        }
        const double spread = eig.values[static_cast<std::size_t>(end - 1)] -
                              eig.values[static_cast<std::size_t>(begin)];
        if (spread > tau) {
            ambiguity = true;
        }
        double mean = 0.0;
        for (int i = begin; i < end; ++i) {
            mean += eig.values[static_cast<std::size_t>(i)];
        }
        mean /= static_cast<double>(end - begin);
        for (int i = begin; i < end; ++i) {
            const double dev = eig.values[static_cast<std::size_t>(i)] - mean;
            distortion_sq += dev * dev;
        }

        CMatrix columns(n, end - begin);
        for (int j = begin; j < end; ++j) {
            for (int i = 0; i < n; ++i) {
                columns(i, j - begin) = eig.vectors(i, j);
            }
        }
        parts.push_back({mean, Subspace::span(columns)});
        begin = end;
    }
    if (ambiguity) {
        log::diag("decompose: single-linkage chained eigenvalues beyond the "
                  "merge threshold");
    }
    return HermitianObservable(a, NumDecomposition(n, std::move(parts)),
                               ambiguity, std::sqrt(distortion_sq));
}

HermitianObservable observable_from_decomposition(NumDecomposition d) {
    std::vector<DecompositionPart> parts = d.parts();
    std::sort(parts.begin(), parts.end(),
              [](const DecompositionPart& x, const DecompositionPart& y) {
                  return x.identifier < y.identifier;
              });
    NumDecomposition sorted(d.ambient_dim(), std::move(parts));
    CMatrix matrix = synthesize(sorted);
    return HermitianObservable(std::move(matrix), std::move(sorted), false, 0.0);
}

double ExtendedReal::value() const {
    if (star_) {
        throw Error("ExtendedReal: Star holds no numeric value");
    }
    return value_;
}

ExtendedReal eigen_pairing(const HermitianObservable& obs,
                           const std::vector<Complex>& x, double eps_member) {
    if (static_cast<int>(x.size()) != obs.dim()) {
        throw DimensionMismatchError("vector length differs from observable dimension");
    }
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        if (p.subspace.contains(x, eps_member)) {
            return ExtendedReal::real(p.identifier);
        }
    }
    return ExtendedReal::star();
}

ExtendedReal eigen_pairing(const HermitianObservable& obs,
                           const std::vector<Complex>& x) {
    return eigen_pairing(obs, x, tol::member);
}

OrthoMeasurableFunction::OrthoMeasurableFunction(NumDecomposition decomposition)
    : decomposition_(std::move(decomposition)) {}

ExtendedReal OrthoMeasurableFunction::evaluate(const std::vector<Complex>& x,
                                               double eps_member) const {
    if (static_cast<int>(x.size()) != decomposition_.ambient_dim()) {
        throw DimensionMismatchError("vector length differs from ambient dimension");
    }
    for (const DecompositionPart& p : decomposition_.parts()) {
        if (p.subspace.contains(x, eps_member)) {
            return ExtendedReal::real(p.identifier);
        }
    }
    return ExtendedReal::star();
}

ExtendedReal OrthoMeasurableFunction::evaluate(const std::vector<Complex>& x) const {
    return evaluate(x, tol::member);
}

OrthoMeasurableFunction to_function(const HermitianObservable& obs) {
    return OrthoMeasurableFunction(obs.decomposition());
}

HermitianObservable from_function(const OrthoMeasurableFunction& f) {
    return observable_from_decomposition(f.decomposition());
}

} // namespace orthotree
