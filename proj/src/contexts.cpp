#include "orthotree/contexts.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "orthotree/error.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

ContextFamily::ContextFamily(std::vector<ContextEntry> contexts)
    : contexts_(std::move(contexts)) {
    if (contexts_.empty()) {
        throw EmptyContextsError("context family is empty");
    }
    ambient_dim_ = contexts_.front().decomposition.ambient_dim();
    std::set<std::string> ids;
    for (const ContextEntry& c : contexts_) {
        if (c.decomposition.ambient_dim() != ambient_dim_) {
            throw DimensionMismatchError("contexts have differing ambient dimensions");
        }
        if (!ids.insert(c.id).second) {
            throw Error("duplicate context id: " + c.id);
        }
    }
}

MultiProbabilitySpace::MultiProbabilitySpace(
    ContextFamily family, std::vector<std::vector<double>> cell_probs)
    : family_(std::move(family)), cell_probs_(std::move(cell_probs)) {
    if (cell_probs_.size() != family_.size()) {
        throw DimensionMismatchError("need one measure per context");
    }
    for (std::size_t c = 0; c < family_.size(); ++c) {
        const std::vector<double>& probs = cell_probs_[c];
        if (probs.size() != family_.context(c).decomposition.part_count()) {
            throw DimensionMismatchError("cell probability count mismatch");
        }
        double total = 0.0;
        for (double p : probs) {
            if (p < 0.0) {
                throw Error("negative cell probability in context " +
                            family_.context(c).id);
            }
            total += p;
        }
        if (std::abs(total - 1.0) > tol::trace_one) {
            throw Error("measure for context " + family_.context(c).id +
                        " is not normalized");
        }
    }
}

MultiProbabilitySpace MultiProbabilitySpace::from_probability_identified(
    ContextFamily family) {
    std::vector<std::vector<double>> probs;
    probs.reserve(family.size());
    for (const ContextEntry& c : family.contexts()) {
        std::vector<double> cell;
        cell.reserve(c.decomposition.part_count());
        for (const DecompositionPart& p : c.decomposition.parts()) {
            if (p.identifier < 0.0) {
                throw Error("context " + c.id +
                            " has a negative probability identifier");
            }
            cell.push_back(p.identifier * p.subspace.dim());
        }
        probs.push_back(std::move(cell));
    }
    return MultiProbabilitySpace(std::move(family), std::move(probs));
}

MultiProbabilitySpace from_density(const ContextFamily& family,
                                   const DensityMatrix& rho) {
    if (rho.dim() != family.ambient_dim()) {
        throw DimensionMismatchError("state and family dimensions differ");
    }
    std::vector<std::vector<double>> probs;
    probs.reserve(family.size());
    for (const ContextEntry& c : family.contexts()) {
        std::vector<double> cell;
        cell.reserve(c.decomposition.part_count());
        for (const DecompositionPart& p : c.decomposition.parts()) {
            cell.push_back(trace_rule(rho, p.subspace));
        }
        probs.push_back(std::move(cell));
    }
    return MultiProbabilitySpace(family, std::move(probs));
}

MultiProbabilitySpace from_wave_vector(const ContextFamily& family,
                                       const WaveVector& psi) {
    if (psi.dim() != family.ambient_dim()) {
        throw DimensionMismatchError("state and family dimensions differ");
    }
    std::vector<std::vector<double>> probs;
    probs.reserve(family.size());
    for (const ContextEntry& c : family.contexts()) {
        std::vector<double> cell;
        cell.reserve(c.decomposition.part_count());
        for (const DecompositionPart& p : c.decomposition.parts()) {
            cell.push_back(born_prob(psi, p.subspace));
        }
        probs.push_back(std::move(cell));
    }
    return MultiProbabilitySpace(family, std::move(probs));
}

namespace {

// Per-context tables over all cell unions, indexed by subset bitmask:
// aggregate projector, total dimension, total probability.
struct SubsetTable {
    std::vector<CMatrix> projectors;
    std::vector<int> dims;
    std::vector<double> probs;
};

SubsetTable build_subset_table(const NumDecomposition& d,
                               const std::vector<double>& cell_probs) {
    const std::size_t k = d.part_count();
    const std::size_t count = std::size_t{1} << k;
    const int n = d.ambient_dim();

    std::vector<CMatrix> cell_proj;
    cell_proj.reserve(k);
    for (const DecompositionPart& p : d.parts()) {
        cell_proj.push_back(p.subspace.projector());
    }

    SubsetTable t;
    t.projectors.reserve(count);
    t.dims.resize(count, 0);
    t.probs.resize(count, 0.0);
    t.projectors.push_back(CMatrix::zero(n, n));
    for (std::size_t s = 1; s < count; ++s) {
        const std::size_t low = s & (~s + 1);
        const std::size_t rest = s & ~low;
        std::size_t low_index = 0;
        while ((std::size_t{1} << low_index) != low) {
            ++low_index;
        }
        t.projectors.push_back(t.projectors[rest] + cell_proj[low_index]);
        t.dims[s] = t.dims[rest] + d.part(low_index).subspace.dim();
        t.probs[s] = t.probs[rest] + cell_probs[low_index];
    }
    return t;
}

std::vector<std::size_t> subset_cells(std::size_t mask) {
    std::vector<std::size_t> cells;
    for (std::size_t i = 0; mask >> i; ++i) {
        if ((mask >> i) & 1) {
            cells.push_back(i);
        }
    }
    return cells;
}

} // namespace

ConsistencyReport check_consistency(const MultiProbabilitySpace& mps, double tol) {
    const ContextFamily& family = mps.family();
    std::vector<SubsetTable> tables;
    tables.reserve(family.size());
    for (std::size_t c = 0; c < family.size(); ++c) {
        // The 2^k subset tables are meant for desk-scale decompositions.
        if (family.context(c).decomposition.part_count() > 14) {
            throw Error("context " + family.context(c).id +
                        " is too large for exhaustive cell-union enumeration");
        }
        tables.push_back(build_subset_table(family.context(c).decomposition,
                                            mps.cell_probs(c)));
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = i + 1; j < family.size(); ++j) {
            pairs.emplace_back(i, j);
        }
    }

    std::vector<std::vector<ConsistencyViolation>> found(pairs.size());
    const long long pair_count = static_cast<long long>(pairs.size());
    // Context pairs are independent; the merged report is sorted afterwards,
    // so the result does not depend on scheduling.
    #pragma omp parallel for schedule(dynamic)
    for (long long pi = 0; pi < pair_count; ++pi) {
        const auto [c1, c2] = pairs[static_cast<std::size_t>(pi)];
        const SubsetTable& t1 = tables[c1];
        const SubsetTable& t2 = tables[c2];
        for (std::size_t s1 = 1; s1 < t1.projectors.size(); ++s1) {
            for (std::size_t s2 = 1; s2 < t2.projectors.size(); ++s2) {
                if (t1.dims[s1] != t2.dims[s2]) {
                    continue; // equal subspaces have equal dimension
                }
                const double dist =
                    frobenius_norm(t1.projectors[s1] - t2.projectors[s2]);
                if (dist > tol::subspace_match) {
                    continue;
                }
                const double delta = std::abs(t1.probs[s1] - t2.probs[s2]);
                if (delta > tol) {
                    found[static_cast<std::size_t>(pi)].push_back(
                        {c1, c2, subset_cells(s1), subset_cells(s2),
                         t1.probs[s1], t2.probs[s2], delta});
                }
            }
        }
    }

    ConsistencyReport report{true, {}};
    for (auto& v : found) {
        report.violations.insert(report.violations.end(), v.begin(), v.end());
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const ConsistencyViolation& a, const ConsistencyViolation& b) {
                  if (a.context1 != b.context1) return a.context1 < b.context1;
                  if (a.context2 != b.context2) return a.context2 < b.context2;
                  if (a.cells1 != b.cells1) return a.cells1 < b.cells1;
                  return a.cells2 < b.cells2;
              });
    report.consistent = report.violations.empty();
    return report;
}

ConsistencyReport check_consistency(const MultiProbabilitySpace& mps) {
    return check_consistency(mps, tol::consistency);
}

namespace {

bool is_projector_matrix(const CMatrix& p) {
    if (!p.square() || !is_hermitian(p, tol::herm)) {
        return false;
    }
    return frobenius_norm(p * p - p) <= tol::orth * (1.0 + frobenius_norm(p));
}

} // namespace

QuantumProbabilityDistribution QuantumProbabilityDistribution::from_density(
    DensityMatrix rho) {
    QuantumProbabilityDistribution mu;
    mu.rho_ = std::move(rho);
    return mu;
}

QuantumProbabilityDistribution QuantumProbabilityDistribution::from_table(
    std::vector<std::pair<CMatrix, double>> table) {
    if (table.empty()) {
        throw Error("projector table is empty");
    }
    const int n = table.front().first.rows();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const auto& [p, value] = table[i];
        if (p.rows() != n || !is_projector_matrix(p)) {
            throw Error("table key " + std::to_string(i) +
                        " is not an orthogonal projector");
        }
        if (value < 0.0 || value > 1.0) {
            throw Error("table value outside [0, 1]");
        }
        // The identity must map to 1 and the zero projector to 0.
        const double norm = frobenius_norm(p);
        if (norm == 0.0 && value != 0.0) {
            throw Error("zero projector must have value 0");
        }
        if (frobenius_norm(p - CMatrix::identity(n)) <= tol::subspace_match &&
            std::abs(value - 1.0) > tol::trace_one) {
            throw Error("identity projector must have value 1");
        }
        for (std::size_t j = i + 1; j < table.size(); ++j) {
            if (frobenius_norm(p - table[j].first) <= tol::subspace_match) {
                throw Error("duplicate projector in table");
            }
        }
    }
    QuantumProbabilityDistribution mu;
    mu.table_ = std::move(table);
    return mu;
}

double QuantumProbabilityDistribution::operator()(const CMatrix& projector) const {
    if (rho_.has_value()) {
        if (projector.rows() != rho_->dim() || !projector.square()) {
            throw DimensionMismatchError("projector dimension mismatch");
        }
        return clamp_probability(hs_inner(rho_->matrix(), projector).real());
    }
    for (const auto& [p, value] : table_) {
        if (p.rows() == projector.rows() &&
            frobenius_norm(p - projector) <= tol::subspace_match) {
            return value;
        }
    }
    throw UnknownProjectorError("projector not present in table");
}

AdditivityReport check_additivity(const QuantumProbabilityDistribution& mu,
                                  const std::vector<std::vector<CMatrix>>& families,
                                  double tol) {
    AdditivityReport report{true, {}};
    for (std::size_t f = 0; f < families.size(); ++f) {
        const std::vector<CMatrix>& family = families[f];
        if (family.empty()) {
            continue;
        }
        for (std::size_t j = 0; j < family.size(); ++j) {
            for (std::size_t k = j + 1; k < family.size(); ++k) {
                if (frobenius_norm(family[j] * family[k]) > tol::orth_family) {
                    throw NotOrthogonalFamilyError(
                        "family " + std::to_string(f) +
                        " has non-orthogonal members");
                }
            }
        }
        CMatrix sum = family.front();
        double mu_parts = mu(family.front());
        for (std::size_t k = 1; k < family.size(); ++k) {
            sum = sum + family[k];
            mu_parts += mu(family[k]);
        }
        const double mu_sum = mu(sum);
        const double delta = std::abs(mu_sum - mu_parts);
        if (delta > tol) {
            report.violations.push_back({f, mu_sum, mu_parts, delta});
        }
    }
    report.additive = report.violations.empty();
    return report;
}

namespace {

// Gaussian elimination with partial pivoting for the small dense systems in
// the least-squares fit.
std::vector<double> solve_real_system(std::vector<std::vector<double>> a,
                                      std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) {
                pivot = r;
            }
        }
        if (std::abs(a[pivot][col]) < 1e-12) {
            throw Error("projector set does not span the Hermitian space");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t c = ri + 1; c < n; ++c) {
            s -= a[ri][c] * x[c];
        }
        x[ri] = s / a[ri][ri];
    }
    return x;
}

} // namespace

CMatrix fit_density_lstsq(const std::vector<std::pair<CMatrix, double>>& table) {
    if (table.empty()) {
        throw Error("empty projector table");
    }
    const int n = table.front().first.rows();
    const std::size_t params = static_cast<std::size_t>(n) * n;

    // Real parameterization of a Hermitian matrix: n diagonal entries, then
    // (re, im) for each upper-triangle entry. tr(rho P) is linear in these:
    //   tr(rho P) = sum_i rho_ii P_ii + sum_{i<j} 2 (a c - b d)
    // with rho_ij = a + bi and P_ji = c + di.
    auto design_row = [n](const CMatrix& p) {
        std::vector<double> row;
        row.reserve(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i) {
            row.push_back(p(i, i).real());
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                row.push_back(2.0 * p(j, i).real());
                row.push_back(-2.0 * p(j, i).imag());
            }
        }
        return row;
    };

    std::vector<std::vector<double>> normal(params, std::vector<double>(params, 0.0));
    std::vector<double> rhs(params, 0.0);
    for (const auto& [p, value] : table) {
        if (p.rows() != n) {
            throw DimensionMismatchError("table projectors have differing dimensions");
        }
        const std::vector<double> row = design_row(p);
        for (std::size_t i = 0; i < params; ++i) {
            rhs[i] += row[i] * value;
            for (std::size_t j = 0; j < params; ++j) {
                normal[i][j] += row[i] * row[j];
            }
        }
    }
    const std::vector<double> x = solve_real_system(std::move(normal), std::move(rhs));

    CMatrix rho(n, n);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        rho(i, i) = Complex{x[idx++], 0.0};
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double re = x[idx++];
            const double im = x[idx++];
            rho(i, j) = Complex{re, im};
            rho(j, i) = Complex{re, -im};
        }
    }
    return rho;
}

} // namespace orthotree
