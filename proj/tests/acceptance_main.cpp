// Acceptance suite: ten end-to-end checks of the library's core guarantees,
// each printed as one pass/fail line with its runtime. Exits nonzero when
// any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "orthotree/contexts.hpp"
#include "orthotree/eigen.hpp"
#include "orthotree/measurement_tree.hpp"
#include "orthotree/ortho_algebra.hpp"
#include "orthotree/quantum_state.hpp"
#include "orthotree/spectral.hpp"

#include "oracles.hpp"

using namespace orthotree;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
    double time_limit_s = 0.0; // 0 = no limit
};

bool check_le(double value, double bound, const char* what, std::string& detail) {
    if (value <= bound) {
        return true;
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: %.3e exceeds %.3e", what, value, bound);
    detail = buf;
    return false;
}

// 1. Observable <-> decomposition round trip, degenerate spectra included.
bool criterion_decompose_round_trip(std::string& detail) {
    SplitMix64 rng(11001);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 7;
        CMatrix a(n, n);
        if (trial < 50) {
            // Forced repeated eigenvalues via a random unitary conjugation:
            // consecutive index pairs share one eigenvalue.
            std::vector<double> values(static_cast<std::size_t>(n));
            const double base = std::floor(testutil::uniform_pm1(rng) * 3.0);
            for (int i = 0; i < n; ++i) {
                values[static_cast<std::size_t>(i)] = base + i / 2;
            }
            a = testutil::hermitian_with_spectrum(values, rng);
        } else {
            a = testutil::random_hermitian(n, rng);
        }
        const CMatrix rebuilt = synthesize(decompose(a).decomposition());
        if (!check_le(frobenius_norm(a - rebuilt),
                      1e-9 * (1.0 + frobenius_norm(a)),
                      "reconstruction error", detail)) {
            return false;
        }
    }
    return true;
}

// 2. Density <-> measure round trip with unit identifier mass.
bool criterion_density_round_trip(std::string& detail) {
    SplitMix64 rng(11002);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 7;
        const DensityMatrix rho =
            DensityMatrix::validate(testutil::random_density(n, rng));
        const OrthoProbabilityMeasure measure = measure_from_density(rho);

        double mass = 0.0;
        for (const DecompositionPart& p : measure.decomposition.parts()) {
            mass += p.identifier * p.subspace.dim();
        }
        if (!check_le(std::abs(mass - 1.0), 1e-9, "identifier mass", detail)) {
            return false;
        }
        const DensityMatrix back = density_from_measure(measure);
        if (!check_le(frobenius_norm(back.matrix() - rho.matrix()), 1e-9,
                      "round-trip distance", detail)) {
            return false;
        }
    }
    return true;
}

// 3. Probabilities across any decomposition sum to one.
bool criterion_born_normalization(std::string& detail) {
    SplitMix64 rng(11003);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 7;
        const NumDecomposition d =
            decompose(testutil::random_hermitian(n, rng)).decomposition();
        const WaveVector psi = WaveVector(testutil::random_unit_vector(n, rng));
        double total = 0.0;
        for (const DecompositionPart& p : d.parts()) {
            total += born_prob(psi, p.subspace);
        }
        if (!check_le(std::abs(total - 1.0), 1e-11, "probability total", detail)) {
            return false;
        }
    }
    return true;
}

// 4. Canonical-basis probabilities reduce to squared moduli.
bool criterion_squared_modulus(std::string& detail) {
    SplitMix64 rng(11004);
    const int n = 6;
    std::vector<Subspace> lines;
    for (int j = 0; j < n; ++j) {
        lines.push_back(Subspace::line(WaveVector::basis_vector(n, j)));
    }
    for (int trial = 0; trial < 100; ++trial) {
        const std::vector<Complex> psi = testutil::random_unit_vector(n, rng);
        const WaveVector state(psi);
        for (int j = 0; j < n; ++j) {
            const double expected = std::norm(psi[static_cast<std::size_t>(j)]);
            if (!check_le(std::abs(born_prob(state, lines[static_cast<std::size_t>(j)]) -
                                   expected),
                          1e-12, "squared-modulus deviation", detail)) {
                return false;
            }
        }
    }
    return true;
}

// 5. Trace-rule measures agree on every shared cell-union subspace.
bool criterion_trace_rule_consistency(std::string& detail) {
    SplitMix64 rng(11005);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 3; // n in 2..4
        const std::size_t context_count = 2 + rng.next() % 5; // up to 6
        std::vector<ContextEntry> entries;
        for (std::size_t c = 0; c < context_count; ++c) {
            entries.push_back(
                {"c" + std::to_string(c),
                 decompose(testutil::random_hermitian(n, rng)).decomposition()});
        }
        const DensityMatrix rho =
            DensityMatrix::validate(testutil::random_density(n, rng));
        const ConsistencyReport report = check_consistency(
            from_density(ContextFamily(std::move(entries)), rho), 1e-9);
        if (!report.consistent) {
            detail = "violations found in trial " + std::to_string(trial);
            return false;
        }
    }
    return true;
}

// 6. Projector additivity for state-backed distributions; explicit
//    counterexample table is flagged.
bool criterion_additivity(std::string& detail) {
    SplitMix64 rng(11006);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 5;
        const DensityMatrix rho =
            DensityMatrix::validate(testutil::random_density(n, rng));
        const QuantumProbabilityDistribution mu =
            QuantumProbabilityDistribution::from_density(rho);

        // Random orthogonal family: a random subset of some observable's
        // eigenprojectors.
        const HermitianObservable obs =
            decompose(testutil::random_hermitian(n, rng));
        std::vector<CMatrix> family;
        for (const DecompositionPart& p : obs.decomposition().parts()) {
            if (rng.next() & 1 || family.empty()) {
                family.push_back(p.subspace.projector());
            }
        }
        const AdditivityReport report = check_additivity(mu, {family}, 1e-10);
        if (!report.additive) {
            detail = "density-backed distribution failed additivity";
            return false;
        }
    }

    const CMatrix p1 = Subspace::line(WaveVector::basis_vector(2, 0)).projector();
    const CMatrix p2 = Subspace::line(WaveVector::basis_vector(2, 1)).projector();
    std::vector<std::pair<CMatrix, double>> table;
    table.emplace_back(p1, 0.6);
    table.emplace_back(p2, 0.6);
    table.emplace_back(p1 + p2, 1.0);
    const AdditivityReport flagged = check_additivity(
        QuantumProbabilityDistribution::from_table(std::move(table)), {{p1, p2}},
        1e-10);
    if (flagged.additive || flagged.violations.size() != 1 ||
        std::abs(flagged.violations[0].delta - 0.2) > 1e-12) {
        detail = "table counterexample was not flagged";
        return false;
    }
    return true;
}

// 7. CDFs are monotone right-continuous steps with atoms at the spectrum.
bool criterion_cdf_contract(std::string& detail) {
    SplitMix64 rng(11007);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 7;
        const HermitianObservable obs =
            decompose(testutil::random_hermitian(n, rng));
        const WaveVector psi = WaveVector(testutil::random_unit_vector(n, rng));
        const ObservableCDF dist = cdf(obs, psi);

        if (dist.atoms().size() != obs.spectrum().size()) {
            detail = "atom count differs from spectrum size";
            return false;
        }
        for (std::size_t i = 0; i < dist.atoms().size(); ++i) {
            if (dist.atoms()[i].lambda != obs.spectrum()[i]) {
                detail = "atom location differs from spectrum";
                return false;
            }
        }
        if (!check_le(std::abs(dist(std::numeric_limits<double>::infinity()) - 1.0),
                      1e-10, "F(inf)", detail)) {
            return false;
        }
        // Monotone and flat off the spectrum; right-continuous at atoms.
        double previous = 0.0;
        for (std::size_t i = 0; i < dist.atoms().size(); ++i) {
            const double at_atom = dist(dist.atoms()[i].lambda);
            const double just_below = dist(dist.atoms()[i].lambda - 1e-9);
            if (at_atom + 1e-14 < previous || just_below + 1e-14 < previous) {
                detail = "CDF is not monotone";
                return false;
            }
            if (std::abs(at_atom - (just_below + dist.atoms()[i].prob)) > 1e-12) {
                detail = "atom jump differs from its probability";
                return false;
            }
            previous = at_atom;
        }
    }
    return true;
}

// 8. Sampled frequencies match the metaspace cells.
bool criterion_sampling_fidelity(std::string& detail) {
    std::vector<ExperimentalContext> contexts;
    contexts.push_back({"z",
                        decompose(CMatrix{{1.0, 0.0}, {0.0, -1.0}}),
                        DensityMatrix::validate(CMatrix{{0.3, 0.0}, {0.0, 0.7}})});
    contexts.push_back({"x",
                        decompose(CMatrix{{0.0, 1.0}, {1.0, 0.0}}),
                        DensityMatrix::validate(CMatrix{{0.3, 0.0}, {0.0, 0.7}})});
    const std::vector<double> q{0.5, 0.5};
    const Metaspace meta = reduce_to_metaspace(std::move(contexts), q);

    const std::size_t count = 100000;
    const std::vector<SampleRecord> samples = sample(meta.tree(), q, 424242, count);

    std::map<std::pair<std::size_t, double>, double> frequency;
    for (const SampleRecord& s : samples) {
        frequency[{s.context_index, s.lambda}] += 1.0;
    }

    double chi_square = 0.0;
    int dof = -1;
    for (const MetaspaceCell& cell : meta.cells()) {
        if (cell.residual) {
            continue;
        }
        const double p = cell.probability;
        const double observed = frequency[{cell.context_index, cell.lambda}];
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(count));
        if (!check_le(std::abs(observed / count - p), 3.0 * se,
                      "cell frequency deviation", detail)) {
            return false;
        }
        const double expected = p * static_cast<double>(count);
        chi_square += (observed - expected) * (observed - expected) / expected;
        ++dof;
    }
    const double p_value = testutil::chi_square_p_value(chi_square, dof);
    if (p_value <= 1e-3) {
        detail = "chi-square p-value " + std::to_string(p_value);
        return false;
    }
    return true;
}

// 9. Metaspace cells are a probability distribution with silent residuals.
bool criterion_metaspace_normalization(std::string& detail) {
    SplitMix64 rng(11009);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 4;
        const std::size_t context_count = 1 + rng.next() % 4;
        std::vector<ExperimentalContext> contexts;
        for (std::size_t c = 0; c < context_count; ++c) {
            contexts.push_back(
                {"c" + std::to_string(c),
                 decompose(testutil::random_hermitian(n, rng)),
                 DensityMatrix::validate(testutil::random_density(n, rng))});
        }
        const std::vector<double> q = testutil::random_pmf(context_count, rng);
        const Metaspace meta = reduce_to_metaspace(std::move(contexts), q);
        if (!check_le(std::abs(meta.total_probability() - 1.0), 1e-10,
                      "total probability", detail)) {
            return false;
        }
        for (const MetaspaceCell& cell : meta.cells()) {
            if (cell.residual && cell.probability != 0.0) {
                detail = "residual cell carries probability";
                return false;
            }
        }
    }
    return true;
}

// 10. Vector classification is total with range spectrum-plus-star.
bool criterion_eigen_pairing(std::string& detail) {
    SplitMix64 rng(11010);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const HermitianObservable obs =
            decompose(testutil::random_hermitian(n, rng));

        for (const DecompositionPart& p : obs.decomposition().parts()) {
            for (int j = 0; j < p.subspace.dim(); ++j) {
                const ExtendedReal f =
                    eigen_pairing(obs, p.subspace.basis().column(j));
                if (!f.is_real() || f.value() != p.identifier) {
                    detail = "exact eigenvector misclassified";
                    return false;
                }
            }
        }
        for (int g = 0; g < 100; ++g) {
            if (!eigen_pairing(obs, testutil::random_unit_vector(n, rng)).is_star()) {
                detail = "generic vector classified as an eigenvector";
                return false;
            }
        }
        const std::vector<Complex> zero(static_cast<std::size_t>(n),
                                        Complex{0.0, 0.0});
        if (!eigen_pairing(obs, zero).is_star()) {
            detail = "zero vector not classified to star";
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"observable/decomposition round trip (200 matrices, degenerate included)",
         criterion_decompose_round_trip, 10.0},
        {"density/measure round trip (200 states)", criterion_density_round_trip,
         10.0},
        {"probability normalization over decompositions (500 pairs)",
         criterion_born_normalization},
        {"squared-modulus rule in the canonical basis (100 states)",
         criterion_squared_modulus},
        {"trace-rule cross-context consistency (50 instances)",
         criterion_trace_rule_consistency, 30.0},
        {"projector additivity plus table counterexample (100 families)",
         criterion_additivity},
        {"CDF step-function contract (100 pairs)", criterion_cdf_contract},
        {"sampling fidelity against metaspace cells (1e5 draws)",
         criterion_sampling_fidelity, 5.0},
        {"metaspace normalization with zero residuals (50 instances)",
         criterion_metaspace_normalization},
        {"classification totality and range (50 observables)",
         criterion_eigen_pairing},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (ok && criteria[i].time_limit_s > 0.0 &&
            seconds > criteria[i].time_limit_s) {
            ok = false;
            detail = "exceeded the " + std::to_string(criteria[i].time_limit_s) +
                     "s budget";
        }
        std::printf("[%2zu/%zu] %s  %s (%.2fs)%s%s\n", i + 1, criteria.size(),
                    ok ? "PASS" : "FAIL", criteria[i].name.c_str(), seconds,
                    detail.empty() ? "" : " - ", detail.c_str());
        if (!ok) {
            ++failures;
        }
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
