#include <doctest.h>

#include <cmath>

#include "orthotree/eigen.hpp"
#include "orthotree/error.hpp"
#include "orthotree/spectral.hpp"

#include "oracles.hpp"

using namespace orthotree;

namespace {

CMatrix pauli_z() { return CMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

std::vector<Complex> basis_vec(int n, int j) {
    return WaveVector::basis_vector(n, j).components();
}

} // namespace

TEST_CASE("decompose a diagonal observable") {
    const HermitianObservable obs = decompose(pauli_z());
    REQUIRE(obs.spectrum().size() == 2);
    CHECK(obs.spectrum()[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(obs.spectrum()[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(obs.decomposition().part(0).subspace.contains(basis_vec(2, 1), 1e-10));
    CHECK(obs.decomposition().part(1).subspace.contains(basis_vec(2, 0), 1e-10));
    CHECK_FALSE(obs.cluster_ambiguity());
}

TEST_CASE("decompose the identity into one full eigenspace") {
    const HermitianObservable obs = decompose(CMatrix::identity(3));
    REQUIRE(obs.spectrum().size() == 1);
    CHECK(obs.spectrum()[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(obs.decomposition().part(0).subspace.dim() == 3);
}

TEST_CASE("decompose groups repeated eigenvalues and keeps the trace formula") {
    const CMatrix a{{2.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 5.0}};
    const HermitianObservable obs = decompose(a);
    REQUIRE(obs.spectrum().size() == 2);
    CHECK(obs.spectrum()[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(obs.spectrum()[1] == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(obs.decomposition().part(0).subspace.dim() == 2);
    CHECK(obs.decomposition().part(1).subspace.dim() == 1);

    double weighted = 0.0;
    for (const DecompositionPart& p : obs.decomposition().parts()) {
        weighted += p.identifier * p.subspace.dim();
    }
    CHECK(weighted == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(trace(a).real() == doctest::Approx(weighted).epsilon(1e-14));
}

TEST_CASE("synthesize simple decompositions") {
    std::vector<DecompositionPart> parts;
    parts.push_back({1.0, Subspace::line(WaveVector::basis_vector(2, 0))});
    parts.push_back({-1.0, Subspace::line(WaveVector::basis_vector(2, 1))});
    const CMatrix sz = synthesize(NumDecomposition(2, std::move(parts)));
    CHECK(frobenius_norm(sz - pauli_z()) < 1e-14);

    std::vector<DecompositionPart> full;
    full.push_back({1.0, Subspace::full(4)});
    CHECK(frobenius_norm(synthesize(NumDecomposition(4, std::move(full))) -
                         CMatrix::identity(4)) < 1e-14);
}

TEST_CASE("decompose/synthesize round trip matches the raw reconstruction") {
    SplitMix64 rng(301);
    for (int trial = 0; trial < 30; ++trial) {
        const CMatrix a = testutil::random_hermitian(6, rng);
        const HermitianObservable obs = decompose(a);
        const CMatrix rebuilt = synthesize(obs.decomposition());
        CHECK(frobenius_norm(a - rebuilt) <= 1e-10 * (1.0 + frobenius_norm(a)));

        // Independent route: V diag(values) V* from the raw solver output.
        const EigenResult eig = hermitian_eigensolve(a);
        CMatrix d(6, 6);
        for (int i = 0; i < 6; ++i) {
            d(i, i) = Complex{eig.values[static_cast<std::size_t>(i)], 0.0};
        }
        const CMatrix direct = eig.vectors * d * adjoint(eig.vectors);
        CHECK(frobenius_norm(rebuilt - direct) <= 1e-10 * (1.0 + frobenius_norm(a)));
    }
}

TEST_CASE("degenerate spectra cluster into matching eigenspace dimensions") {
    SplitMix64 rng(302);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = testutil::hermitian_with_spectrum({1.0, 1.0, 3.0, 3.0, 3.0},
                                                            rng);
        const HermitianObservable obs = decompose(a);
        REQUIRE(obs.spectrum().size() == 2);
        CHECK(obs.decomposition().part(0).subspace.dim() == 2);
        CHECK(obs.decomposition().part(1).subspace.dim() == 3);
        CHECK(obs.spectrum()[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(obs.spectrum()[1] == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(frobenius_norm(a - synthesize(obs.decomposition())) <=
              1e-10 * (1.0 + frobenius_norm(a)));
    }
}

TEST_CASE("chained near-degenerate eigenvalues set the ambiguity flag") {
    // Consecutive gaps sit under the merge threshold while the total spread
    // exceeds it, so single linkage chains all three into one eigenspace.
    const double tau = 1e-8;
    const CMatrix a{{0.0, 0.0, 0.0},
                    {0.0, 0.6e-8, 0.0},
                    {0.0, 0.0, 1.2e-8}};
    const HermitianObservable obs = decompose(a, tau);
    CHECK(obs.cluster_ambiguity());
    REQUIRE(obs.spectrum().size() == 1);
    CHECK(obs.decomposition().part(0).subspace.dim() == 3);
    CHECK(obs.spectrum()[0] == doctest::Approx(0.6e-8).epsilon(1e-6));

    // Well separated values do not set the flag.
    CHECK_FALSE(decompose(CMatrix{{1.0, 0.0}, {0.0, 2.0}}, tau).cluster_ambiguity());
}

TEST_CASE("eigenspaces of distinct identifiers are orthogonal and complete") {
    SplitMix64 rng(303);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + trial % 5;
        const HermitianObservable obs = decompose(testutil::random_hermitian(n, rng));

        CMatrix sum(n, n);
        for (const DecompositionPart& p : obs.decomposition().parts()) {
            sum = sum + p.subspace.projector();
        }
        CHECK(frobenius_norm(sum - CMatrix::identity(n)) <= 1e-9);

        const auto& parts = obs.decomposition().parts();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                std::vector<Complex> x = parts[i].subspace.basis().column(0);
                std::vector<Complex> y = parts[j].subspace.basis().column(0);
                CHECK(std::abs(inner(x, y)) <= 1e-9);
            }
        }

        // trace(A) equals the multiplicity-weighted identifier sum.
        double weighted = 0.0;
        for (const DecompositionPart& p : parts) {
            weighted += p.identifier * p.subspace.dim();
        }
        CHECK(trace(obs.matrix()).real() == doctest::Approx(weighted).epsilon(1e-9));
        for (const DecompositionPart& p : parts) {
            CHECK(trace(p.subspace.projector()).real() ==
                  doctest::Approx(p.subspace.dim()).epsilon(1e-9));
        }
    }
}

TEST_CASE("one vector per eigenspace is linearly independent") {
    SplitMix64 rng(304);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 4 + trial % 4;
        const HermitianObservable obs = decompose(testutil::random_hermitian(n, rng));
        const std::size_t k = obs.decomposition().part_count();

        CMatrix sample(n, static_cast<int>(k));
        for (std::size_t d = 0; d < k; ++d) {
            const Subspace& s = obs.decomposition().part(d).subspace;
            // Random combination of the cell's basis columns.
            std::vector<Complex> x(static_cast<std::size_t>(n), Complex{0.0, 0.0});
            for (int j = 0; j < s.dim(); ++j) {
                const Complex coeff{testutil::gaussian(rng), testutil::gaussian(rng)};
                for (int i = 0; i < n; ++i) {
                    x[static_cast<std::size_t>(i)] += coeff * s.basis()(i, j);
                }
            }
            const double norm = std::sqrt(vec_norm_sq(x));
            for (int i = 0; i < n; ++i) {
                sample(i, static_cast<int>(d)) = x[static_cast<std::size_t>(i)] / norm;
            }
        }
        // Smallest eigenvalue of the Gram matrix is the squared smallest
        // singular value of the sample matrix.
        const EigenResult gram = hermitian_eigensolve(matmul_adj_left(sample, sample));
        CHECK(gram.values.front() > 1e-12);
    }
}

TEST_CASE("eigen-pairing on exact and generic vectors") {
    const HermitianObservable sz = decompose(pauli_z());
    CHECK(eigen_pairing(sz, basis_vec(2, 0)) == ExtendedReal::real(1.0));
    CHECK(eigen_pairing(sz, basis_vec(2, 1)) == ExtendedReal::real(-1.0));

    const std::vector<Complex> superposition{Complex{1.0, 0.0}, Complex{1.0, 0.0}};
    CHECK(eigen_pairing(sz, superposition).is_star());

    const std::vector<Complex> zero(2, Complex{0.0, 0.0});
    CHECK(eigen_pairing(sz, zero).is_star());

    CHECK_THROWS_AS(eigen_pairing(sz, basis_vec(3, 0)), DimensionMismatchError);
}

TEST_CASE("eigen-pairing is total with disjoint level sets") {
    SplitMix64 rng(305);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 5;
        const HermitianObservable obs = decompose(testutil::random_hermitian(n, rng));

        // Scaled eigenvectors classify to their own identifier.
        for (const DecompositionPart& p : obs.decomposition().parts()) {
            std::vector<Complex> x = p.subspace.basis().column(0);
            for (Complex& z : x) {
                z *= Complex{0.0, 2.5};
            }
            const ExtendedReal f = eigen_pairing(obs, x);
            REQUIRE(f.is_real());
            CHECK(f.value() == p.identifier);
        }
        // Generic vectors land on Star.
        for (int g = 0; g < 20; ++g) {
            CHECK(eigen_pairing(obs, testutil::random_unit_vector(n, rng)).is_star());
        }
    }
}

TEST_CASE("function round trips") {
    const HermitianObservable sz = decompose(pauli_z());
    const OrthoMeasurableFunction f = to_function(sz);
    REQUIRE(f.graph_size() == 2);
    CHECK(f.value_at(0) == doctest::Approx(-1.0));
    CHECK(f.value_at(1) == doctest::Approx(1.0));
    CHECK(f.level_set(1).contains(basis_vec(2, 0), 1e-10));

    const HermitianObservable back = from_function(f);
    CHECK(frobenius_norm(back.matrix() - sz.matrix()) < 1e-12);

    const ExtendedReal on_e1 = f.evaluate(basis_vec(2, 0));
    REQUIRE(on_e1.is_real());
    CHECK(on_e1.value() == doctest::Approx(1.0));
    CHECK(f.evaluate(std::vector<Complex>{Complex{1.0, 0.0}, Complex{1.0, 0.0}})
              .is_star());

    // Constant function on the whole space corresponds to a scaled identity.
    std::vector<DecompositionPart> whole;
    whole.push_back({3.0, Subspace::full(2)});
    const OrthoMeasurableFunction constant(NumDecomposition(2, std::move(whole)));
    CHECK(frobenius_norm(from_function(constant).matrix() -
                         CMatrix::identity(2).scaled(3.0)) < 1e-12);
}

TEST_CASE("function round trip on random observables") {
    SplitMix64 rng(306);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = testutil::random_hermitian(5, rng);
        const HermitianObservable obs = decompose(a);
        const HermitianObservable back = from_function(to_function(obs));
        CHECK(frobenius_norm(back.matrix() - obs.matrix()) <= 1e-10);
        REQUIRE(back.spectrum().size() == obs.spectrum().size());
        for (std::size_t i = 0; i < obs.spectrum().size(); ++i) {
            CHECK(back.spectrum()[i] == obs.spectrum()[i]);
            CHECK(subspace_equal(back.decomposition().part(i).subspace,
                                 obs.decomposition().part(i).subspace, 1e-8));
        }
    }
}

TEST_CASE("functions must have distinct values per level set") {
    std::vector<DecompositionPart> parts;
    parts.push_back({1.0, Subspace::line(WaveVector::basis_vector(2, 0))});
    parts.push_back({1.0, Subspace::line(WaveVector::basis_vector(2, 1))});
    CHECK_THROWS_AS(NumDecomposition(2, std::move(parts)), InvalidDecompositionError);
}

TEST_CASE("subspace equality is basis independent") {
    const Subspace e1 = Subspace::line(WaveVector::basis_vector(3, 0));
    const Subspace e1_scaled = Subspace::line(
        WaveVector(std::vector<Complex>{Complex{2.0, 0.0}, Complex{0.0, 0.0},
                                        Complex{0.0, 0.0}}));
    CHECK(subspace_equal(e1, e1_scaled, 1e-10));

    const Subspace e2 = Subspace::line(WaveVector::basis_vector(3, 1));
    CHECK_FALSE(subspace_equal(e1, e2, 1e-8));

    // Same plane through two different bases.
    CMatrix canonical(3, 2);
    canonical(0, 0) = 1.0;
    canonical(1, 1) = 1.0;
    CMatrix rotated(3, 2);
    const double s = 1.0 / std::sqrt(2.0);
    rotated(0, 0) = s;
    rotated(1, 0) = s;
    rotated(0, 1) = s;
    rotated(1, 1) = -s;
    CHECK(subspace_equal(Subspace(canonical), Subspace(rotated), 1e-10));

    CHECK_THROWS_AS(subspace_equal(e1, Subspace::full(2), 1e-8),
                    DimensionMismatchError);
}

TEST_CASE("invalid decompositions are rejected") {
    // Incomplete: dimensions do not sum to the ambient dimension.
    std::vector<DecompositionPart> partial;
    partial.push_back({1.0, Subspace::line(WaveVector::basis_vector(3, 0))});
    CHECK_THROWS_AS(NumDecomposition(3, std::move(partial)),
                    InvalidDecompositionError);

    // Overlapping subspaces are not orthogonal.
    std::vector<DecompositionPart> overlapping;
    overlapping.push_back({1.0, Subspace::line(WaveVector::basis_vector(2, 0))});
    const WaveVector diag(std::vector<Complex>{Complex{1.0, 0.0}, Complex{1.0, 0.0}});
    overlapping.push_back({2.0, Subspace::line(diag)});
    CHECK_THROWS_AS(NumDecomposition(2, std::move(overlapping)),
                    InvalidDecompositionError);

    CHECK_THROWS_AS(decompose(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitianError);
}
