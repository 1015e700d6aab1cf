// Times the serial reference kernels against the OpenMP variants on
// representative sizes, plus one end-to-end consistency audit. Run with
// OMP_NUM_THREADS to control the parallel side.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "orthotree/contexts.hpp"
#include "orthotree/eigen.hpp"
#include "orthotree/kernels.hpp"
#include "orthotree/quantum_state.hpp"
#include "orthotree/rng.hpp"
#include "orthotree/spectral.hpp"

using orthotree::CMatrix;
using orthotree::Complex;
using orthotree::SplitMix64;

namespace {

CMatrix random_matrix(int n, SplitMix64& rng) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = Complex{2.0 * rng.next_double() - 1.0,
                              2.0 * rng.next_double() - 1.0};
        }
    }
    return m;
}

CMatrix random_hermitian(int n, SplitMix64& rng) {
    const CMatrix m = random_matrix(n, rng);
    return (m + adjoint(m)).scaled(0.5);
}

template <typename Fn>
double time_ms(Fn&& fn, int reps) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
        fn();
    }
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() /
           reps;
}

void bench_matmul(int n, int reps) {
    SplitMix64 rng(7);
    const CMatrix a = random_matrix(n, rng);
    const CMatrix b = random_matrix(n, rng);
    CMatrix c(n, n);

    const double serial = time_ms(
        [&] {
            orthotree::kernels::serial::matmul(a.data(), b.data(), c.data(), n,
                                               n, n);
        },
        reps);
    const double par = time_ms(
        [&] {
            orthotree::kernels::parallel::matmul(a.data(), b.data(), c.data(),
                                                 n, n, n);
        },
        reps);
    std::printf("matmul      n=%4d   serial %9.3f ms   parallel %9.3f ms   speedup %.2fx\n",
                n, serial, par, serial / par);
}

void bench_trace_product(int n, int reps) {
    SplitMix64 rng(11);
    const CMatrix a = random_matrix(n, rng);
    const CMatrix b = random_matrix(n, rng);
    volatile double sink = 0.0;

    const double serial = time_ms(
        [&] {
            sink = orthotree::kernels::serial::trace_product(a.data(), b.data(), n)
                       .real();
        },
        reps);
    const double par = time_ms(
        [&] {
            sink = orthotree::kernels::parallel::trace_product(a.data(), b.data(), n)
                       .real();
        },
        reps);
    (void)sink;
    std::printf("trace_prod  n=%4d   serial %9.3f ms   parallel %9.3f ms   speedup %.2fx\n",
                n, serial, par, serial / par);
}

void bench_consistency(int n, int family_size, int reps) {
    SplitMix64 rng(13);
    std::vector<orthotree::ContextEntry> entries;
    for (int c = 0; c < family_size; ++c) {
        const CMatrix a = random_hermitian(n, rng);
        entries.push_back({"c" + std::to_string(c),
                           orthotree::decompose(a).decomposition()});
    }
    orthotree::ContextFamily family(std::move(entries));
    const CMatrix m = random_matrix(n, rng);
    CMatrix w = orthotree::matmul_adj_right(m, m);
    w = w.scaled(1.0 / trace(w).real());
    const orthotree::DensityMatrix rho = orthotree::DensityMatrix::validate(w);
    const orthotree::MultiProbabilitySpace mps = orthotree::from_density(family, rho);

    const double elapsed = time_ms(
        [&] { (void)orthotree::check_consistency(mps); }, reps);
    std::printf("consistency n=%4d contexts=%d   %9.3f ms per audit\n", n,
                family_size, elapsed);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel kernels fall back to serial\n");
#endif

    for (int n : {64, 128, 256}) {
        bench_matmul(n, n <= 128 ? 20 : 5);
    }
    for (int n : {256, 512, 1024}) {
        bench_trace_product(n, 50);
    }
    bench_consistency(8, 6, 5);
    return 0;
}
