#include "orthotree/kernels.hpp"

#include <atomic>

namespace orthotree::kernels {

namespace {

std::atomic<Backend> g_backend{Backend::Auto};

// Work threshold (in flops) below which Auto stays on the serial path;
// thread startup dominates for the small matrices this library mostly sees.
constexpr double kParallelThreshold = 1 << 18;

bool use_parallel(double flops) {
    switch (g_backend.load(std::memory_order_relaxed)) {
        case Backend::Serial:
            return false;
        case Backend::Parallel:
            return parallel_available();
        case Backend::Auto:
        default:
            return parallel_available() && flops >= kParallelThreshold;
    }
}

} // namespace

void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

Backend backend() { return g_backend.load(std::memory_order_relaxed); }

bool parallel_available() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

void matmul(const Complex* a, const Complex* b, Complex* c,
            int m, int k, int n) {
    if (use_parallel(8.0 * m * k * n)) {
        parallel::matmul(a, b, c, m, k, n);
    } else {
        serial::matmul(a, b, c, m, k, n);
    }
}

void matmul_adj_left(const Complex* a, const Complex* b, Complex* c,
                     int m, int k, int n) {
    if (use_parallel(8.0 * m * k * n)) {
        parallel::matmul_adj_left(a, b, c, m, k, n);
    } else {
        serial::matmul_adj_left(a, b, c, m, k, n);
    }
}

void matmul_adj_right(const Complex* a, const Complex* b, Complex* c,
                      int m, int k, int n) {
    if (use_parallel(8.0 * m * k * n)) {
        parallel::matmul_adj_right(a, b, c, m, k, n);
    } else {
        serial::matmul_adj_right(a, b, c, m, k, n);
    }
}

double frobenius_norm_sq(const Complex* a, std::size_t len) {
    if (use_parallel(4.0 * static_cast<double>(len))) {
        return parallel::frobenius_norm_sq(a, len);
    }
    return serial::frobenius_norm_sq(a, len);
}

Complex trace_product(const Complex* a, const Complex* b, int n) {
    if (use_parallel(8.0 * n * n)) {
        return parallel::trace_product(a, b, n);
    }
    return serial::trace_product(a, b, n);
}

void accumulate_scaled(Complex* acc, const Complex* x, double w,
                       std::size_t len) {
    if (use_parallel(2.0 * static_cast<double>(len))) {
        parallel::accumulate_scaled(acc, x, w, len);
    } else {
        serial::accumulate_scaled(acc, x, w, len);
    }
}

} // namespace orthotree::kernels
