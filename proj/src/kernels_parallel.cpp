#include "orthotree/kernels.hpp"

// OpenMP variants of the dense kernels. Each routine computes exactly what
// its serial counterpart computes; summation order inside a row is
// preserved, so matmul results are bitwise identical while the reductions
// (frobenius_norm_sq, trace_product) may differ at rounding level.
//
// Without OpenMP these compile to plain calls into the serial reference.

namespace orthotree::kernels::parallel {

void matmul(const Complex* a, const Complex* b, Complex* c,
            int m, int k, int n) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        Complex* ci = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            ci[j] = Complex{0.0, 0.0};
        }
        const Complex* ai = a + static_cast<std::size_t>(i) * k;
        for (int l = 0; l < k; ++l) {
            const Complex ail = ai[l];
            const Complex* bl = b + static_cast<std::size_t>(l) * n;
            for (int j = 0; j < n; ++j) {
                ci[j] += ail * bl[j];
            }
        }
    }
#else
    serial::matmul(a, b, c, m, k, n);
#endif
}

void matmul_adj_left(const Complex* a, const Complex* b, Complex* c,
                     int m, int k, int n) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        Complex* ci = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            ci[j] = Complex{0.0, 0.0};
        }
        for (int l = 0; l < k; ++l) {
            const Complex ail = std::conj(a[static_cast<std::size_t>(l) * m + i]);
            const Complex* bl = b + static_cast<std::size_t>(l) * n;
            for (int j = 0; j < n; ++j) {
                ci[j] += ail * bl[j];
            }
        }
    }
#else
    serial::matmul_adj_left(a, b, c, m, k, n);
#endif
}

void matmul_adj_right(const Complex* a, const Complex* b, Complex* c,
                      int m, int k, int n) {
#ifdef _OPENMP
    #pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        const Complex* ai = a + static_cast<std::size_t>(i) * k;
        Complex* ci = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const Complex* bj = b + static_cast<std::size_t>(j) * k;
            Complex sum{0.0, 0.0};
            for (int l = 0; l < k; ++l) {
                sum += ai[l] * std::conj(bj[l]);
            }
            ci[j] = sum;
        }
    }
#else
    serial::matmul_adj_right(a, b, c, m, k, n);
#endif
}

double frobenius_norm_sq(const Complex* a, std::size_t len) {
#ifdef _OPENMP
    double s = 0.0;
    const long long ll = static_cast<long long>(len);
    #pragma omp parallel for reduction(+ : s) schedule(static)
    for (long long i = 0; i < ll; ++i) {
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return s;
#else
    return serial::frobenius_norm_sq(a, len);
#endif
}

Complex trace_product(const Complex* a, const Complex* b, int n) {
#ifdef _OPENMP
    double re = 0.0;
    double im = 0.0;
    #pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (int i = 0; i < n; ++i) {
        const Complex* ai = a + static_cast<std::size_t>(i) * n;
        Complex row{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            row += ai[j] * b[static_cast<std::size_t>(j) * n + i];
        }
        re += row.real();
        im += row.imag();
    }
    return Complex{re, im};
#else
    return serial::trace_product(a, b, n);
#endif
}

void accumulate_scaled(Complex* acc, const Complex* x, double w,
                       std::size_t len) {
#ifdef _OPENMP
    const long long ll = static_cast<long long>(len);
    #pragma omp parallel for schedule(static)
    for (long long i = 0; i < ll; ++i) {
        acc[i] += w * x[i];
    }
#else
    serial::accumulate_scaled(acc, x, w, len);
#endif
}

} // namespace orthotree::kernels::parallel
