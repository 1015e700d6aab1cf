#include "orthotree/kernels.hpp"

namespace orthotree::kernels::serial {

void matmul(const Complex* a, const Complex* b, Complex* c,
            int m, int k, int n) {
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
}

void matmul_adj_left(const Complex* a, const Complex* b, Complex* c,
                     int m, int k, int n) {
    // a is k x m; result row i uses column i of a, conjugated.
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
}

void matmul_adj_right(const Complex* a, const Complex* b, Complex* c,
                      int m, int k, int n) {
    // b is n x k; result column j uses row j of b, conjugated.
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
}

double frobenius_norm_sq(const Complex* a, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return s;
}

Complex trace_product(const Complex* a, const Complex* b, int n) {
    // tr(AB) = sum_i sum_j a[i][j] * b[j][i]
    Complex t{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const Complex* ai = a + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            t += ai[j] * b[static_cast<std::size_t>(j) * n + i];
        }
    }
    return t;
}

void accumulate_scaled(Complex* acc, const Complex* x, double w,
                       std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        acc[i] += w * x[i];
    }
}

} // namespace orthotree::kernels::serial
