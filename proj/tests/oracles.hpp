// Test-only helpers: random input generators and independent oracles the
// library results are checked against. Nothing here calls into the code
// paths under test.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "orthotree/complex_matrix.hpp"
#include "orthotree/rng.hpp"

namespace testutil {

using orthotree::CMatrix;
using orthotree::Complex;
using orthotree::SplitMix64;

inline double uniform_pm1(SplitMix64& rng) { return 2.0 * rng.next_double() - 1.0; }

inline double gaussian(SplitMix64& rng) {
    double u1 = rng.next_double();
    const double u2 = rng.next_double();
    if (u1 < 1e-300) {
        u1 = 1e-300;
    }
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline CMatrix random_matrix(int rows, int cols, SplitMix64& rng) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex{gaussian(rng), gaussian(rng)};
        }
    }
    return m;
}

inline CMatrix random_hermitian(int n, SplitMix64& rng) {
    const CMatrix m = random_matrix(n, n, rng);
    return (m + adjoint(m)).scaled(0.5);
}

// Gram-Schmidt on a random square matrix; redraws on the (measure-zero)
// chance of rank deficiency.
inline CMatrix random_unitary(int n, SplitMix64& rng) {
    while (true) {
        const CMatrix m = random_matrix(n, n, rng);
        CMatrix u(n, n);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            std::vector<Complex> v = m.column(j);
            for (int prev = 0; prev < j; ++prev) {
                Complex proj{0.0, 0.0};
                for (int i = 0; i < n; ++i) {
                    proj += std::conj(u(i, prev)) * v[static_cast<std::size_t>(i)];
                }
                for (int i = 0; i < n; ++i) {
                    v[static_cast<std::size_t>(i)] -= proj * u(i, prev);
                }
            }
            const double norm = std::sqrt(orthotree::vec_norm_sq(v));
            if (norm < 1e-8) {
                ok = false;
                break;
            }
            for (int i = 0; i < n; ++i) {
                u(i, j) = v[static_cast<std::size_t>(i)] / norm;
            }
        }
        if (ok) {
            return u;
        }
    }
}

// Hermitian matrix with a prescribed (possibly repeated) diagonal spectrum,
// conjugated by a random unitary.
inline CMatrix hermitian_with_spectrum(const std::vector<double>& values,
                                       SplitMix64& rng) {
    const int n = static_cast<int>(values.size());
    const CMatrix u = random_unitary(n, rng);
    CMatrix d(n, n);
    for (int i = 0; i < n; ++i) {
        d(i, i) = Complex{values[static_cast<std::size_t>(i)], 0.0};
    }
    return u * d * adjoint(u);
}

inline std::vector<Complex> random_vector(int n, SplitMix64& rng) {
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (Complex& z : v) {
        z = Complex{gaussian(rng), gaussian(rng)};
    }
    return v;
}

inline std::vector<Complex> random_unit_vector(int n, SplitMix64& rng) {
    std::vector<Complex> v = random_vector(n, rng);
    const double norm = std::sqrt(orthotree::vec_norm_sq(v));
    for (Complex& z : v) {
        z /= norm;
    }
    return v;
}

// rho = M M* / tr(M M*): Hermitian, positive semi-definite, trace one.
inline CMatrix random_density(int n, SplitMix64& rng) {
    const CMatrix m = random_matrix(n, n, rng);
    CMatrix w = matmul_adj_right(m, m);
    return w.scaled(1.0 / trace(w).real());
}

inline std::vector<double> random_pmf(std::size_t k, SplitMix64& rng) {
    std::vector<double> q(k);
    double total = 0.0;
    for (double& p : q) {
        p = rng.next_double() + 1e-3;
        total += p;
    }
    for (double& p : q) {
        p /= total;
    }
    return q;
}

// ---- Independent oracles ------------------------------------------------

// tr(A B) by forming the product with explicit double loops.
inline Complex trace_product_oracle(const CMatrix& a, const CMatrix& b) {
    const int n = a.rows();
    Complex t{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        Complex diag{0.0, 0.0};
        for (int j = 0; j < n; ++j) {
            diag += a(i, j) * b(j, i);
        }
        t += diag;
    }
    return t;
}

// Closed-form eigenvalues of a 2x2 Hermitian matrix from the quadratic
// characteristic polynomial, ascending.
inline std::vector<double> eig2x2_oracle(const CMatrix& a) {
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const double off = std::abs(a(0, 1));
    const double mean = 0.5 * (p + q);
    const double radius = std::sqrt(0.25 * (p - q) * (p - q) + off * off);
    return {mean - radius, mean + radius};
}

// Matrix inverse by Gauss-Jordan elimination with partial pivoting.
inline CMatrix inverse_oracle(const CMatrix& a) {
    const int n = a.rows();
    CMatrix work = a;
    CMatrix inv = CMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(work(r, col)) > std::abs(work(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(work(pivot, col)) < 1e-12) {
            throw std::runtime_error("inverse_oracle: singular matrix");
        }
        for (int c = 0; c < n; ++c) {
            std::swap(work(col, c), work(pivot, c));
            std::swap(inv(col, c), inv(pivot, c));
        }
        const Complex d = work(col, col);
        for (int c = 0; c < n; ++c) {
            work(col, c) /= d;
            inv(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const Complex factor = work(r, col);
            for (int c = 0; c < n; ++c) {
                work(r, c) -= factor * work(col, c);
                inv(r, c) -= factor * inv(col, c);
            }
        }
    }
    return inv;
}

// Regularized upper incomplete gamma Q(a, x), series / continued fraction.
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) {
        throw std::runtime_error("gamma_q: domain error");
    }
    if (x == 0.0) {
        return 1.0;
    }
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a, x) by series, then Q = 1 - P.
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) {
                break;
            }
        }
        const double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // Q(a, x) by Lentz continued fraction.
    double b = x + 1.0 - a;
    double c = 1e300;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) {
            d = 1e-300;
        }
        c = b + an / c;
        if (std::abs(c) < 1e-300) {
            c = 1e-300;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) {
            break;
        }
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

// Chi-square upper-tail p-value with k degrees of freedom.
inline double chi_square_p_value(double statistic, int dof) {
    return gamma_q(0.5 * dof, 0.5 * statistic);
}

} // namespace testutil
