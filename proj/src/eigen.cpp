#include "orthotree/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orthotree/error.hpp"
#include "orthotree/log.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            if (i != j) {
                const Complex z = a(i, j);
                s += z.real() * z.real() + z.imag() * z.imag();
            }
        }
    }
    return std::sqrt(s);
}

// One Jacobi rotation zeroing a(p, q). The pivot a_pq = |a_pq| e^{i phi} is
// first rotated onto the real axis by the phase factor, then annihilated by
// a real Givens rotation; both are folded into a single unitary R that is
// the identity except in the (p, q) plane:
//   R(p,p) = c, R(p,q) = s, R(q,p) = -s e^{-i phi}, R(q,q) = c e^{-i phi}.
// A <- R* A R and V <- V R.
void rotate(CMatrix& a, CMatrix& v, int p, int q) {
    const Complex apq = a(p, q);
    const double abs_apq = std::abs(apq);
    if (abs_apq == 0.0) {
        return;
    }
    const Complex w = apq / abs_apq;       // e^{i phi}
    const Complex wbar = std::conj(w);

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (aqq - app) / (2.0 * abs_apq);
    const double t = (tau >= 0.0)
                         ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                         : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = a.rows();

    // A <- A R (columns p and q).
    for (int k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * wbar * akq;
        a(k, q) = s * akp + c * wbar * akq;
    }
    // A <- R* A (rows p and q).
    for (int k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * w * aqk;
        a(q, k) = s * apk + c * w * aqk;
    }
    // The pivot is zero and the diagonal real by construction; pin both so
    // rounding residue cannot accumulate over sweeps.
    a(p, q) = Complex{0.0, 0.0};
    a(q, p) = Complex{0.0, 0.0};
    a(p, p) = Complex{a(p, p).real(), 0.0};
    a(q, q) = Complex{a(q, q).real(), 0.0};

    // V <- V R.
    for (int k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * wbar * vkq;
        v(k, q) = s * vkp + c * wbar * vkq;
    }
}

void fix_column_phases(CMatrix& v) {
    for (int j = 0; j < v.cols(); ++j) {
        int arg_max = 0;
        double best = -1.0;
        for (int i = 0; i < v.rows(); ++i) {
            const double mag = std::abs(v(i, j));
            if (mag > best) {
                best = mag;
                arg_max = i;
            }
        }
        const Complex z = v(arg_max, j);
        if (std::abs(z) == 0.0) {
            continue;
        }
        const Complex phase = std::conj(z) / std::abs(z);
        for (int i = 0; i < v.rows(); ++i) {
            v(i, j) *= phase;
        }
    }
}

} // namespace

EigenResult hermitian_eigensolve(const CMatrix& m, int max_sweeps) {
    if (!m.square()) {
        throw NonSquareError("eigensolve requires a square matrix");
    }
    if (!is_hermitian(m, tol::herm)) {
        throw NotHermitianError("eigensolve requires a Hermitian matrix");
    }

    const int n = m.rows();
    CMatrix a = m;
    CMatrix v = CMatrix::identity(n);
    const double threshold = tol::jacobi_off * frobenius_norm(m);

    int sweeps = 0;
    while (off_diagonal_norm(a) > threshold) {
        if (sweeps >= max_sweeps) {
            throw NoConvergenceError("Jacobi sweeps exhausted before convergence",
                                     sweeps);
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
        ++sweeps;
    }
    log::diag("eigensolve n=" + std::to_string(n) + " converged in " +
              std::to_string(sweeps) + " sweeps");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](int i, int j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenResult result;
    result.values.resize(static_cast<std::size_t>(n));
    result.vectors = CMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        result.values[static_cast<std::size_t>(j)] = a(src, src).real();
        for (int i = 0; i < n; ++i) {
            result.vectors(i, j) = v(i, src);
        }
    }
    fix_column_phases(result.vectors);
    result.sweeps = sweeps;
    return result;
}

EigenResult hermitian_eigensolve(const CMatrix& m) {
    return hermitian_eigensolve(m, tol::jacobi_max_sweeps);
}

bool is_psd(const CMatrix& m, double tol) {
    if (!is_hermitian(m, tol::herm)) {
        throw NotHermitianError("psd check requires a Hermitian matrix");
    }
    const EigenResult eig = hermitian_eigensolve(m);
    if (eig.values.empty()) {
        return true;
    }
    return eig.values.front() >= -tol * (1.0 + frobenius_norm(m));
}

bool is_psd(const CMatrix& m) { return is_psd(m, tol::psd); }

} // namespace orthotree
