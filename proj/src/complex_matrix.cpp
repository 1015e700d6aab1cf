#include "orthotree/complex_matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "orthotree/error.hpp"
#include "orthotree/kernels.hpp"
#include "orthotree/tolerances.hpp"

namespace orthotree {

namespace {

void require_finite(const std::vector<Complex>& entries, const char* what) {
    for (const Complex& z : entries) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw NonFiniteError(std::string(what) + ": non-finite entry");
        }
    }
}

void require_same_shape(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatchError("matrix shapes differ");
    }
}

} // namespace

CMatrix::CMatrix(int rows, int cols)
    : rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols, Complex{0.0, 0.0}) {
    if (rows < 0 || cols < 0) {
        throw ShapeMismatchError("negative matrix dimension");
    }
}

CMatrix::CMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0 ||
        entries_.size() != static_cast<std::size_t>(rows) * cols) {
        throw ShapeMismatchError("entry count does not match dimensions");
    }
    require_finite(entries_, "CMatrix");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    entries_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != cols_) {
            throw ShapeMismatchError("ragged initializer rows");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    require_finite(entries_, "CMatrix");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = Complex{1.0, 0.0};
    }
    return m;
}

CMatrix CMatrix::operator+(const CMatrix& other) const {
    require_same_shape(*this, other);
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out.entries_[i] = entries_[i] + other.entries_[i];
    }
    return out;
}

CMatrix CMatrix::operator-(const CMatrix& other) const {
    require_same_shape(*this, other);
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out.entries_[i] = entries_[i] - other.entries_[i];
    }
    return out;
}

CMatrix CMatrix::operator*(const CMatrix& other) const {
    if (cols_ != other.rows_) {
        throw ShapeMismatchError("inner dimensions differ in matmul");
    }
    CMatrix out(rows_, other.cols_);
    kernels::matmul(data(), other.data(), out.data(), rows_, cols_,
                    other.cols_);
    return out;
}

CMatrix CMatrix::scaled(Complex factor) const {
    CMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        out.entries_[i] = factor * entries_[i];
    }
    return out;
}

std::vector<Complex> CMatrix::column(int j) const {
    std::vector<Complex> col(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) {
        col[i] = (*this)(i, j);
    }
    return col;
}

WaveVector::WaveVector(std::vector<Complex> components)
    : components_(std::move(components)) {
    require_finite(components_, "WaveVector");
    if (components_.empty() || vec_norm_sq(components_) == 0.0) {
        throw ZeroVectorError("wave vector must be nonzero");
    }
}

WaveVector WaveVector::basis_vector(int n, int j) {
    std::vector<Complex> c(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    c[static_cast<std::size_t>(j)] = Complex{1.0, 0.0};
    return WaveVector(std::move(c));
}

double WaveVector::norm_sq() const { return vec_norm_sq(components_); }

double WaveVector::norm() const { return std::sqrt(norm_sq()); }

bool WaveVector::is_normalized(double tol) const {
    return std::abs(norm_sq() - 1.0) <= tol;
}

bool WaveVector::is_normalized() const { return is_normalized(tol::norm); }

WaveVector WaveVector::normalized() const {
    const double inv = 1.0 / norm();
    std::vector<Complex> c(components_);
    for (Complex& z : c) {
        z *= inv;
    }
    return WaveVector(std::move(c));
}

CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            out(j, i) = std::conj(m(i, j));
        }
    }
    return out;
}

Complex trace(const CMatrix& m) {
    if (!m.square()) {
        throw NonSquareError("trace requires a square matrix");
    }
    Complex t{0.0, 0.0};
    for (int i = 0; i < m.rows(); ++i) {
        t += m(i, i);
    }
    return t;
}

double frobenius_norm(const CMatrix& m) {
    return std::sqrt(kernels::frobenius_norm_sq(m.data(), m.size()));
}

bool is_hermitian(const CMatrix& m, double tol) {
    if (!m.square()) {
        throw NonSquareError("hermitian check requires a square matrix");
    }
    double diff_sq = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            const Complex d = m(i, j) - std::conj(m(j, i));
            diff_sq += d.real() * d.real() + d.imag() * d.imag();
        }
    }
    return std::sqrt(diff_sq) <= tol * (1.0 + frobenius_norm(m));
}

bool is_hermitian(const CMatrix& m) { return is_hermitian(m, tol::herm); }

Complex hs_inner(const CMatrix& m, const CMatrix& n) {
    if (!m.square() || !n.square() || m.rows() != n.rows()) {
        throw ShapeMismatchError("hs_inner requires equal square shapes");
    }
    return kernels::trace_product(m.data(), n.data(), m.rows());
}

CMatrix matmul_adj_left(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ShapeMismatchError("inner dimensions differ in adj-left matmul");
    }
    CMatrix out(a.cols(), b.cols());
    kernels::matmul_adj_left(a.data(), b.data(), out.data(), a.cols(),
                             a.rows(), b.cols());
    return out;
}

CMatrix matmul_adj_right(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.cols()) {
        throw ShapeMismatchError("inner dimensions differ in adj-right matmul");
    }
    CMatrix out(a.rows(), b.rows());
    kernels::matmul_adj_right(a.data(), b.data(), out.data(), a.rows(),
                              a.cols(), b.rows());
    return out;
}

std::vector<Complex> matvec(const CMatrix& m, const std::vector<Complex>& v) {
    if (static_cast<int>(v.size()) != m.cols()) {
        throw DimensionMismatchError("matvec length mismatch");
    }
    std::vector<Complex> out(static_cast<std::size_t>(m.rows()),
                             Complex{0.0, 0.0});
    for (int i = 0; i < m.rows(); ++i) {
        Complex s{0.0, 0.0};
        for (int j = 0; j < m.cols(); ++j) {
            s += m(i, j) * v[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    if (x.size() != y.size()) {
        throw DimensionMismatchError("inner product length mismatch");
    }
    Complex s{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += std::conj(x[i]) * y[i];
    }
    return s;
}

double vec_norm_sq(const std::vector<Complex>& x) {
    double s = 0.0;
    for (const Complex& z : x) {
        s += z.real() * z.real() + z.imag() * z.imag();
    }
    return s;
}

CMatrix outer(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    CMatrix out(static_cast<int>(x.size()), static_cast<int>(y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < y.size(); ++j) {
            out(static_cast<int>(i), static_cast<int>(j)) =
                x[i] * std::conj(y[j]);
        }
    }
    return out;
}

} // namespace orthotree
