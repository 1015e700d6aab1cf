#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace orthotree {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major. Entries are validated to be finite at
/// construction from external data; internal arithmetic assumes finiteness.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols);
    CMatrix(int rows, int cols, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(int n);
    static CMatrix zero(int rows, int cols) { return CMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    std::size_t size() const { return entries_.size(); }

    Complex& operator()(int i, int j) {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const Complex& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    Complex* data() { return entries_.data(); }
    const Complex* data() const { return entries_.data(); }
    const std::vector<Complex>& entries() const { return entries_; }

    CMatrix operator+(const CMatrix& other) const;
    CMatrix operator-(const CMatrix& other) const;
    CMatrix operator*(const CMatrix& other) const;
    CMatrix scaled(Complex factor) const;

    /// Extract one column as a vector of length rows().
    std::vector<Complex> column(int j) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> entries_;
};

/// Nonzero vector in the ambient space; carries no normalization assumption.
class WaveVector {
public:
    explicit WaveVector(std::vector<Complex> components);

    static WaveVector basis_vector(int n, int j);

    int dim() const { return static_cast<int>(components_.size()); }
    const Complex& operator[](int i) const { return components_[i]; }
    const std::vector<Complex>& components() const { return components_; }

    double norm_sq() const;
    double norm() const;
    bool is_normalized(double tol) const;
    bool is_normalized() const;
    WaveVector normalized() const;

private:
    std::vector<Complex> components_;
};

CMatrix adjoint(const CMatrix& m);
Complex trace(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol);
bool is_hermitian(const CMatrix& m);

/// tr(m * n) without forming the product.
Complex hs_inner(const CMatrix& m, const CMatrix& n);

/// adjoint(a) * b and a * adjoint(b).
CMatrix matmul_adj_left(const CMatrix& a, const CMatrix& b);
CMatrix matmul_adj_right(const CMatrix& a, const CMatrix& b);

/// m * v for a vector v of length m.cols().
std::vector<Complex> matvec(const CMatrix& m, const std::vector<Complex>& v);

Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y);
double vec_norm_sq(const std::vector<Complex>& x);

/// Outer product x * adjoint(y).
CMatrix outer(const std::vector<Complex>& x, const std::vector<Complex>& y);

} // namespace orthotree
