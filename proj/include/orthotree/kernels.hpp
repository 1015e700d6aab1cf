#pragma once

#include <complex>
#include <cstddef>

namespace orthotree::kernels {

using Complex = std::complex<double>;

// Backend selection for the dense kernels. Auto picks the parallel path for
// operations whose flop count clears a fixed threshold and OpenMP is
// compiled in; Serial and Parallel force one path. The serial routines are
// the reference implementation the parallel ones are tested against.
enum class Backend { Auto, Serial, Parallel };

void set_backend(Backend b);
Backend backend();
bool parallel_available();

namespace serial {

// c[m x n] = a[m x k] * b[k x n], all row-major.
void matmul(const Complex* a, const Complex* b, Complex* c,
            int m, int k, int n);

// c[m x n] = adjoint(a)[m x k] * b[k x n]; a is stored k x m.
void matmul_adj_left(const Complex* a, const Complex* b, Complex* c,
                     int m, int k, int n);

// c[m x n] = a[m x k] * adjoint(b)[k x n]; b is stored n x k.
void matmul_adj_right(const Complex* a, const Complex* b, Complex* c,
                      int m, int k, int n);

double frobenius_norm_sq(const Complex* a, std::size_t len);

// tr(a * b) for square n x n matrices, without forming the product.
Complex trace_product(const Complex* a, const Complex* b, int n);

// acc += w * x, elementwise over len entries.
void accumulate_scaled(Complex* acc, const Complex* x, double w,
                       std::size_t len);

} // namespace serial

namespace parallel {

void matmul(const Complex* a, const Complex* b, Complex* c,
            int m, int k, int n);
void matmul_adj_left(const Complex* a, const Complex* b, Complex* c,
                     int m, int k, int n);
void matmul_adj_right(const Complex* a, const Complex* b, Complex* c,
                      int m, int k, int n);
double frobenius_norm_sq(const Complex* a, std::size_t len);
Complex trace_product(const Complex* a, const Complex* b, int n);
void accumulate_scaled(Complex* acc, const Complex* x, double w,
                       std::size_t len);

} // namespace parallel

// Dispatching entry points used by the rest of the library.
void matmul(const Complex* a, const Complex* b, Complex* c,
            int m, int k, int n);
void matmul_adj_left(const Complex* a, const Complex* b, Complex* c,
                     int m, int k, int n);
void matmul_adj_right(const Complex* a, const Complex* b, Complex* c,
                      int m, int k, int n);
double frobenius_norm_sq(const Complex* a, std::size_t len);
Complex trace_product(const Complex* a, const Complex* b, int n);
void accumulate_scaled(Complex* acc, const Complex* x, double w,
                       std::size_t len);

} // namespace orthotree::kernels
