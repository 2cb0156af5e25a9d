#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tsqrt {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major. The micro-kernels below are the workhorses
// behind every Fourier-domain slice operation.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::vector<cdouble>& entries() { return entries_; }
    const std::vector<cdouble>& entries() const { return entries_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cdouble s, const ComplexMatrix& a);

ComplexMatrix conj_transpose(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix hermitian_part(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double max_abs(const ComplexMatrix& a);
double hermitian_deviation(const ComplexMatrix& a);  // max |a - a^H|
double symmetry_deviation(const ComplexMatrix& a);   // max |a - a^T|

// Standard product. Throws DimensionMismatch.
ComplexMatrix cmat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

// Inverse by partially pivoted elimination. Throws SingularMatrix when a pivot
// magnitude falls below 1e-14 * max|entry| of the input.
ComplexMatrix cmat_inv(const ComplexMatrix& a);

struct HermitianEig {
    std::vector<double> eigenvalues;  // non-increasing
    ComplexMatrix eigenvectors;       // unitary, columns match eigenvalues
};

// Cyclic complex Jacobi for Hermitian matrices. Eigenvalues come back in
// descending order with ties broken by original position (deterministic).
// Throws NotHermitian when max |a - a^H| exceeds 1e-10.
HermitianEig cmat_herm_eig(const ComplexMatrix& a);

// Principal square root of a Hermitian positive definite matrix, built as
// V diag(sqrt(lambda)) V^H. Throws NotPositiveDefinite when an eigenvalue
// falls below 1e-12 * lambda_max.
ComplexMatrix cmat_sqrt_direct(const ComplexMatrix& a);

cdouble cmat_trace(const ComplexMatrix& a);

struct ComplexSvd {
    ComplexMatrix u;            // rows x rows, unitary
    std::vector<double> sigma;  // min(rows, cols), non-increasing
    ComplexMatrix v;            // cols x cols, unitary
};

// One-sided Jacobi SVD, a = u diag(sigma) v^H.
ComplexSvd cmat_svd(const ComplexMatrix& a);

// Matrix-level square-root iterations on a single slice. Both run until the
// residual ||X X - A||_F drops below tol or max_iterations is hit; they are the
// per-slice bodies of the tensor solvers and the inner roots of the TBW
// distance. newton: X <- (X + A X^{-1}) / 2 with X0 = A.
ComplexMatrix matrix_sqrt_newton(const ComplexMatrix& a, double tol, std::size_t max_iterations);

struct MatrixSqrtPair {
    ComplexMatrix sqrt;
    ComplexMatrix inv_sqrt;
};

// denman-beavers: X <- (X + Y^{-1})/2, Y <- (Y + X^{-1})/2 (simultaneous),
// X0 = A, Y0 = I.
MatrixSqrtPair matrix_sqrt_db(const ComplexMatrix& a, double tol, std::size_t max_iterations);

}  // namespace tsqrt
