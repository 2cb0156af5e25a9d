#include "tsqrt/real_matrix.hpp"

#include <cmath>

#include "tsqrt/complex_matrix.hpp"
#include "tsqrt/errors.hpp"

namespace tsqrt {

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("real matrix product: inner dims differ");
    RealMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("real matrix sub: shape mismatch");
    RealMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.data().size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
    return c;
}

RealMatrix transpose(const RealMatrix& a) {
    RealMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

double frobenius_norm(const RealMatrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

SymmetricEig sym_eig(const RealMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    HermitianEig h = cmat_herm_eig(c);
    SymmetricEig out;
    out.eigenvalues = std::move(h.eigenvalues);
    out.eigenvectors = RealMatrix(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out.eigenvectors(i, j) = h.eigenvectors(i, j).real();
    return out;
}

RealMatrix sym_matrix_power(const RealMatrix& a, double power, const char* which) {
    SymmetricEig eig = sym_eig(a);
    const double lmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    for (double lambda : eig.eigenvalues) {
        if (lmax <= 0.0 || lambda <= 1e-10 * lmax) {
            throw SingularCovariance("sym_matrix_power: eigenvalue at or below 1e-10 * lambda_max",
                                     which);
        }
    }
    const std::size_t n = a.rows();
    RealMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.eigenvectors(i, k) * std::pow(eig.eigenvalues[k], power) *
                     eig.eigenvectors(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    return out;
}

}  // namespace tsqrt
