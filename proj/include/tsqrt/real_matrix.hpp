#pragma once

#include <cstddef>
#include <vector>

namespace tsqrt {

// Small dense real matrix, row-major. Used for the block-circulant oracle,
// channel covariances, grayscale planes and metric maths.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static RealMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const double& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix transpose(const RealMatrix& a);
double frobenius_norm(const RealMatrix& a);

struct SymmetricEig {
    std::vector<double> eigenvalues;  // non-increasing
    RealMatrix eigenvectors;
};

// Symmetric eigendecomposition (delegates to the complex Hermitian kernel).
SymmetricEig sym_eig(const RealMatrix& a);

// a^power for symmetric PD a via eigendecomposition, e.g. power = +-0.5.
// Throws SingularCovariance when lambda_min <= 1e-10 * lambda_max.
RealMatrix sym_matrix_power(const RealMatrix& a, double power, const char* which = "");

}  // namespace tsqrt
