#pragma once

#include <cstddef>
#include <vector>

namespace tsqrt {

// Real third-order tensor with explicit frontal slices. Storage is slice-major
// then row-major: entry (i, j, k) lives at data[k*n*m + i*m + j].
struct Tensor3 {
    std::size_t n = 0;  // rows
    std::size_t m = 0;  // cols
    std::size_t p = 0;  // depth (number of frontal slices)
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(std::size_t rows, std::size_t cols, std::size_t depth)
        : n(rows), m(cols), p(depth), data(rows * cols * depth, 0.0) {}

    double& at(std::size_t i, std::size_t j, std::size_t k) { return data[k * n * m + i * m + j]; }
    const double& at(std::size_t i, std::size_t j, std::size_t k) const {
        return data[k * n * m + i * m + j];
    }

    bool same_shape(const Tensor3& o) const { return n == o.n && m == o.m && p == o.p; }
};

// First frontal slice I_n, remaining slices zero.
Tensor3 identity_tensor(std::size_t n, std::size_t p);

// Euclidean norm of the entries (spatial convention; the Fourier-domain sum is
// 1/p-corrected relative to this, see spectral.hpp).
double frobenius_norm(const Tensor3& a);

Tensor3 operator+(const Tensor3& a, const Tensor3& b);
Tensor3 operator-(const Tensor3& a, const Tensor3& b);
Tensor3 operator*(double s, const Tensor3& a);

}  // namespace tsqrt
