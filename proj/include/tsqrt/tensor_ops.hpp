#pragma once

#include "tsqrt/real_matrix.hpp"
#include "tsqrt/spectral.hpp"
#include "tsqrt/tensor3.hpp"

namespace tsqrt {

// T-product via the Fourier reduction: DFT along mode 3, slice-wise matrix
// products, inverse DFT. Requires a.m == b.n and a.p == b.p.
Tensor3 t_product(const Tensor3& a, const Tensor3& b);

// Slice 1 transposed; slices 2..p transposed and reversed in order. Equivalent
// to conjugate-transposing every Fourier slice.
Tensor3 t_transpose(const Tensor3& a);

// Slice-wise inverse in the Fourier domain. Throws SingularSlice with the
// offending slice index.
Tensor3 t_inverse(const Tensor3& a);

// True iff every Fourier slice is structurally Hermitian or complex-symmetric
// (within 1e-10 of scale) and its Hermitian part H satisfies
// lambda_min(H) > tol * lambda_max(H) with lambda_max > 0. For tensors whose
// Fourier slices are Hermitian this is exactly the Hermitian-PD test; the
// complex-symmetric branch admits real tensors with symmetric frontal slices
// that are not transpose-mirrored across slices.
bool is_t_positive_definite(const Tensor3& a, double tol);

// Per-slice classification backing is_t_positive_definite; exposed so error
// messages can name the first offending slice.
struct SliceDefiniteness {
    bool structured = false;   // Hermitian or complex-symmetric within tolerance
    bool hermitian = false;    // Hermitian within tolerance
    bool positive = false;     // Hermitian part PD at the given tol
    double lambda_min = 0.0;   // of the Hermitian part
    double lambda_max = 0.0;
};
std::vector<SliceDefiniteness> classify_slices(const SpectralTensor& s, double tol);

// Explicit np x mp block-circulant matrix; first block column stacks the
// frontal slices. Test oracle for the FFT path; O(n^3 p^3) work if multiplied,
// keep away from performance paths.
RealMatrix bcirc_oracle(const Tensor3& a);

// unfold stacks frontal slices vertically into an (n p) x m matrix; fold is
// its inverse.
RealMatrix unfold(const Tensor3& a);
Tensor3 fold(const RealMatrix& m, std::size_t n, std::size_t cols, std::size_t p);

struct TSvdResult {
    Tensor3 u;  // n x n x p
    Tensor3 s;  // n x m x p, f-diagonal
    Tensor3 v;  // m x m x p
};

// a = u * s * t_transpose(v) with u, v orthogonal under the T-product and
// every Fourier slice of s diagonal, non-negative, non-increasing.
TSvdResult t_svd(const Tensor3& a);

// Principal T-square root by direct slice-wise computation: Hermitian slices
// go through the eigendecomposition; complex-symmetric slices with positive
// definite Hermitian part go through a per-slice Denman-Beavers refinement run
// to machine floor. Throws NotPositiveDefinite.
Tensor3 t_sqrt_direct(const Tensor3& a);

}  // namespace tsqrt
