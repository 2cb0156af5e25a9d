#pragma once

#include <cstddef>
#include <vector>

#include "tsqrt/complex_matrix.hpp"
#include "tsqrt/tensor3.hpp"

namespace tsqrt {

// Which algorithm computes the two inner matrix square roots. Direct (the
// eigendecomposition) is the default; the iterative strategies must agree with
// it within 1e-9 and exist to exercise the solver route.
enum class SqrtStrategy { Direct, Newton, DenmanBeavers };

// tr(A) + tr(B) - 2 tr((A^{1/2} B A^{1/2})^{1/2}) for Hermitian positive
// definite matrices. Values within 1e-10 below zero clamp to 0.
double bw_distance_sq_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                             SqrtStrategy strategy = SqrtStrategy::Direct);

struct TbwSliceRecord {
    double trace_a = 0.0;
    double trace_b = 0.0;
    double trace_cross_sqrt = 0.0;  // tr((A^{1/2} B A^{1/2})^{1/2})
    double d_squared = 0.0;
};

struct TbwReport {
    std::vector<TbwSliceRecord> per_slice;
    double total = 0.0;  // sqrt(sum of d_squared)
};

// (sum_i d_BW^2(Ah_i, Bh_i))^{1/2} over the Fourier slices. Both tensors must
// be T-positive definite with Hermitian slices; violations throw
// NotPositiveDefinite carrying the operand name and slice index.
double tbw_distance(const Tensor3& a, const Tensor3& b,
                    SqrtStrategy strategy = SqrtStrategy::Direct);

TbwReport tbw_report(const Tensor3& a, const Tensor3& b,
                     SqrtStrategy strategy = SqrtStrategy::Direct);

}  // namespace tsqrt
