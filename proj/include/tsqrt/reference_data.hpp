#pragma once

#include <array>
#include <cstddef>

#include "tsqrt/imaging.hpp"
#include "tsqrt/real_matrix.hpp"
#include "tsqrt/tensor3.hpp"

// Reference inputs and expected values for the bundled golden checks
// (`tsqrt reproduce`) and the acceptance suite. Inputs are exact; expected
// tables carry the upstream print precision, so comparisons are numeric with
// per-target tolerances, never string equality.
namespace tsqrt::golden {

// 3x3x3 T-positive definite tensor with max Fourier-slice condition ~3.9; the
// golden convergence traces below belong to it.
Tensor3 well_conditioned_tensor();

// Its principal T-square root rounded to five decimals (print precision 1e-5).
Tensor3 well_conditioned_sqrt_printed();

// 3x3x3 tensor with max Fourier-slice condition ~1102; drives the
// post-convergence stability study.
Tensor3 ill_conditioned_tensor();

// Pair of T-positive definite covariance-like tensors for the distance check.
Tensor3 tbw_tensor_a();
Tensor3 tbw_tensor_b();

// 2x2 RGB toy image for the grayscale worked example (raw 1..4 intensities).
imaging::ImageTensor toy_image();

// Reference channel covariance used by the upstream worked example. Note: it
// does NOT equal the covariance computed from toy_image(); the reproduce
// harness reports the mismatch cell by cell. The coupled-iteration trace
// below was generated from this matrix and does reproduce.
RealMatrix toy_channel_covariance_printed();
RealMatrix toy_covariance_inv_sqrt_printed();   // claimed C^{-1/2}
RealMatrix toy_grayscale_printed();             // claimed decorrelated grayscale
inline constexpr std::array<double, 3> kToyEigenvaluesPrinted = {2.25, 1.00, 0.75};

// Published residual tables (values as printed; ~2 significant figures).
inline constexpr std::array<double, 6> kNewtonTracePublished = {
    6.95e0, 5.28e-1, 5.52e-2, 7.80e-4, 1.61e-7, 6.89e-15};
inline constexpr std::array<double, 7> kDbTracePublished = {
    7.56e1, 1.64e1, 2.48e0, 1.25e-1, 4.26e-4, 5.21e-9, 3.62e-15};
inline constexpr std::array<double, 6> kCovTracePublished = {
    3.53e0, 5.34e-1, 2.44e-2, 7.74e-5, 2.61e-9, 6.94e-16};

// Stability table rows shared by both methods through the minimum (k: value).
inline constexpr std::array<std::pair<std::size_t, double>, 5> kStabilitySharedPublished = {{
    {0, 1.99e4}, {2, 1.19e3}, {4, 3.94e1}, {6, 6.88e-3}, {7, 9.03e-8}}};

// Expected slice table for the distance check: traces of a-hat and b-hat, the
// cross-root trace, and d^2 per Fourier slice, plus the total.
struct TbwExpectedRow {
    double trace_a;
    double trace_b;
    double trace_cross_sqrt;
    double d_squared;
};
inline constexpr std::array<TbwExpectedRow, 3> kTbwExpectedRows = {{
    {15.0, 24.0, 18.9062, 1.1875},
    {6.0, 6.0, 5.8730, 0.2540},
    {6.0, 6.0, 5.8730, 0.2540},
}};
inline constexpr double kTbwExpectedTotal = 1.3021;

}  // namespace tsqrt::golden
