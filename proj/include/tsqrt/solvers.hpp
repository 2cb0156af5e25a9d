#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tsqrt/spectral.hpp"
#include "tsqrt/tensor3.hpp"

namespace tsqrt {

struct IterationConfig {
    std::size_t max_iterations = 50;
    double tolerance = 1e-12;
    bool early_stop = true;
};

// Residual history r_0..r_K plus the diagnostic ratios rho_k = r_k / r_{k-1}
// and q_k = r_k / r_{k-1}^2 (NaN where the previous residual is zero).
struct ConvergenceTrace {
    std::vector<double> residuals;
    std::vector<double> rho;
    std::vector<double> q;
    bool converged = false;
    std::size_t iterations_run = 0;
};

struct SqrtSolution {
    Tensor3 sqrt;
    std::optional<Tensor3> inv_sqrt;  // present for the coupled iteration only
    ConvergenceTrace trace;
};

// Called after computing r_k with the current Fourier-domain iterate; k = 0 is
// the initial state.
using SpectralObserver = std::function<void(std::size_t k, const SpectralTensor& x)>;

// Fourier-domain residual sqrt(sum_i ||Xh_i Xh_i - Ah_i||_F^2), no 1/p
// correction, fixed slice-order summation. This is the convention used by the
// solver traces and golden tables; frobenius_norm(t_product(x,x) - a) is the
// spatial value, smaller by sqrt(p).
double residual(const Tensor3& a, const Tensor3& x);

// Newton iteration Xh <- (Xh + Ah * Xh^{-1}) / 2, Xh_0 = Ah, slice-wise.
// Precondition: is_t_positive_definite(a, 1e-12). Iterate slices are
// re-Hermitized each step only when the corresponding input slice is
// Hermitian. Unstable past convergence for large condition numbers; rely on
// early_stop (see stability_experiment).
SqrtSolution newton_tsqrt(const Tensor3& a, const IterationConfig& cfg = {},
                          const SpectralObserver& observer = nullptr);

// Coupled iteration Xh <- (Xh + Yh^{-1})/2, Yh <- (Yh + Xh^{-1})/2 with both
// updates computed from the previous pair before assignment; Xh_0 = Ah,
// Yh_0 = I. Returns the inverse square root as well.
SqrtSolution db_tsqrt(const Tensor3& a, const IterationConfig& cfg = {},
                      const SpectralObserver& observer = nullptr);

// Ratio series for an externally supplied residual list. Entries whose
// predecessor is zero are omitted; k holds the iteration index of each kept
// ratio.
struct RatioSeries {
    std::vector<std::size_t> k;
    std::vector<double> rho;
    std::vector<double> q;
};
RatioSeries convergence_ratios(const std::vector<double>& residuals);

// Deterministic T-positive definite tensor whose Fourier slices have condition
// number exactly kappa: each independent slice is Q diag(s * lambda) Q^H with
// log-spaced lambda in [1, kappa], a seeded Haar-random unitary Q and a seeded
// per-slice scale s; mirrored slices are conjugated, so the spatial tensor is
// real with Hermitian Fourier slices.
Tensor3 make_conditioned_spd_tensor(std::size_t n, std::size_t p, double kappa,
                                    std::uint64_t seed);

// Both solvers run for exactly `iterations` steps with early stopping off.
// A singular iterate slice is recorded, not fatal: the residual trace carries
// +infinity from that iteration on.
struct MethodStability {
    std::vector<double> residuals;      // r_0..r_iterations (+inf after a failure)
    double r_min = 0.0;                 // over finite entries
    double final_over_min = 1.0;        // r_final / r_min (1 when both are zero)
    double growth_per_iteration = 1.0;  // geometric mean over the post-minimum range
    bool failed = false;                // singular slice encountered
};
struct StabilityReport {
    MethodStability newton;
    MethodStability denman_beavers;
};
StabilityReport stability_experiment(const Tensor3& a, std::size_t iterations);

}  // namespace tsqrt
