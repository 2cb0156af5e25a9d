#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tsqrt/real_matrix.hpp"
#include "tsqrt/tensor3.hpp"

namespace tsqrt::imaging {

// n x m x p image; frontal slices are channels. Loaded images carry normalized
// intensities in [0, 1]; transform outputs (whitened, decorrelated) may leave
// that range and are clipped only when saved for display.
struct ImageTensor {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<double> values;  // channel-major, then row-major (same layout as Tensor3)
    std::optional<std::vector<double>> channel_means;

    ImageTensor() = default;
    ImageTensor(std::size_t n, std::size_t m, std::size_t p)
        : height(n), width(m), channels(p), values(n * m * p, 0.0) {}

    double& at(std::size_t i, std::size_t j, std::size_t k) {
        return values[k * height * width + i * width + j];
    }
    const double& at(std::size_t i, std::size_t j, std::size_t k) const {
        return values[k * height * width + i * width + j];
    }
};

Tensor3 to_tensor3(const ImageTensor& img);
ImageTensor from_tensor3(const Tensor3& t);

struct CenteredImage {
    ImageTensor centered;
    std::vector<double> means;
};
CenteredImage center_channels(const ImageTensor& img);

// (1/m) x * x^T for a centered tensor (frontal-slice means below tolerance,
// else NotCentered). T-positive semidefinite by construction.
Tensor3 tensor_covariance(const Tensor3& x);

// (1/N) X^T X with pixels as rows (N = height*width), channels as columns.
// Centers internally.
RealMatrix channel_covariance(const ImageTensor& img);

enum class CovarianceMode { Matrix, Tensor };

struct GrayscaleResult {
    RealMatrix raw;      // signed values, the contractual output
    RealMatrix display;  // affine-mapped to [0, 1]
};

// Decorrelated grayscale: center channels, whiten with the inverse square root
// of the covariance (channel covariance in Matrix mode, the mode-3 tensor
// covariance in Tensor mode), then average over channels.
GrayscaleResult tdg_grayscale(const ImageTensor& img, CovarianceMode mode = CovarianceMode::Matrix);

// Same pipeline with an externally supplied channel covariance; used by the
// golden harness to replay reference intermediates.
GrayscaleResult tdg_grayscale_with_covariance(const ImageTensor& img, const RealMatrix& cov);

// 0.2989 R + 0.5870 G + 0.1140 B; requires exactly three channels.
RealMatrix luminance_grayscale(const ImageTensor& img);

// Projection of the centered channels onto the leading eigenvector of the
// channel covariance, sign-fixed (largest-magnitude weight positive), then
// display-normalized.
RealMatrix pca_grayscale(const ImageTensor& img);

// x_white = C^{-1/2} * x under the T-product, C from tensor_covariance. The
// whitened tensor has identity covariance within 1e-8.
Tensor3 t_whiten(const Tensor3& x);

// T-product whitening of an image via the channels-first arrangement
// (channels x pixels x 1), so the pipeline targets the channel statistics;
// the output channel covariance is the identity.
ImageTensor t_whiten_image(const ImageTensor& img);

// Pixels-as-rows ZCA: X C^{-1/2}; the output channel covariance is I.
ImageTensor matrix_whiten(const ImageTensor& img);

// Each channel independently centered and scaled to unit variance; no
// cross-channel rotation, so correlations survive (the weak baseline).
ImageTensor channelwise_pca_whiten(const ImageTensor& img);

struct TransferResult {
    ImageTensor raw;      // transport applied, values unclipped
    ImageTensor display;  // clipped to [0, 1]
    RealMatrix map;       // the p x p transport matrix
};

// Monge map between the channel distributions:
// T = Cs^{-1/2} (Cs^{1/2} Ct Cs^{1/2})^{1/2} Cs^{-1/2}, output = T (x - mu_s) + mu_t.
// The recentred output covariance equals the target covariance.
TransferResult color_transfer(const ImageTensor& source, const ImageTensor& target);

// Transport map in the T-algebra from two covariance tensors (Eq. form above
// with * products); T is T-symmetric.
Tensor3 tensor_transport_map(const Tensor3& cov_source, const Tensor3& cov_target);

// Per channel: (x - mu_s) * (sigma_t / sigma_s) + mu_t, in RGB.
ImageTensor reinhard_channelwise_transfer(const ImageTensor& source, const ImageTensor& target);

// Mean local SSIM over 8x8 sliding windows (uniform weights), stabilizers
// C1 = 0.01^2, C2 = 0.03^2 on unit dynamic range. Images smaller than the
// window fall back to a single full-image window.
double ssim(const RealMatrix& a, const RealMatrix& b);

// (1/K) sum over non-overlapping block x block tiles (partial edge tiles
// included) of 20*log10((max + eps)/(min + eps)), eps = 1e-4.
double eme(const RealMatrix& img, std::size_t block = 8);

// || channel_covariance(img) - I ||_F; zero means perfectly whitened.
double decorrelation_index(const ImageTensor& img);

// Standard Pearson matrix; symmetric with unit diagonal.
RealMatrix pearson_channel_correlations(const ImageTensor& img);

struct QualityMetrics {
    double ssim = 0.0;
    double eme = 0.0;
    double di = 0.0;
    RealMatrix channel_correlations;
};

// Seeded RGB image whose channels follow a correlated Gaussian with the given
// Pearson correlations (values centered at `mean` with per-channel `stddev`).
ImageTensor make_correlated_image(std::size_t height, std::size_t width, double rho_rg,
                                  double rho_rb, double rho_gb, std::uint64_t seed,
                                  double mean = 0.5, double stddev = 0.15);

RealMatrix display_normalize(const RealMatrix& raw);

}  // namespace tsqrt::imaging
