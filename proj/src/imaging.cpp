#include "tsqrt/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsqrt/errors.hpp"
#include "tsqrt/rng.hpp"
#include "tsqrt/solvers.hpp"
#include "tsqrt/tensor_ops.hpp"

namespace tsqrt::imaging {

namespace {

void require_nonempty(const ImageTensor& img, const char* op) {
    if (img.height == 0 || img.width == 0 || img.channels == 0)
        throw DimensionMismatch(std::string(op) + ": empty image");
}

double channel_mean(const ImageTensor& img, std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j) s += img.at(i, j, k);
    return s / static_cast<double>(img.height * img.width);
}

double channel_variance(const ImageTensor& img, std::size_t k, double mean) {
    double s = 0.0;
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j) {
            const double d = img.at(i, j, k) - mean;
            s += d * d;
        }
    return s / static_cast<double>(img.height * img.width);
}

// A constant channel leaves ~eps-sized variance behind (the mean subtraction
// is not exact), so "zero variance" is a rounding-floor test, not var == 0.
bool effectively_zero_variance(double var, double mean) {
    return var <= 1e-24 * std::max(1.0, mean * mean);
}

// Pixels-as-rows product helper: out(i,j,:) = row(i,j) * W.
ImageTensor apply_channel_map(const ImageTensor& img, const RealMatrix& w) {
    ImageTensor out(img.height, img.width, img.channels);
    const std::size_t p = img.channels;
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j)
            for (std::size_t c = 0; c < p; ++c) {
                double acc = 0.0;
                for (std::size_t k = 0; k < p; ++k) acc += img.at(i, j, k) * w(k, c);
                out.at(i, j, c) = acc;
            }
    return out;
}

}  // namespace

Tensor3 to_tensor3(const ImageTensor& img) {
    Tensor3 t(img.height, img.width, img.channels);
    t.data = img.values;
    return t;
}

ImageTensor from_tensor3(const Tensor3& t) {
    ImageTensor img(t.n, t.m, t.p);
    img.values = t.data;
    return img;
}

CenteredImage center_channels(const ImageTensor& img) {
    require_nonempty(img, "center_channels");
    CenteredImage out;
    out.centered = img;
    out.means.resize(img.channels);
    for (std::size_t k = 0; k < img.channels; ++k) {
        const double mu = channel_mean(img, k);
        out.means[k] = mu;
        for (std::size_t i = 0; i < img.height; ++i)
            for (std::size_t j = 0; j < img.width; ++j) out.centered.at(i, j, k) -= mu;
    }
    out.centered.channel_means = out.means;
    return out;
}

Tensor3 tensor_covariance(const Tensor3& x) {
    double scale = 0.0;
    for (double v : x.data) scale = std::max(scale, std::abs(v));
    const double tol = 1e-10 * std::max(1.0, scale);
    for (std::size_t k = 0; k < x.p; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.n; ++i)
            for (std::size_t j = 0; j < x.m; ++j) s += x.at(i, j, k);
        s /= static_cast<double>(x.n * x.m);
        if (std::abs(s) > tol) {
            throw NotCentered("tensor_covariance: frontal slice " + std::to_string(k) +
                              " has nonzero mean; center the input first");
        }
    }
    Tensor3 c = t_product(x, t_transpose(x));
    return (1.0 / static_cast<double>(x.m)) * c;
}

RealMatrix channel_covariance(const ImageTensor& img) {
    require_nonempty(img, "channel_covariance");
    const CenteredImage c = center_channels(img);
    const std::size_t p = img.channels;
    const double inv_n = 1.0 / static_cast<double>(img.height * img.width);
    RealMatrix cov(p, p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a; b < p; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < img.height; ++i)
                for (std::size_t j = 0; j < img.width; ++j)
                    s += c.centered.at(i, j, a) * c.centered.at(i, j, b);
            cov(a, b) = s * inv_n;
            cov(b, a) = cov(a, b);
        }
    return cov;
}

RealMatrix display_normalize(const RealMatrix& raw) {
    double lo = raw.data().empty() ? 0.0 : raw.data().front();
    double hi = lo;
    for (double v : raw.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    RealMatrix out(raw.rows(), raw.cols());
    const double range = hi - lo;
    if (range <= 0.0) return out;
    for (std::size_t i = 0; i < raw.data().size(); ++i)
        out.data()[i] = (raw.data()[i] - lo) / range;
    return out;
}

GrayscaleResult tdg_grayscale_with_covariance(const ImageTensor& img, const RealMatrix& cov) {
    require_nonempty(img, "tdg_grayscale");
    if (img.channels < 2) throw WrongChannelCount("tdg_grayscale: need at least two channels");
    const CenteredImage c = center_channels(img);
    const RealMatrix w = sym_matrix_power(cov, -0.5, "channel covariance");
    const ImageTensor dec = apply_channel_map(c.centered, w);

    GrayscaleResult out;
    out.raw = RealMatrix(img.height, img.width);
    const double inv_p = 1.0 / static_cast<double>(img.channels);
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < img.channels; ++k) s += dec.at(i, j, k);
            out.raw(i, j) = s * inv_p;
        }
    out.display = display_normalize(out.raw);
    return out;
}

GrayscaleResult tdg_grayscale(const ImageTensor& img, CovarianceMode mode) {
    require_nonempty(img, "tdg_grayscale");
    if (img.channels < 2) throw WrongChannelCount("tdg_grayscale: need at least two channels");
    if (mode == CovarianceMode::Matrix) {
        return tdg_grayscale_with_covariance(img, channel_covariance(img));
    }

    // Tensor mode: Eq.-form covariance on the n x m x p layout.
    const CenteredImage c = center_channels(img);
    const Tensor3 x = to_tensor3(c.centered);
    const Tensor3 cov = tensor_covariance(x);
    if (!is_t_positive_definite(cov, 1e-10)) {
        throw SingularCovariance("tdg_grayscale: tensor covariance is numerically singular");
    }
    IterationConfig cfg;
    cfg.tolerance = 1e-13;
    cfg.max_iterations = 60;
    const SqrtSolution sol = db_tsqrt(cov, cfg);
    const Tensor3 dec = t_product(*sol.inv_sqrt, x);

    GrayscaleResult out;
    out.raw = RealMatrix(img.height, img.width);
    const double inv_p = 1.0 / static_cast<double>(img.channels);
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < img.channels; ++k) s += dec.at(i, j, k);
            out.raw(i, j) = s * inv_p;
        }
    out.display = display_normalize(out.raw);
    return out;
}

RealMatrix luminance_grayscale(const ImageTensor& img) {
    require_nonempty(img, "luminance_grayscale");
    if (img.channels != 3)
        throw WrongChannelCount("luminance_grayscale: exactly three channels required");
    RealMatrix g(img.height, img.width);
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j)
            g(i, j) = 0.2989 * img.at(i, j, 0) + 0.5870 * img.at(i, j, 1) + 0.1140 * img.at(i, j, 2);
    return g;
}

RealMatrix pca_grayscale(const ImageTensor& img) {
    require_nonempty(img, "pca_grayscale");
    if (img.channels < 2) throw WrongChannelCount("pca_grayscale: need at least two channels");
    const RealMatrix cov = channel_covariance(img);
    const SymmetricEig eig = sym_eig(cov);
    if (eig.eigenvalues.front() <= 0.0 ||
        eig.eigenvalues.back() <= 1e-10 * eig.eigenvalues.front()) {
        throw SingularCovariance("pca_grayscale: channel covariance is numerically singular");
    }
    std::vector<double> w(img.channels);
    for (std::size_t k = 0; k < img.channels; ++k) w[k] = eig.eigenvectors(k, 0);
    std::size_t imax = 0;
    for (std::size_t k = 1; k < w.size(); ++k)
        if (std::abs(w[k]) > std::abs(w[imax])) imax = k;
    if (w[imax] < 0.0)
        for (double& v : w) v = -v;

    const CenteredImage c = center_channels(img);
    RealMatrix g(img.height, img.width);
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < img.channels; ++k) s += c.centered.at(i, j, k) * w[k];
            g(i, j) = s;
        }
    return display_normalize(g);
}

Tensor3 t_whiten(const Tensor3& x) {
    const Tensor3 cov = tensor_covariance(x);  // includes the centering check
    if (!is_t_positive_definite(cov, 1e-10)) {
        throw SingularCovariance("t_whiten: tensor covariance is numerically singular");
    }
    IterationConfig cfg;
    cfg.tolerance = 1e-13;
    cfg.max_iterations = 60;
    const SqrtSolution sol = db_tsqrt(cov, cfg);
    return t_product(*sol.inv_sqrt, x);
}

ImageTensor t_whiten_image(const ImageTensor& img) {
    require_nonempty(img, "t_whiten_image");
    const CenteredImage c = center_channels(img);
    const std::size_t npix = img.height * img.width;
    Tensor3 cf(img.channels, npix, 1);
    for (std::size_t k = 0; k < img.channels; ++k)
        for (std::size_t i = 0; i < img.height; ++i)
            for (std::size_t j = 0; j < img.width; ++j)
                cf.at(k, i * img.width + j, 0) = c.centered.at(i, j, k);
    const Tensor3 w = t_whiten(cf);
    ImageTensor out(img.height, img.width, img.channels);
    for (std::size_t k = 0; k < img.channels; ++k)
        for (std::size_t i = 0; i < img.height; ++i)
            for (std::size_t j = 0; j < img.width; ++j)
                out.at(i, j, k) = w.at(k, i * img.width + j, 0);
    return out;
}

ImageTensor matrix_whiten(const ImageTensor& img) {
    require_nonempty(img, "matrix_whiten");
    const CenteredImage c = center_channels(img);
    const RealMatrix w = sym_matrix_power(channel_covariance(img), -0.5, "channel covariance");
    ImageTensor out = apply_channel_map(c.centered, w);
    return out;
}

ImageTensor channelwise_pca_whiten(const ImageTensor& img) {
    require_nonempty(img, "channelwise_pca_whiten");
    ImageTensor out(img.height, img.width, img.channels);
    for (std::size_t k = 0; k < img.channels; ++k) {
        const double mu = channel_mean(img, k);
        const double var = channel_variance(img, k, mu);
        if (effectively_zero_variance(var, mu)) {
            throw ZeroVarianceChannel(
                "channelwise_pca_whiten: channel " + std::to_string(k) + " has zero variance", k);
        }
        const double inv_sd = 1.0 / std::sqrt(var);
        for (std::size_t i = 0; i < img.height; ++i)
            for (std::size_t j = 0; j < img.width; ++j)
                out.at(i, j, k) = (img.at(i, j, k) - mu) * inv_sd;
    }
    return out;
}

TransferResult color_transfer(const ImageTensor& source, const ImageTensor& target) {
    require_nonempty(source, "color_transfer");
    require_nonempty(target, "color_transfer");
    if (source.channels != target.channels)
        throw DimensionMismatch("color_transfer: channel counts differ");

    RealMatrix cs = channel_covariance(source);
    RealMatrix ct = channel_covariance(target);
    RealMatrix cs_half, cs_inv_half;
    try {
        cs_half = sym_matrix_power(cs, 0.5, "source");
        cs_inv_half = sym_matrix_power(cs, -0.5, "source");
    } catch (const SingularCovariance&) {
        throw SingularCovariance("color_transfer: source covariance is numerically singular",
                                 "source");
    }
    {
        // Target only needs to be PD for the pushforward property to hold.
        const SymmetricEig eig = sym_eig(ct);
        if (eig.eigenvalues.front() <= 0.0 ||
            eig.eigenvalues.back() <= 1e-10 * eig.eigenvalues.front()) {
            throw SingularCovariance("color_transfer: target covariance is numerically singular",
                                     "target");
        }
    }

    RealMatrix mid = cs_half * ct * cs_half;
    // symmetrize against rounding drift before the root
    for (std::size_t i = 0; i < mid.rows(); ++i)
        for (std::size_t j = i + 1; j < mid.cols(); ++j) {
            const double avg = 0.5 * (mid(i, j) + mid(j, i));
            mid(i, j) = avg;
            mid(j, i) = avg;
        }
    const RealMatrix mid_sqrt = sym_matrix_power(mid, 0.5, "transport");
    RealMatrix t = cs_inv_half * mid_sqrt * cs_inv_half;
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = i + 1; j < t.cols(); ++j) {
            const double avg = 0.5 * (t(i, j) + t(j, i));
            t(i, j) = avg;
            t(j, i) = avg;
        }

    const CenteredImage sc = center_channels(source);
    const std::vector<double> mu_t = center_channels(target).means;
    ImageTensor raw = apply_channel_map(sc.centered, transpose(t));
    for (std::size_t k = 0; k < raw.channels; ++k)
        for (std::size_t i = 0; i < raw.height; ++i)
            for (std::size_t j = 0; j < raw.width; ++j) raw.at(i, j, k) += mu_t[k];
    raw.channel_means = mu_t;

    TransferResult out;
    out.display = raw;
    for (double& v : out.display.values) v = std::clamp(v, 0.0, 1.0);
    out.raw = std::move(raw);
    out.map = std::move(t);
    return out;
}

Tensor3 tensor_transport_map(const Tensor3& cov_source, const Tensor3& cov_target) {
    if (!is_t_positive_definite(cov_source, 1e-10))
        throw SingularCovariance("tensor_transport_map: source covariance not T-PD", "source");
    if (!is_t_positive_definite(cov_target, 1e-10))
        throw SingularCovariance("tensor_transport_map: target covariance not T-PD", "target");
    const Tensor3 cs_half = t_sqrt_direct(cov_source);
    const Tensor3 cs_inv_half = t_inverse(cs_half);
    const Tensor3 mid = t_product(t_product(cs_half, cov_target), cs_half);
    const Tensor3 mid_sqrt = t_sqrt_direct(mid);
    return t_product(t_product(cs_inv_half, mid_sqrt), cs_inv_half);
}

ImageTensor reinhard_channelwise_transfer(const ImageTensor& source, const ImageTensor& target) {
    require_nonempty(source, "reinhard_channelwise_transfer");
    require_nonempty(target, "reinhard_channelwise_transfer");
    if (source.channels != target.channels)
        throw DimensionMismatch("reinhard_channelwise_transfer: channel counts differ");
    ImageTensor out(source.height, source.width, source.channels);
    for (std::size_t k = 0; k < source.channels; ++k) {
        const double mu_s = channel_mean(source, k);
        const double mu_t = channel_mean(target, k);
        const double var_s = channel_variance(source, k, mu_s);
        const double var_t = channel_variance(target, k, mu_t);
        if (effectively_zero_variance(var_s, mu_s)) {
            throw ZeroVarianceChannel(
                "reinhard_channelwise_transfer: source channel " + std::to_string(k) +
                    " has zero variance",
                k);
        }
        const double gain = std::sqrt(var_t / var_s);
        for (std::size_t i = 0; i < source.height; ++i)
            for (std::size_t j = 0; j < source.width; ++j)
                out.at(i, j, k) = (source.at(i, j, k) - mu_s) * gain + mu_t;
    }
    return out;
}

double ssim(const RealMatrix& a, const RealMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("ssim: image shapes differ");
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    const std::size_t win_r = std::min<std::size_t>(8, a.rows());
    const std::size_t win_c = std::min<std::size_t>(8, a.cols());
    const double inv_n = 1.0 / static_cast<double>(win_r * win_c);

    double acc = 0.0;
    std::size_t windows = 0;
    for (std::size_t i = 0; i + win_r <= a.rows(); ++i) {
        for (std::size_t j = 0; j + win_c <= a.cols(); ++j) {
            double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
            for (std::size_t r = 0; r < win_r; ++r)
                for (std::size_t c = 0; c < win_c; ++c) {
                    const double x = a(i + r, j + c);
                    const double y = b(i + r, j + c);
                    sa += x;
                    sb += y;
                    saa += x * x;
                    sbb += y * y;
                    sab += x * y;
                }
            const double mx = sa * inv_n;
            const double my = sb * inv_n;
            const double vx = saa * inv_n - mx * mx;
            const double vy = sbb * inv_n - my * my;
            const double cxy = sab * inv_n - mx * my;
            acc += ((2 * mx * my + c1) * (2 * cxy + c2)) /
                   ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++windows;
        }
    }
    return windows ? acc / static_cast<double>(windows) : 1.0;
}

double eme(const RealMatrix& img, std::size_t block) {
    if (block == 0) block = 8;
    constexpr double eps = 1e-4;
    double acc = 0.0;
    std::size_t tiles = 0;
    for (std::size_t i0 = 0; i0 < img.rows(); i0 += block) {
        for (std::size_t j0 = 0; j0 < img.cols(); j0 += block) {
            double lo = img(i0, j0), hi = img(i0, j0);
            for (std::size_t i = i0; i < std::min(i0 + block, img.rows()); ++i)
                for (std::size_t j = j0; j < std::min(j0 + block, img.cols()); ++j) {
                    lo = std::min(lo, img(i, j));
                    hi = std::max(hi, img(i, j));
                }
            acc += 20.0 * std::log10((hi + eps) / (lo + eps));
            ++tiles;
        }
    }
    return tiles ? acc / static_cast<double>(tiles) : 0.0;
}

double decorrelation_index(const ImageTensor& img) {
    const RealMatrix cov = channel_covariance(img);
    return frobenius_norm(cov - RealMatrix::identity(cov.rows()));
}

RealMatrix pearson_channel_correlations(const ImageTensor& img) {
    const RealMatrix cov = channel_covariance(img);
    const std::size_t p = cov.rows();
    std::vector<double> sd(p);
    for (std::size_t k = 0; k < p; ++k) {
        if (effectively_zero_variance(cov(k, k), 1.0)) {
            throw ZeroVarianceChannel(
                "pearson_channel_correlations: channel " + std::to_string(k) +
                    " has zero variance",
                k);
        }
        sd[k] = std::sqrt(cov(k, k));
    }
    RealMatrix corr(p, p);
    for (std::size_t a = 0; a < p; ++a) {
        for (std::size_t b = 0; b < p; ++b) corr(a, b) = cov(a, b) / (sd[a] * sd[b]);
        corr(a, a) = 1.0;
    }
    return corr;
}

ImageTensor make_correlated_image(std::size_t height, std::size_t width, double rho_rg,
                                  double rho_rb, double rho_gb, std::uint64_t seed, double mean,
                                  double stddev) {
    // Cholesky of the 3x3 correlation matrix.
    const double l11 = 1.0;
    const double l21 = rho_rg;
    const double l22 = std::sqrt(1.0 - rho_rg * rho_rg);
    const double l31 = rho_rb;
    const double l32 = (rho_gb - rho_rg * rho_rb) / l22;
    const double l33sq = 1.0 - l31 * l31 - l32 * l32;
    if (l22 <= 0.0 || l33sq <= 0.0)
        throw Error("make_correlated_image: correlation matrix is not positive definite");
    const double l33 = std::sqrt(l33sq);

    Rng rng(seed);
    ImageTensor img(height, width, 3);
    for (std::size_t i = 0; i < height; ++i)
        for (std::size_t j = 0; j < width; ++j) {
            const double z1 = rng.gaussian();
            const double z2 = rng.gaussian();
            const double z3 = rng.gaussian();
            img.at(i, j, 0) = mean + stddev * (l11 * z1);
            img.at(i, j, 1) = mean + stddev * (l21 * z1 + l22 * z2);
            img.at(i, j, 2) = mean + stddev * (l31 * z1 + l32 * z2 + l33 * z3);
        }
    return img;
}

}  // namespace tsqrt::imaging
