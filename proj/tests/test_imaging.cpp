#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tsqrt/errors.hpp"
#include "tsqrt/imaging.hpp"
#include "tsqrt/reference_data.hpp"
#include "tsqrt/rng.hpp"
#include "tsqrt/solvers.hpp"
#include "tsqrt/tensor_ops.hpp"

using namespace tsqrt;
using namespace tsqrt::imaging;

namespace {

ImageTensor constant_image(std::size_t n, std::size_t m, std::size_t p, double v) {
    ImageTensor img(n, m, p);
    for (double& x : img.values) x = v;
    return img;
}

ImageTensor correlated(std::uint64_t seed, std::size_t n = 48, std::size_t m = 48) {
    return make_correlated_image(n, m, 0.83, 0.68, 0.5644, seed);
}

}  // namespace

TEST_CASE("center_channels") {
    const ImageTensor c = constant_image(3, 3, 2, 0.7);
    const CenteredImage cc = center_channels(c);
    for (double v : cc.centered.values) CHECK(v == doctest::Approx(0.0));
    CHECK(cc.means[0] == doctest::Approx(0.7));

    const ImageTensor toy = golden::toy_image();
    const CenteredImage ct = center_channels(toy);
    CHECK(ct.means[0] == doctest::Approx(2.5));
    CHECK(ct.means[1] == doctest::Approx(2.5));
    CHECK(ct.means[2] == doctest::Approx(2.5));
    CHECK(ct.centered.at(0, 0, 0) == doctest::Approx(-1.5));
    CHECK(ct.centered.at(0, 1, 1) == doctest::Approx(-1.5));
    CHECK(ct.centered.at(1, 0, 2) == doctest::Approx(-0.5));

    // re-centering is the identity
    const CenteredImage twice = center_channels(ct.centered);
    for (std::size_t i = 0; i < twice.centered.values.size(); ++i)
        CHECK(twice.centered.values[i] == doctest::Approx(ct.centered.values[i]).epsilon(1e-14));
}

TEST_CASE("tensor_covariance") {
    const Tensor3 zero(2, 4, 2);
    const Tensor3 cz = tensor_covariance(zero);
    CHECK(frobenius_norm(cz) == 0.0);

    // p = 1 reduces to the dense (1/m) X X^T
    Rng rng(9);
    Tensor3 x(3, 10, 1);
    for (double& v : x.data) v = rng.gaussian();
    double mean = 0.0;
    for (double v : x.data) mean += v;
    mean /= static_cast<double>(x.data.size());
    for (double& v : x.data) v -= mean;
    const Tensor3 c = tensor_covariance(x);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 10; ++k) s += x.at(i, k, 0) * x.at(j, k, 0);
            CHECK(c.at(i, j, 0) == doctest::Approx(s / 10.0).epsilon(1e-12));
        }

    // random centered 3x8x3 is T-PSD
    Tensor3 y(3, 8, 3);
    Rng rng2(10);
    for (double& v : y.data) v = rng2.gaussian();
    for (std::size_t k = 0; k < 3; ++k) {
        double mu = 0.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 8; ++j) mu += y.at(i, j, k);
        mu /= 24.0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 8; ++j) y.at(i, j, k) -= mu;
    }
    const Tensor3 cy = tensor_covariance(y);
    const auto cls = classify_slices(dft_mode3(cy), 0.0);
    for (const auto& d : cls) CHECK(d.lambda_min >= -1e-10 * std::max(1.0, d.lambda_max));

    Tensor3 uncentered(2, 2, 1);
    uncentered.data = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(tensor_covariance(uncentered), NotCentered);
}

TEST_CASE("channel_covariance of the toy image (as the arithmetic actually lands)") {
    const RealMatrix c = channel_covariance(golden::toy_image());
    // 1/4 X^T X of the printed pixel matrix; two cells differ from the
    // reference print, which the reproduce harness reports.
    const double expect[9] = {1.25, 0.75, 1.0, 0.75, 1.25, 0.0, 1.0, 0.0, 1.25};
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(c(i / 3, i % 3) == doctest::Approx(expect[i]).epsilon(1e-14));

    // duplicated channels give a rank-1 covariance
    ImageTensor dup(2, 2, 2);
    const double vals[4] = {0.1, 0.4, 0.9, 0.2};
    for (std::size_t idx = 0; idx < 4; ++idx) {
        dup.at(idx / 2, idx % 2, 0) = vals[idx];
        dup.at(idx / 2, idx % 2, 1) = vals[idx];
    }
    const RealMatrix cd = channel_covariance(dup);
    CHECK(cd(0, 0) == doctest::Approx(cd(0, 1)));
    CHECK(cd(0, 0) == doctest::Approx(cd(1, 1)));

    // random image: symmetric PSD
    const RealMatrix cr = channel_covariance(correlated(77));
    const SymmetricEig eig = sym_eig(cr);
    CHECK(eig.eigenvalues.back() >= -1e-12);
}

TEST_CASE("tdg on the toy image reports the singular covariance honestly") {
    // The 2x2 toy image has rank-2 pixel rows, so its channel covariance is
    // exactly singular; both whitening-based pipelines must say so instead of
    // producing the reference decorrelation (which cannot be derived from it).
    CHECK_THROWS_AS(tdg_grayscale(golden::toy_image()), SingularCovariance);
    CHECK_THROWS_AS(matrix_whiten(golden::toy_image()), SingularCovariance);
}

TEST_CASE("tdg with identity channel covariance equals the channel average") {
    // three independent unit-variance channels -> covariance ~ I after the
    // whitening map, so TDG reduces to the centered channel mean
    const ImageTensor img = make_correlated_image(32, 32, 0.0, 0.0, 0.0, 5, 0.5, 0.2);
    const RealMatrix cov = RealMatrix::identity(3);
    const GrayscaleResult g = tdg_grayscale_with_covariance(img, cov);
    const CenteredImage c = center_channels(img);
    for (std::size_t i = 0; i < img.height; ++i)
        for (std::size_t j = 0; j < img.width; ++j) {
            const double avg =
                (c.centered.at(i, j, 0) + c.centered.at(i, j, 1) + c.centered.at(i, j, 2)) / 3.0;
            CHECK(g.raw(i, j) == doctest::Approx(avg).epsilon(1e-12));
        }
}

TEST_CASE("tdg matrix and tensor modes run on a correlated image") {
    const ImageTensor img = correlated(123, 16, 16);
    const GrayscaleResult gm = tdg_grayscale(img, CovarianceMode::Matrix);
    CHECK(gm.raw.rows() == 16);
    double lo = 1e300, hi = -1e300;
    for (double v : gm.display.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo == doctest::Approx(0.0));
    CHECK(hi == doctest::Approx(1.0));

    const GrayscaleResult gt = tdg_grayscale(img, CovarianceMode::Tensor);
    CHECK(gt.raw.rows() == 16);
}

TEST_CASE("luminance weights") {
    const ImageTensor red = [&] {
        ImageTensor i = constant_image(4, 4, 3, 0.0);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) i.at(r, c, 0) = 1.0;
        return i;
    }();
    const RealMatrix g = luminance_grayscale(red);
    CHECK(g(0, 0) == doctest::Approx(0.2989));

    const RealMatrix white = luminance_grayscale(constant_image(2, 2, 3, 1.0));
    CHECK(white(1, 1) == doctest::Approx(0.9999));

    const ImageTensor img = correlated(9, 8, 8);
    const RealMatrix lum = luminance_grayscale(img);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            CHECK(lum(i, j) == doctest::Approx(0.2989 * img.at(i, j, 0) + 0.5870 * img.at(i, j, 1) +
                                               0.1140 * img.at(i, j, 2)));

    CHECK_THROWS_AS(luminance_grayscale(constant_image(2, 2, 4, 0.5)), WrongChannelCount);
}

TEST_CASE("pca grayscale recovers a one-dimensional variation") {
    // image varying along (1,1,1)/sqrt(3) only, plus a hair of noise to keep
    // the covariance nonsingular
    Rng rng(31);
    ImageTensor img(16, 16, 3);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double t = rng.gaussian();
            for (std::size_t k = 0; k < 3; ++k)
                img.at(i, j, k) = 0.5 + 0.2 * t + 1e-4 * rng.gaussian();
        }
    const RealMatrix g = pca_grayscale(img);
    // projection recovers the common component up to the display map: the
    // output must be (affinely) monotone in the channel average
    const RealMatrix g2 = pca_grayscale(img);
    for (std::size_t i = 0; i < g.data().size(); ++i)
        CHECK(g.data()[i] == g2.data()[i]);  // deterministic sign convention

    double corr_num = 0.0, va = 0.0, vb = 0.0, ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double avg = (img.at(i, j, 0) + img.at(i, j, 1) + img.at(i, j, 2)) / 3.0;
            ma += avg;
            mb += g(i, j);
        }
    ma /= 256.0;
    mb /= 256.0;
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) {
            const double avg = (img.at(i, j, 0) + img.at(i, j, 1) + img.at(i, j, 2)) / 3.0;
            corr_num += (avg - ma) * (g(i, j) - mb);
            va += (avg - ma) * (avg - ma);
            vb += (g(i, j) - mb) * (g(i, j) - mb);
        }
    CHECK(corr_num / std::sqrt(va * vb) > 0.999);
}

TEST_CASE("t_whiten drives the tensor covariance to the identity") {
    // Center every (row, slice) fiber: the T-product mixes rows linearly, so
    // row-centering survives whitening and the result can be re-whitened.
    Rng rng(41);
    Tensor3 x(3, 64, 3);
    for (double& v : x.data) v = rng.gaussian();
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i) {
            double mu = 0.0;
            for (std::size_t j = 0; j < 64; ++j) mu += x.at(i, j, k);
            mu /= 64.0;
            for (std::size_t j = 0; j < 64; ++j) x.at(i, j, k) -= mu;
        }
    const Tensor3 w = t_whiten(x);
    const Tensor3 cw = tensor_covariance(w);
    CHECK(frobenius_norm(cw - identity_tensor(3, 3)) < 1e-8);

    // already-white input stays white
    const Tensor3 w2 = t_whiten(w);
    const Tensor3 cw2 = tensor_covariance(w2);
    CHECK(frobenius_norm(cw2 - identity_tensor(3, 3)) < 1e-10);
}

TEST_CASE("t_whiten p=1 matches classical ZCA") {
    Rng rng(43);
    Tensor3 x(3, 40, 1);
    for (double& v : x.data) v = rng.gaussian();
    double mu = 0.0;
    for (double v : x.data) mu += v;
    mu /= static_cast<double>(x.data.size());
    for (double& v : x.data) v -= mu;

    const Tensor3 w = t_whiten(x);

    // dense ZCA oracle: C = (1/m) X X^T, W = C^{-1/2} X
    RealMatrix c(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 40; ++k) s += x.at(i, k, 0) * x.at(j, k, 0);
            c(i, j) = s / 40.0;
        }
    const RealMatrix cinv = sym_matrix_power(c, -0.5);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 40; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < 3; ++j) s += cinv(i, j) * x.at(j, k, 0);
            CHECK(w.at(i, k, 0) == doctest::Approx(s).epsilon(1e-9));
        }
}

TEST_CASE("matrix_whiten and channelwise baseline separate on correlated input") {
    const ImageTensor img = correlated(55);
    CHECK(decorrelation_index(img) > 0.5);

    const ImageTensor zca = matrix_whiten(img);
    CHECK(decorrelation_index(zca) < 1e-10);

    const ImageTensor cw = channelwise_pca_whiten(img);
    CHECK(decorrelation_index(cw) > 0.5);  // correlations survive
    const RealMatrix corr = pearson_channel_correlations(cw);
    CHECK(std::abs(corr(0, 1)) > 0.5);

    // identity-covariance input is left alone by matrix whitening
    const ImageTensor white = matrix_whiten(img);
    const ImageTensor rewhite = matrix_whiten(white);
    double dev = 0.0;
    for (std::size_t i = 0; i < white.values.size(); ++i)
        dev = std::max(dev, std::abs(white.values[i] - rewhite.values[i]));
    CHECK(dev < 1e-8);

    CHECK_THROWS_AS(channelwise_pca_whiten(constant_image(4, 4, 3, 0.5)), ZeroVarianceChannel);
}

TEST_CASE("channelwise whiten leaves an uncorrelated unit-variance image unchanged") {
    Rng rng(61);
    ImageTensor img(10, 10, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        double mu = 0.0, var = 0.0;
        std::vector<double> vals(100);
        for (double& v : vals) {
            v = rng.gaussian();
            mu += v;
        }
        mu /= 100.0;
        for (double v : vals) var += (v - mu) * (v - mu);
        var /= 100.0;
        const double sd = std::sqrt(var);
        for (std::size_t idx = 0; idx < 100; ++idx)
            img.at(idx / 10, idx % 10, k) = (vals[idx] - mu) / sd;
    }
    const ImageTensor out = channelwise_pca_whiten(img);
    for (std::size_t i = 0; i < img.values.size(); ++i)
        CHECK(out.values[i] == doctest::Approx(img.values[i]).epsilon(1e-10));
}

TEST_CASE("color transfer: identity when source equals target") {
    const ImageTensor img = correlated(71, 24, 24);
    const TransferResult res = color_transfer(img, img);
    CHECK(frobenius_norm(res.map - RealMatrix::identity(3)) < 1e-9);
    double dev = 0.0;
    for (std::size_t i = 0; i < img.values.size(); ++i)
        dev = std::max(dev, std::abs(res.raw.values[i] - img.values[i]));
    CHECK(dev < 1e-9);
}

TEST_CASE("color transfer pushforward: output covariance equals the target's") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const ImageTensor source = correlated(800 + seed, 32, 32);
        const ImageTensor target =
            make_correlated_image(40, 40, 0.3, -0.2, 0.1, 900 + seed, 0.6, 0.1);
        const TransferResult res = color_transfer(source, target);
        const RealMatrix ct = channel_covariance(target);
        const RealMatrix cout = channel_covariance(res.raw);
        CHECK(frobenius_norm(cout - ct) < 1e-6 * frobenius_norm(ct));
        // channel means match the target's
        const CenteredImage t_c = center_channels(target);
        const CenteredImage o_c = center_channels(res.raw);
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(t_c.means[k] - o_c.means[k]) < 1e-10);
        // transport map is symmetric
        CHECK(frobenius_norm(res.map - transpose(res.map)) < 1e-9);
    }
}

TEST_CASE("scalar transfer: per-pixel scaling by sigma_t/sigma_s plus mean shift") {
    Rng rng(81);
    ImageTensor source(1, 50, 1), target(1, 50, 1);
    for (std::size_t j = 0; j < 50; ++j) {
        source.at(0, j, 0) = 2.0 * rng.gaussian() + 1.0;
        target.at(0, j, 0) = 0.5 * rng.gaussian() + 3.0;
    }
    // channelwise and tensor routes coincide in the scalar case
    const ImageTensor via_reinhard = reinhard_channelwise_transfer(source, target);
    const TransferResult via_transport = color_transfer(source, target);
    const std::vector<double> mu_s = center_channels(source).means;
    const std::vector<double> mu_t = center_channels(target).means;
    const RealMatrix cs = channel_covariance(source);
    const RealMatrix ct = channel_covariance(target);
    const double gain = std::sqrt(ct(0, 0) / cs(0, 0));
    CHECK(via_transport.map(0, 0) == doctest::Approx(gain).epsilon(1e-12));
    for (std::size_t j = 0; j < 50; ++j) {
        const double expect = (source.at(0, j, 0) - mu_s[0]) * gain + mu_t[0];
        CHECK(via_reinhard.at(0, j, 0) == doctest::Approx(expect).epsilon(1e-12));
        CHECK(via_transport.raw.at(0, j, 0) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("reinhard transfer matches moments but preserves source correlations") {
    const ImageTensor source = correlated(91, 32, 32);
    const ImageTensor target = make_correlated_image(32, 32, -0.4, 0.1, 0.0, 92, 0.55, 0.08);
    const ImageTensor out = reinhard_channelwise_transfer(source, target);

    const CenteredImage t_c = center_channels(target);
    const CenteredImage o_c = center_channels(out);
    const RealMatrix ct = channel_covariance(target);
    const RealMatrix co = channel_covariance(out);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(std::abs(o_c.means[k] - t_c.means[k]) < 1e-10);
        CHECK(std::abs(std::sqrt(co(k, k)) - std::sqrt(ct(k, k))) < 1e-10);
    }
    // cross-channel correlations stay the source's
    const RealMatrix rs = pearson_channel_correlations(source);
    const RealMatrix ro = pearson_channel_correlations(out);
    CHECK(std::abs(rs(0, 1) - ro(0, 1)) < 1e-10);
    CHECK(std::abs(rs(0, 2) - ro(0, 2)) < 1e-10);

    // identity on equal inputs
    const ImageTensor same = reinhard_channelwise_transfer(source, source);
    double dev = 0.0;
    for (std::size_t i = 0; i < source.values.size(); ++i)
        dev = std::max(dev, std::abs(same.values[i] - source.values[i]));
    CHECK(dev < 1e-12);
}

TEST_CASE("tensor transport map is T-symmetric and pushes the covariance forward") {
    const Tensor3 cs = make_conditioned_spd_tensor(3, 3, 6.0, 7001);
    const Tensor3 ct = make_conditioned_spd_tensor(3, 3, 9.0, 7002);
    const Tensor3 t = tensor_transport_map(cs, ct);
    CHECK(frobenius_norm(t - t_transpose(t)) < 1e-9);
    const Tensor3 pushed = t_product(t_product(t, cs), t_transpose(t));
    CHECK(frobenius_norm(pushed - ct) < 1e-8 * frobenius_norm(ct));
}

TEST_CASE("ssim") {
    const ImageTensor img = correlated(95, 24, 24);
    const RealMatrix a = luminance_grayscale(img);
    CHECK(ssim(a, a) == doctest::Approx(1.0));

    // anticorrelation on a high-contrast binary pattern
    RealMatrix bin(16, 16);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) bin(i, j) = static_cast<double>((i + j) % 2);
    RealMatrix inv(16, 16);
    for (std::size_t i = 0; i < 16; ++i)
        for (std::size_t j = 0; j < 16; ++j) inv(i, j) = 1.0 - bin(i, j);
    CHECK(ssim(bin, inv) < 0.0);

    // direct per-window loop oracle
    const RealMatrix b = luminance_grayscale(correlated(96, 24, 24));
    double acc = 0.0;
    std::size_t windows = 0;
    for (std::size_t i = 0; i + 8 <= 24; ++i)
        for (std::size_t j = 0; j + 8 <= 24; ++j) {
            double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
            for (std::size_t r = 0; r < 8; ++r)
                for (std::size_t c = 0; c < 8; ++c) {
                    const double x = a(i + r, j + c), y = b(i + r, j + c);
                    sa += x;
                    sb += y;
                    saa += x * x;
                    sbb += y * y;
                    sab += x * y;
                }
            const double mx = sa / 64, my = sb / 64;
            const double vx = saa / 64 - mx * mx, vy = sbb / 64 - my * my;
            const double cxy = sab / 64 - mx * my;
            acc += ((2 * mx * my + 1e-4) * (2 * cxy + 9e-4)) /
                   ((mx * mx + my * my + 1e-4) * (vx + vy + 9e-4));
            ++windows;
        }
    CHECK(ssim(a, b) == doctest::Approx(acc / windows).epsilon(1e-12));

    CHECK_THROWS_AS(ssim(RealMatrix(2, 2), RealMatrix(3, 3)), DimensionMismatch);
}

TEST_CASE("eme") {
    CHECK(eme(RealMatrix(16, 16)) == doctest::Approx(0.0));

    RealMatrix board(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) board(i, j) = static_cast<double>((i + j) % 2);
    CHECK(eme(board) == doctest::Approx(20.0 * std::log10(1.0001 / 0.0001)).epsilon(1e-12));

    // tile-loop oracle with a partial edge tile (10x10, block 8)
    const RealMatrix img = luminance_grayscale(correlated(97, 10, 10));
    double acc = 0.0;
    std::size_t tiles = 0;
    for (std::size_t i0 = 0; i0 < 10; i0 += 8)
        for (std::size_t j0 = 0; j0 < 10; j0 += 8) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = i0; i < std::min<std::size_t>(i0 + 8, 10); ++i)
                for (std::size_t j = j0; j < std::min<std::size_t>(j0 + 8, 10); ++j) {
                    lo = std::min(lo, img(i, j));
                    hi = std::max(hi, img(i, j));
                }
            acc += 20.0 * std::log10((hi + 1e-4) / (lo + 1e-4));
            ++tiles;
        }
    CHECK(tiles == 4);
    CHECK(eme(img) == doctest::Approx(acc / tiles).epsilon(1e-12));
}

TEST_CASE("decorrelation index and pearson correlations") {
    // identity-covariance synthetic: DI ~ 0
    Rng rng(99);
    ImageTensor white(40, 40, 3);
    for (double& v : white.values) v = rng.gaussian();
    const ImageTensor zca = matrix_whiten(white);
    CHECK(decorrelation_index(zca) < 1e-10);

    // strongly correlated synthetic: DI well above 1
    CHECK(decorrelation_index(channelwise_pca_whiten(correlated(101))) > 1.0);

    // duplicated channels: off-diagonal correlation 1
    ImageTensor dup(4, 4, 2);
    for (std::size_t idx = 0; idx < 16; ++idx) {
        const double v = static_cast<double>(idx) / 16.0;
        dup.at(idx / 4, idx % 4, 0) = v;
        dup.at(idx / 4, idx % 4, 1) = v;
    }
    const RealMatrix corr = pearson_channel_correlations(dup);
    CHECK(corr(0, 1) == doctest::Approx(1.0));
    CHECK(corr(0, 0) == 1.0);

    // independent channels, 1e4 samples: |rho| < 0.05
    const ImageTensor indep = make_correlated_image(100, 100, 0.0, 0.0, 0.0, 103);
    const RealMatrix ri = pearson_channel_correlations(indep);
    CHECK(std::abs(ri(0, 1)) < 0.05);
    CHECK(std::abs(ri(0, 2)) < 0.05);
    CHECK(std::abs(ri(1, 2)) < 0.05);

    // whitening pipeline kills the correlations
    const RealMatrix rw = pearson_channel_correlations(matrix_whiten(correlated(104)));
    CHECK(std::abs(rw(0, 1)) < 1e-6);
    CHECK(std::abs(rw(0, 2)) < 1e-6);

    CHECK_THROWS_AS(pearson_channel_correlations(constant_image(3, 3, 3, 0.2)),
                    ZeroVarianceChannel);
}

TEST_CASE("correlated generator hits its design correlations") {
    const ImageTensor img = correlated(111, 96, 96);
    const RealMatrix corr = pearson_channel_correlations(img);
    CHECK(corr(0, 1) == doctest::Approx(0.83).epsilon(0.05));
    CHECK(corr(0, 2) == doctest::Approx(0.68).epsilon(0.06));
}
