#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tsqrt/errors.hpp"
#include "tsqrt/reference_data.hpp"
#include "tsqrt/solvers.hpp"
#include "tsqrt/tensor_ops.hpp"

using namespace tsqrt;
using test::max_abs_diff;
using test::random_tensor;

namespace {

Tensor3 bcirc_product(const Tensor3& a, const Tensor3& b) {
    const RealMatrix big = bcirc_oracle(a) * unfold(b);
    return fold(big, a.n, b.m, a.p);
}

}  // namespace

TEST_CASE("t_product identity laws") {
    const Tensor3 a = random_tensor(3, 3, 4, 1);
    const Tensor3 id = identity_tensor(3, 4);
    CHECK(max_abs_diff(t_product(a, id), a) < 1e-13);
    CHECK(max_abs_diff(t_product(id, a), a) < 1e-13);
}

TEST_CASE("printed root squares back to its tensor at print precision") {
    const Tensor3 x = golden::well_conditioned_sqrt_printed();
    const Tensor3 a = golden::well_conditioned_tensor();
    // five printed decimals leave ~5e-4 in the product
    CHECK(max_abs_diff(t_product(x, x), a) < 5e-4);
}

TEST_CASE("t_product matches the block-circulant oracle") {
    const Tensor3 a = random_tensor(2, 3, 3, 2);
    const Tensor3 b = random_tensor(3, 2, 3, 3);
    const Tensor3 via_fft = t_product(a, b);
    const Tensor3 via_bcirc = bcirc_product(a, b);
    CHECK(max_abs_diff(via_fft, via_bcirc) < 1e-11 * std::max(1.0, frobenius_norm(via_bcirc)));

    CHECK_THROWS_AS(t_product(random_tensor(2, 2, 2, 1), random_tensor(3, 2, 2, 1)),
                    DimensionMismatch);
}

TEST_CASE("t_product associativity and transpose reversal") {
    const Tensor3 a = random_tensor(2, 3, 3, 11);
    const Tensor3 b = random_tensor(3, 4, 3, 12);
    const Tensor3 c = random_tensor(4, 2, 3, 13);
    const Tensor3 left = t_product(t_product(a, b), c);
    const Tensor3 right = t_product(a, t_product(b, c));
    CHECK(max_abs_diff(left, right) < 1e-11 * std::max(1.0, frobenius_norm(left)));

    const Tensor3 ab_t = t_transpose(t_product(a, b));
    const Tensor3 bt_at = t_product(t_transpose(b), t_transpose(a));
    CHECK(max_abs_diff(ab_t, bt_at) < 1e-12 * std::max(1.0, frobenius_norm(ab_t)));
}

TEST_CASE("t_transpose involution, identity, and Fourier identity") {
    const Tensor3 id = identity_tensor(3, 5);
    CHECK(max_abs_diff(t_transpose(id), id) == 0.0);

    const Tensor3 a = random_tensor(3, 2, 4, 21);
    CHECK(max_abs_diff(t_transpose(t_transpose(a)), a) == 0.0);

    const SpectralTensor ah = dft_mode3(a);
    const SpectralTensor ath = dft_mode3(t_transpose(a));
    for (std::size_t i = 0; i < a.p; ++i) {
        const ComplexMatrix expect = conj_transpose(ah.slices[i]);
        CHECK(frobenius_norm(ath.slices[i] - expect) < 1e-12 * std::max(1.0, frobenius_norm(expect)));
    }
}

TEST_CASE("t_inverse") {
    const Tensor3 id = identity_tensor(3, 3);
    CHECK(max_abs_diff(t_inverse(id), id) < 1e-13);

    const Tensor3 a = golden::well_conditioned_tensor();
    const Tensor3 prod = t_product(a, t_inverse(a));
    CHECK(frobenius_norm(prod - identity_tensor(3, 3)) < 1e-10);

    // One zero Fourier slice: tubes constant across depth make slice k=1 zero.
    Tensor3 sing(2, 2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            sing.at(i, j, 0) = (i == j) ? 1.0 : 0.25;
            sing.at(i, j, 1) = sing.at(i, j, 0);
        }
    CHECK_THROWS_AS(t_inverse(sing), SingularSlice);
    try {
        t_inverse(sing);
    } catch (const SingularSlice& e) {
        CHECK(e.slice == 1);
    }
}

TEST_CASE("identity_tensor structure") {
    const Tensor3 id = identity_tensor(4, 3);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(id.at(i, j, 0) == (i == j ? 1.0 : 0.0));
            CHECK(id.at(i, j, 1) == 0.0);
            CHECK(id.at(i, j, 2) == 0.0);
        }
    const SpectralTensor s = dft_mode3(id);
    for (const auto& slice : s.slices)
        CHECK(frobenius_norm(slice - ComplexMatrix::identity(4)) < 1e-14);
}

TEST_CASE("frobenius_norm basics and Fourier path") {
    CHECK(frobenius_norm(identity_tensor(3, 3)) == doctest::Approx(std::sqrt(3.0)));
    CHECK(frobenius_norm(Tensor3(2, 2, 2)) == 0.0);
    const Tensor3 t = random_tensor(3, 3, 4, 31);
    const double fourier = spectral_frobenius_norm(dft_mode3(t));
    CHECK(test::rel_err(frobenius_norm(t), fourier / std::sqrt(4.0)) < 1e-12);
}

TEST_CASE("is_t_positive_definite") {
    CHECK(is_t_positive_definite(identity_tensor(3, 3), 1e-12));
    const Tensor3 a = golden::well_conditioned_tensor();
    CHECK(is_t_positive_definite(a, 1e-12));
    CHECK_FALSE(is_t_positive_definite(-1.0 * a, 1e-12));
    CHECK(is_t_positive_definite(golden::ill_conditioned_tensor(), 1e-12));
    CHECK_THROWS_AS(is_t_positive_definite(random_tensor(2, 3, 2, 5), 1e-12), DimensionMismatch);
}

TEST_CASE("bcirc_oracle structure") {
    // p = 1: the single slice
    const Tensor3 one = random_tensor(2, 3, 1, 41);
    const RealMatrix m1 = bcirc_oracle(one);
    CHECK(m1.rows() == 2);
    CHECK(m1.cols() == 3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(m1(i, j) == one.at(i, j, 0));

    // 1x1x3 scalar circulant [[a,c,b],[b,a,c],[c,b,a]]
    Tensor3 tube(1, 1, 3);
    tube.at(0, 0, 0) = 1.0;
    tube.at(0, 0, 1) = 2.0;
    tube.at(0, 0, 2) = 3.0;
    const RealMatrix c = bcirc_oracle(tube);
    const double expect[3][3] = {{1, 3, 2}, {2, 1, 3}, {3, 2, 1}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(c(i, j) == expect[i][j]);

    // first block column is unfold(a)
    const Tensor3 a = random_tensor(2, 2, 3, 42);
    const RealMatrix big = bcirc_oracle(a);
    const RealMatrix uf = unfold(a);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(big(i, j) == uf(i, j));
}

TEST_CASE("oracle equivalence across shapes") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::size_t n = 1 + seed % 3, m = 1 + (seed + 1) % 3, p = 1 + seed % 4;
        const Tensor3 a = random_tensor(n, m, p, 100 + seed);
        const Tensor3 b = random_tensor(m, n, p, 200 + seed);
        const Tensor3 via_fft = t_product(a, b);
        const Tensor3 via_bcirc = bcirc_product(a, b);
        CHECK(max_abs_diff(via_fft, via_bcirc) <
              1e-11 * std::max(1.0, frobenius_norm(via_bcirc)));
    }
}

TEST_CASE("t_svd") {
    const TSvdResult sid = t_svd(identity_tensor(3, 2));
    CHECK(max_abs_diff(sid.s, identity_tensor(3, 2)) < 1e-12);

    const Tensor3 a = random_tensor(3, 3, 2, 51);
    const TSvdResult svd = t_svd(a);
    const Tensor3 recon = t_product(t_product(svd.u, svd.s), t_transpose(svd.v));
    CHECK(frobenius_norm(recon - a) < 1e-10 * std::max(1.0, frobenius_norm(a)));

    const Tensor3 uut = t_product(svd.u, t_transpose(svd.u));
    CHECK(frobenius_norm(uut - identity_tensor(3, 2)) < 1e-10);
    const Tensor3 vvt = t_product(svd.v, t_transpose(svd.v));
    CHECK(frobenius_norm(vvt - identity_tensor(3, 2)) < 1e-10);

    // f-diagonal slices: diagonal, non-negative, non-increasing
    const SpectralTensor sh = dft_mode3(svd.s);
    for (const auto& slice : sh.slices) {
        for (std::size_t i = 0; i < slice.rows(); ++i)
            for (std::size_t j = 0; j < slice.cols(); ++j) {
                if (i != j) CHECK(std::abs(slice(i, j)) < 1e-12);
            }
        for (std::size_t i = 1; i < std::min(slice.rows(), slice.cols()); ++i)
            CHECK(slice(i, i).real() <= slice(i - 1, i - 1).real() + 1e-12);
        for (std::size_t i = 0; i < std::min(slice.rows(), slice.cols()); ++i)
            CHECK(slice(i, i).real() >= -1e-12);
    }
}

TEST_CASE("t_svd non-square and even depth") {
    // even p exercises the self-conjugate Nyquist slice and the mirrored pairs
    for (auto [n, m, p] : {std::array<std::size_t, 3>{2, 4, 3}, {3, 2, 4}, {3, 3, 4}}) {
        const Tensor3 a = random_tensor(n, m, p, 61 + n + 10 * m + 100 * p);
        const TSvdResult svd = t_svd(a);
        const Tensor3 recon = t_product(t_product(svd.u, svd.s), t_transpose(svd.v));
        CHECK(frobenius_norm(recon - a) < 1e-9 * std::max(1.0, frobenius_norm(a)));
        const Tensor3 uut = t_product(svd.u, t_transpose(svd.u));
        CHECK(frobenius_norm(uut - identity_tensor(n, p)) < 1e-10);
    }
}

TEST_CASE("t_sqrt_direct") {
    const Tensor3 id = identity_tensor(3, 4);
    CHECK(max_abs_diff(t_sqrt_direct(id), id) < 1e-13);

    // The printed root slices carry five decimals.
    const Tensor3 a = golden::well_conditioned_tensor();
    const Tensor3 root = t_sqrt_direct(a);
    CHECK(max_abs_diff(root, golden::well_conditioned_sqrt_printed()) < 5e-6);
    CHECK(frobenius_norm(t_product(root, root) - a) < 1e-10 * frobenius_norm(a));
    CHECK(is_t_positive_definite(root, 1e-10));

    CHECK_THROWS_AS(t_sqrt_direct(-1.0 * a), NotPositiveDefinite);
}

TEST_CASE("t_sqrt_direct agrees with the iterative solver on conditioned tensors") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Tensor3 a = make_conditioned_spd_tensor(4, 5, 10.0 + 3.0 * seed, 300 + seed);
        const Tensor3 direct = t_sqrt_direct(a);
        IterationConfig cfg;
        cfg.tolerance = 1e-13;
        const SqrtSolution sol = newton_tsqrt(a, cfg);
        CHECK(frobenius_norm(direct - sol.sqrt) < 1e-10 * std::max(1.0, frobenius_norm(direct)));
    }
}

TEST_CASE("covariance construction is T-positive semidefinite") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Tensor3 x = random_tensor(3, 8, 3, 400 + seed);
        const Tensor3 c = t_product(x, t_transpose(x));
        const auto cls = classify_slices(dft_mode3(c), 0.0);
        for (const auto& d : cls) {
            CHECK(d.hermitian);
            CHECK(d.lambda_min >= -1e-10 * std::max(1.0, d.lambda_max));
        }
    }
}
