#include "tsqrt/tensor_ops.hpp"

#include <cmath>
#include <string>

#include "tsqrt/errors.hpp"
#include "tsqrt/parallel.hpp"

namespace tsqrt {

namespace {

constexpr double kStructureTol = 1e-10;

SpectralTensor make_spectral_like(std::size_t n, std::size_t m, std::size_t p) {
    return SpectralTensor(n, m, p);
}

}  // namespace

Tensor3 t_product(const Tensor3& a, const Tensor3& b) {
    if (a.m != b.n || a.p != b.p) throw DimensionMismatch("t_product: shapes not conformable");
    const SpectralTensor ah = dft_mode3(a);
    const SpectralTensor bh = dft_mode3(b);
    SpectralTensor ch = make_spectral_like(a.n, b.m, a.p);
    parallel_for(a.p, [&](std::size_t i) { ch.slices[i] = cmat_mul(ah.slices[i], bh.slices[i]); });
    return idft_mode3(ch);
}

Tensor3 t_transpose(const Tensor3& a) {
    Tensor3 out(a.m, a.n, a.p);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.m; ++j) out.at(j, i, 0) = a.at(i, j, 0);
    for (std::size_t k = 1; k < a.p; ++k) {
        const std::size_t src = a.p - k;
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = 0; j < a.m; ++j) out.at(j, i, k) = a.at(i, j, src);
    }
    return out;
}

Tensor3 t_inverse(const Tensor3& a) {
    if (a.n != a.m) throw DimensionMismatch("t_inverse: tensor not square");
    const SpectralTensor ah = dft_mode3(a);
    SpectralTensor inv = make_spectral_like(a.n, a.n, a.p);
    parallel_for(a.p, [&](std::size_t i) {
        try {
            inv.slices[i] = cmat_inv(ah.slices[i]);
        } catch (const SingularMatrix&) {
            throw SingularSlice("t_inverse: Fourier slice " + std::to_string(i) + " is singular", i);
        }
    });
    return idft_mode3(inv);
}

std::vector<SliceDefiniteness> classify_slices(const SpectralTensor& s, double tol) {
    std::vector<SliceDefiniteness> out(s.p);
    for (std::size_t i = 0; i < s.p; ++i) {
        const ComplexMatrix& sl = s.slices[i];
        SliceDefiniteness& d = out[i];
        const double scale = std::max(max_abs(sl), 1e-300);
        d.hermitian = hermitian_deviation(sl) <= kStructureTol * scale;
        d.structured = d.hermitian || symmetry_deviation(sl) <= kStructureTol * scale;
        const HermitianEig eig = cmat_herm_eig(hermitian_part(sl));
        d.lambda_max = eig.eigenvalues.front();
        d.lambda_min = eig.eigenvalues.back();
        d.positive = d.lambda_max > 0.0 && d.lambda_min > tol * d.lambda_max;
    }
    return out;
}

bool is_t_positive_definite(const Tensor3& a, double tol) {
    if (a.n != a.m) throw DimensionMismatch("is_t_positive_definite: tensor not square");
    const auto cls = classify_slices(dft_mode3(a), tol);
    for (const auto& d : cls) {
        if (!d.structured || !d.positive) return false;
    }
    return true;
}

RealMatrix unfold(const Tensor3& a) {
    RealMatrix m(a.n * a.p, a.m);
    for (std::size_t k = 0; k < a.p; ++k)
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t j = 0; j < a.m; ++j) m(k * a.n + i, j) = a.at(i, j, k);
    return m;
}

Tensor3 fold(const RealMatrix& m, std::size_t n, std::size_t cols, std::size_t p) {
    if (m.rows() != n * p || m.cols() != cols) throw DimensionMismatch("fold: shape mismatch");
    Tensor3 t(n, cols, p);
    for (std::size_t k = 0; k < p; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < cols; ++j) t.at(i, j, k) = m(k * n + i, j);
    return t;
}

RealMatrix bcirc_oracle(const Tensor3& a) {
    RealMatrix m(a.n * a.p, a.m * a.p);
    for (std::size_t br = 0; br < a.p; ++br) {
        for (std::size_t bc = 0; bc < a.p; ++bc) {
            const std::size_t src = (br + a.p - bc) % a.p;
            for (std::size_t i = 0; i < a.n; ++i)
                for (std::size_t j = 0; j < a.m; ++j)
                    m(br * a.n + i, bc * a.m + j) = a.at(i, j, src);
        }
    }
    return m;
}

TSvdResult t_svd(const Tensor3& a) {
    const SpectralTensor ah = dft_mode3(a);
    SpectralTensor uh = make_spectral_like(a.n, a.n, a.p);
    SpectralTensor sh = make_spectral_like(a.n, a.m, a.p);
    SpectralTensor vh = make_spectral_like(a.m, a.m, a.p);
    parallel_for(a.p, [&](std::size_t i) {
        ComplexSvd svd = cmat_svd(ah.slices[i]);
        uh.slices[i] = std::move(svd.u);
        vh.slices[i] = std::move(svd.v);
        ComplexMatrix s(a.n, a.m);
        for (std::size_t d = 0; d < svd.sigma.size(); ++d) s(d, d) = svd.sigma[d];
        sh.slices[i] = std::move(s);
    });
    TSvdResult out;
    out.u = idft_mode3(uh);
    out.s = idft_mode3(sh);
    out.v = idft_mode3(vh);
    return out;
}

Tensor3 t_sqrt_direct(const Tensor3& a) {
    if (a.n != a.m) throw DimensionMismatch("t_sqrt_direct: tensor not square");
    const SpectralTensor ah = dft_mode3(a);
    const auto cls = classify_slices(ah, 1e-12);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (!cls[i].structured || !cls[i].positive) {
            throw NotPositiveDefinite(
                "t_sqrt_direct: tensor is not T-positive definite (Fourier slice " +
                    std::to_string(i) + ")",
                "a", i);
        }
    }
    SpectralTensor xh = make_spectral_like(a.n, a.n, a.p);
    parallel_for(a.p, [&](std::size_t i) {
        const ComplexMatrix& sl = ah.slices[i];
        if (cls[i].hermitian) {
            xh.slices[i] = cmat_sqrt_direct(hermitian_part(sl));
        } else {
            // Complex-symmetric slice with PD Hermitian part: refine to the
            // machine floor with the coupled iteration, which is stable when
            // over-iterated.
            const double scale = std::max(frobenius_norm(sl), 1e-300);
            xh.slices[i] = matrix_sqrt_db(sl, 1e-14 * scale, 80).sqrt;
        }
    });
    return idft_mode3(xh);
}

}  // namespace tsqrt
