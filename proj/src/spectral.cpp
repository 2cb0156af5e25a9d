#include "tsqrt/spectral.hpp"

#include <cmath>
#include <numbers>

#include "tsqrt/errors.hpp"
#include "tsqrt/parallel.hpp"

namespace tsqrt {

namespace {

// Twiddles w[r] = exp(-2*pi*i*r/p) with the mirror half copied by conjugation
// so that w[p-r] == conj(w[r]) exactly; this keeps the conjugate-symmetry
// invariant of real-tensor transforms bitwise.
std::vector<cdouble> twiddles(std::size_t p) {
    std::vector<cdouble> w(p);
    for (std::size_t r = 0; r <= p / 2; ++r) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
        w[r] = {std::cos(ang), std::sin(ang)};
        // snap points whose cosine or sine is exactly representable, so
        // cancellations that are exact in theory (zero slices of duplicated
        // inputs, identity round trips, realness at the Nyquist slice) stay
        // exact in floating point
        if (6 * r == p) w[r].real(0.5);
        if (4 * r == p) w[r] = {0.0, -1.0};
        if (3 * r == p) w[r].real(-0.5);
        if (2 * r == p) w[r] = {-1.0, 0.0};
    }
    for (std::size_t r = p / 2 + 1; r < p; ++r) w[r] = std::conj(w[p - r]);
    w[0] = 1.0;
    return w;
}

}  // namespace

SpectralTensor dft_mode3(const Tensor3& t) {
    if (t.p < 1 || t.n < 1 || t.m < 1) throw DimensionMismatch("dft_mode3: empty tensor");
    SpectralTensor out(t.n, t.m, t.p);
    const auto w = twiddles(t.p);
    const std::size_t nm = t.n * t.m;
    parallel_for(nm, [&](std::size_t idx) {
        const std::size_t i = idx / t.m;
        const std::size_t j = idx % t.m;
        for (std::size_t k = 0; k < t.p; ++k) {
            cdouble s{};
            for (std::size_t l = 0; l < t.p; ++l) {
                s += t.at(i, j, l) * w[(l * k) % t.p];
            }
            out.slices[k](i, j) = s;
        }
    });
    return out;
}

Tensor3 idft_mode3(const SpectralTensor& s) {
    if (s.p < 1) throw DimensionMismatch("idft_mode3: empty spectral tensor");
    for (const auto& sl : s.slices) {
        if (sl.rows() != s.n || sl.cols() != s.m)
            throw DimensionMismatch("idft_mode3: inconsistent slice dimensions");
    }
    const auto w = twiddles(s.p);
    const double inv_p = 1.0 / static_cast<double>(s.p);
    Tensor3 out(s.n, s.m, s.p);
    std::vector<double> worst(s.n * s.m, 0.0);
    parallel_for(s.n * s.m, [&](std::size_t idx) {
        const std::size_t i = idx / s.m;
        const std::size_t j = idx % s.m;
        double local = 0.0;
        for (std::size_t l = 0; l < s.p; ++l) {
            cdouble acc{};
            for (std::size_t k = 0; k < s.p; ++k) {
                acc += s.slices[k](i, j) * std::conj(w[(l * k) % s.p]);
            }
            acc *= inv_p;
            local = std::max(local, std::abs(acc.imag()));
            out.at(i, j, l) = acc.real();
        }
        worst[idx] = local;
    });
    double imag_peak = 0.0;
    for (double v : worst) imag_peak = std::max(imag_peak, v);
    const double threshold = 1e-9 * spectral_frobenius_norm(s);
    if (imag_peak > threshold) {
        throw ResidualImaginaryTooLarge(
            "idft_mode3: imaginary residue exceeds 1e-9 * ||s||; conjugate symmetry violated upstream");
    }
    return out;
}

double spectral_frobenius_norm(const SpectralTensor& s) {
    double acc = 0.0;
    for (const auto& sl : s.slices) {
        const double f = frobenius_norm(sl);
        acc += f * f;
    }
    return std::sqrt(acc);
}

}  // namespace tsqrt
