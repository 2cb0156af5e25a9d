#include "tsqrt/tbw.hpp"

#include <cmath>
#include <string>

#include "tsqrt/errors.hpp"
#include "tsqrt/spectral.hpp"

namespace tsqrt {

namespace {

constexpr double kHermTolRel = 1e-10;
constexpr double kPdRel = 1e-12;
constexpr double kNegClamp = 1e-10;

void check_hpd(const ComplexMatrix& m, const char* which, std::size_t slice, bool tensor_level) {
    const double scale = std::max(max_abs(m), 1e-300);
    const auto fail = [&](const char* what) {
        std::string msg = std::string("tbw: operand ") + which + " " + what;
        if (tensor_level) msg += " (Fourier slice " + std::to_string(slice) + ")";
        throw NotPositiveDefinite(msg, which, tensor_level ? std::optional<std::size_t>(slice)
                                                           : std::nullopt);
    };
    if (!m.square()) throw DimensionMismatch("tbw: matrix not square");
    if (hermitian_deviation(m) > kHermTolRel * scale) fail("is not Hermitian");
    const HermitianEig eig = cmat_herm_eig(hermitian_part(m));
    if (eig.eigenvalues.front() <= 0.0 ||
        eig.eigenvalues.back() <= kPdRel * eig.eigenvalues.front()) {
        fail("is not positive definite");
    }
}

ComplexMatrix inner_sqrt(const ComplexMatrix& m, SqrtStrategy strategy) {
    const double scale = std::max(frobenius_norm(m), 1e-300);
    switch (strategy) {
        case SqrtStrategy::Newton:
            return matrix_sqrt_newton(m, 1e-14 * scale, 60);
        case SqrtStrategy::DenmanBeavers:
            return matrix_sqrt_db(m, 1e-14 * scale, 60).sqrt;
        case SqrtStrategy::Direct:
        default:
            return cmat_sqrt_direct(hermitian_part(m));
    }
}

TbwSliceRecord slice_record(const ComplexMatrix& a, const ComplexMatrix& b,
                            SqrtStrategy strategy) {
    const ComplexMatrix p = inner_sqrt(a, strategy);
    ComplexMatrix m = cmat_mul(cmat_mul(p, b), p);
    m = hermitian_part(m);  // scrub rounding drift before the inner root
    const ComplexMatrix msqrt = inner_sqrt(m, strategy);

    TbwSliceRecord rec;
    rec.trace_a = cmat_trace(a).real();
    rec.trace_b = cmat_trace(b).real();
    rec.trace_cross_sqrt = cmat_trace(msqrt).real();
    double d2 = rec.trace_a + rec.trace_b - 2.0 * rec.trace_cross_sqrt;
    // Values within rounding of zero (either sign) clamp to 0: the trace
    // arithmetic carries ~1e-15 * trace noise, and sqrt would blow that up to
    // ~1e-7 distances between identical operands.
    const double clamp = kNegClamp * std::max(1.0, rec.trace_a + rec.trace_b);
    if (d2 < -clamp) {
        throw Error("tbw: slice distance fell below the rounding clamp; inputs are inconsistent");
    }
    if (std::abs(d2) <= clamp) d2 = 0.0;
    rec.d_squared = d2;
    return rec;
}

}  // namespace

double bw_distance_sq_matrix(const ComplexMatrix& a, const ComplexMatrix& b,
                             SqrtStrategy strategy) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("bw_distance_sq_matrix: shape mismatch");
    check_hpd(a, "a", 0, false);
    check_hpd(b, "b", 0, false);
    return slice_record(a, b, strategy).d_squared;
}

TbwReport tbw_report(const Tensor3& a, const Tensor3& b, SqrtStrategy strategy) {
    if (!a.same_shape(b)) throw DimensionMismatch("tbw: tensors differ in shape");
    if (a.n != a.m) throw DimensionMismatch("tbw: tensors not square");
    const SpectralTensor ah = dft_mode3(a);
    const SpectralTensor bh = dft_mode3(b);

    TbwReport report;
    report.per_slice.reserve(a.p);
    double total_sq = 0.0;
    for (std::size_t i = 0; i < a.p; ++i) {
        check_hpd(ah.slices[i], "a", i, true);
        check_hpd(bh.slices[i], "b", i, true);
        TbwSliceRecord rec =
            slice_record(hermitian_part(ah.slices[i]), hermitian_part(bh.slices[i]), strategy);
        total_sq += rec.d_squared;  // fixed slice order
        report.per_slice.push_back(rec);
    }
    report.total = std::sqrt(total_sq);
    return report;
}

double tbw_distance(const Tensor3& a, const Tensor3& b, SqrtStrategy strategy) {
    return tbw_report(a, b, strategy).total;
}

}  // namespace tsqrt
