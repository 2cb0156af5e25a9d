#include "tsqrt/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tsqrt/errors.hpp"
#include "tsqrt/parallel.hpp"
#include "tsqrt/rng.hpp"
#include "tsqrt/tensor_ops.hpp"

namespace tsqrt {

namespace {

double residual_spectral(const SpectralTensor& xh, const SpectralTensor& ah) {
    std::vector<double> parts(ah.p, 0.0);
    parallel_for(ah.p, [&](std::size_t i) {
        const ComplexMatrix r = cmat_mul(xh.slices[i], xh.slices[i]) - ah.slices[i];
        const double f = frobenius_norm(r);
        parts[i] = f * f;
    });
    double acc = 0.0;
    for (double v : parts) acc += v;  // fixed slice order
    return std::sqrt(acc);
}

void check_t_pd(const SpectralTensor& ah, const char* op) {
    const auto cls = classify_slices(ah, 1e-12);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (!cls[i].structured || !cls[i].positive) {
            throw NotPositiveDefinite(std::string(op) +
                                          ": tensor is not T-positive definite (Fourier slice " +
                                          std::to_string(i) + " fails the definiteness test)",
                                      "a", i);
        }
    }
}

void fill_ratios(ConvergenceTrace& trace) {
    const auto& r = trace.residuals;
    trace.rho.assign(r.size() > 0 ? r.size() - 1 : 0, std::numeric_limits<double>::quiet_NaN());
    trace.q = trace.rho;
    for (std::size_t k = 1; k < r.size(); ++k) {
        if (r[k - 1] > 0.0) {
            trace.rho[k - 1] = r[k] / r[k - 1];
            trace.q[k - 1] = r[k] / (r[k - 1] * r[k - 1]);
        }
    }
}

SqrtSolution run_solver(const Tensor3& a, const IterationConfig& cfg, bool coupled,
                        const SpectralObserver& observer) {
    if (a.n != a.m) throw DimensionMismatch("tsqrt solver: tensor not square");
    if (cfg.max_iterations < 1) throw Error("tsqrt solver: max_iterations must be >= 1");

    const SpectralTensor ah = dft_mode3(a);
    check_t_pd(ah, coupled ? "db_tsqrt" : "newton_tsqrt");

    SpectralTensor xh = ah;
    SpectralTensor yh;
    if (coupled) {
        yh = SpectralTensor(a.n, a.n, a.p);
        for (std::size_t i = 0; i < a.p; ++i) yh.slices[i] = ComplexMatrix::identity(a.n);
    }

    ConvergenceTrace trace;
    trace.residuals.push_back(residual_spectral(xh, ah));
    if (observer) observer(0, xh);

    bool converged = cfg.early_stop && trace.residuals.back() < cfg.tolerance;
    std::size_t iterations = 0;

    while (!converged && iterations < cfg.max_iterations) {
        const std::size_t k = iterations + 1;
        parallel_for(a.p, [&](std::size_t i) {
            try {
                // No re-symmetrization of the iterates: projecting onto the
                // Hermitian manifold each step suppresses exactly the rounding
                // modes whose growth the stability experiments measure, and
                // the drift stays far below tolerance in the early-stopped
                // regime anyway.
                if (coupled) {
                    ComplexMatrix yinv = cmat_inv(yh.slices[i]);
                    ComplexMatrix xinv = cmat_inv(xh.slices[i]);
                    xh.slices[i] = 0.5 * (xh.slices[i] + yinv);
                    yh.slices[i] = 0.5 * (yh.slices[i] + xinv);
                } else {
                    xh.slices[i] =
                        0.5 * (xh.slices[i] + cmat_mul(ah.slices[i], cmat_inv(xh.slices[i])));
                }
                // A runaway iterate (overflow past the representable range)
                // counts as a singular slice: the inverse is meaningless from
                // here on and the caller needs the partial trace.
                for (const auto& z : xh.slices[i].entries()) {
                    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                        throw SingularMatrix("iterate overflowed");
                    }
                }
            } catch (const SingularMatrix&) {
                throw SingularSlice("tsqrt solver: iterate slice " + std::to_string(i) +
                                        " became singular at iteration " + std::to_string(k),
                                    i, k, trace.residuals);
            }
        });
        trace.residuals.push_back(residual_spectral(xh, ah));
        if (observer) observer(k, xh);
        iterations = k;
        if (cfg.early_stop && trace.residuals.back() < cfg.tolerance) converged = true;
    }

    if (!cfg.early_stop) converged = trace.residuals.back() < cfg.tolerance;
    trace.converged = converged;
    trace.iterations_run = iterations;
    fill_ratios(trace);

    SqrtSolution out;
    out.sqrt = idft_mode3(xh);
    if (coupled) out.inv_sqrt = idft_mode3(yh);
    out.trace = std::move(trace);
    return out;
}

}  // namespace

double residual(const Tensor3& a, const Tensor3& x) {
    if (a.n != a.m || x.n != x.m || a.n != x.n || a.p != x.p)
        throw DimensionMismatch("residual: tensors must be square and conformable");
    return residual_spectral(dft_mode3(x), dft_mode3(a));
}

SqrtSolution newton_tsqrt(const Tensor3& a, const IterationConfig& cfg,
                          const SpectralObserver& observer) {
    return run_solver(a, cfg, false, observer);
}

SqrtSolution db_tsqrt(const Tensor3& a, const IterationConfig& cfg,
                      const SpectralObserver& observer) {
    return run_solver(a, cfg, true, observer);
}

RatioSeries convergence_ratios(const std::vector<double>& residuals) {
    RatioSeries out;
    for (std::size_t k = 1; k < residuals.size(); ++k) {
        const double prev = residuals[k - 1];
        if (prev == 0.0) continue;
        out.k.push_back(k);
        out.rho.push_back(residuals[k] / prev);
        out.q.push_back(residuals[k] / (prev * prev));
    }
    return out;
}

Tensor3 make_conditioned_spd_tensor(std::size_t n, std::size_t p, double kappa,
                                    std::uint64_t seed) {
    if (n < 2) throw DimensionMismatch("make_conditioned_spd_tensor: n must be >= 2");
    if (p < 1) throw DimensionMismatch("make_conditioned_spd_tensor: p must be >= 1");
    if (kappa < 1.0) throw Error("make_conditioned_spd_tensor: kappa must be >= 1");

    Rng rng(seed);
    std::vector<double> lambda(n);
    for (std::size_t j = 0; j < n; ++j) {
        lambda[j] = (n == 1) ? 1.0
                             : std::pow(kappa, static_cast<double>(j) / static_cast<double>(n - 1));
    }

    SpectralTensor sh(n, n, p);
    const std::size_t independent = p / 2 + 1;
    for (std::size_t i = 0; i < independent; ++i) {
        const double scale = std::exp(rng.uniform(std::log(0.5), std::log(2.0)));
        const bool self_conjugate = (i == 0) || (p % 2 == 0 && i == p / 2);

        ComplexMatrix q(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                q(r, c) = self_conjugate ? cdouble(rng.gaussian(), 0.0) : rng.complex_gaussian();

        // Modified Gram-Schmidt; positive real diagonal of R makes Q Haar.
        for (std::size_t c = 0; c < n; ++c) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < c; ++prev) {
                    cdouble proj{};
                    for (std::size_t r = 0; r < n; ++r) proj += std::conj(q(r, prev)) * q(r, c);
                    for (std::size_t r = 0; r < n; ++r) q(r, c) -= proj * q(r, prev);
                }
            }
            double nrm = 0.0;
            for (std::size_t r = 0; r < n; ++r) nrm += std::norm(q(r, c));
            nrm = std::sqrt(nrm);
            for (std::size_t r = 0; r < n; ++r) q(r, c) = q(r, c) / nrm;
        }

        ComplexMatrix s(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c) {
                cdouble acc{};
                for (std::size_t k = 0; k < n; ++k)
                    acc += q(r, k) * (scale * lambda[k]) * std::conj(q(c, k));
                s(r, c) = acc;
                s(c, r) = std::conj(acc);
            }
        for (std::size_t r = 0; r < n; ++r) s(r, r) = cdouble(s(r, r).real(), 0.0);
        sh.slices[i] = std::move(s);
    }
    for (std::size_t i = independent; i < p; ++i) {
        const ComplexMatrix& src = sh.slices[p - i];
        ComplexMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = std::conj(src(r, c));
        sh.slices[i] = std::move(m);
    }
    return idft_mode3(sh);
}

namespace {

MethodStability summarize(std::vector<double> residuals, std::size_t iterations, bool failed) {
    MethodStability out;
    residuals.resize(iterations + 1, std::numeric_limits<double>::infinity());
    out.residuals = std::move(residuals);
    out.failed = failed;

    double rmin = std::numeric_limits<double>::infinity();
    std::size_t kmin = 0;
    for (std::size_t k = 0; k < out.residuals.size(); ++k) {
        if (std::isfinite(out.residuals[k]) && out.residuals[k] < rmin) {
            rmin = out.residuals[k];
            kmin = k;
        }
    }
    out.r_min = std::isfinite(rmin) ? rmin : std::numeric_limits<double>::infinity();
    const double rfinal = out.residuals.back();
    if (rmin == 0.0) {
        out.final_over_min = (rfinal == 0.0) ? 1.0 : std::numeric_limits<double>::infinity();
    } else {
        out.final_over_min = rfinal / rmin;
    }
    const std::size_t steps = out.residuals.size() - 1 - kmin;
    out.growth_per_iteration =
        (steps > 0 && out.final_over_min > 0.0 && std::isfinite(out.final_over_min))
            ? std::pow(out.final_over_min, 1.0 / static_cast<double>(steps))
            : 1.0;
    return out;
}

MethodStability run_method(const Tensor3& a, std::size_t iterations, bool coupled) {
    IterationConfig cfg;
    cfg.max_iterations = iterations;
    cfg.tolerance = 0.0;
    cfg.early_stop = false;
    try {
        SqrtSolution sol = coupled ? db_tsqrt(a, cfg) : newton_tsqrt(a, cfg);
        return summarize(std::move(sol.trace.residuals), iterations, false);
    } catch (const SingularSlice& e) {
        return summarize(e.partial_residuals, iterations, true);
    }
}

}  // namespace

StabilityReport stability_experiment(const Tensor3& a, std::size_t iterations) {
    StabilityReport report;
    report.newton = run_method(a, iterations, false);
    report.denman_beavers = run_method(a, iterations, true);
    return report;
}

}  // namespace tsqrt
