#include "tsqrt/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "tsqrt/errors.hpp"

namespace tsqrt {

namespace {

constexpr double kPivotRel = 1e-14;
constexpr double kHermTol = 1e-10;
constexpr double kPdRel = 1e-12;

void require(bool cond, const char* msg) {
    if (!cond) throw DimensionMismatch(msg);
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix add: shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.entries().size(); ++i) c.entries()[i] = a.entries()[i] + b.entries()[i];
    return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sub: shape mismatch");
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.entries().size(); ++i) c.entries()[i] = a.entries()[i] - b.entries()[i];
    return c;
}

ComplexMatrix operator*(cdouble s, const ComplexMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.entries().size(); ++i) c.entries()[i] = s * a.entries()[i];
    return c;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    require(a.square(), "hermitian_part: matrix not square");
    ComplexMatrix h(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j)
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double hermitian_deviation(const ComplexMatrix& a) {
    if (!a.square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.rows(); ++j)
            d = std::max(d, std::abs(a(i, j) - std::conj(a(j, i))));
    return d;
}

double symmetry_deviation(const ComplexMatrix& a) {
    if (!a.square()) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.rows(); ++j)
            d = std::max(d, std::abs(a(i, j) - a(j, i)));
    return d;
}

ComplexMatrix cmat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("cmat_mul: inner dimensions differ");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix cmat_inv(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionMismatch("cmat_inv: matrix not square");
    const std::size_t n = a.rows();
    const double threshold = kPivotRel * max_abs(a);

    ComplexMatrix lu = a;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(lu(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best <= threshold) throw SingularMatrix("cmat_inv: pivot below threshold");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
            std::swap(perm[col], perm[pivot]);
        }
        const cdouble d = lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const cdouble f = lu(r, col) / d;
            lu(r, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }

    // Solve lu * X = P for each unit column.
    ComplexMatrix inv(n, n);
    std::vector<cdouble> x(n);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) x[i] = (perm[i] == col) ? 1.0 : 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            cdouble s = x[i];
            for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            cdouble s = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
            x[ii] = s / lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
    }
    return inv;
}

HermitianEig cmat_herm_eig(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionMismatch("cmat_herm_eig: matrix not square");
    if (hermitian_deviation(a) > kHermTol) {
        throw NotHermitian("cmat_herm_eig: input deviates from Hermitian beyond 1e-10");
    }
    const std::size_t n = a.rows();
    ComplexMatrix w = hermitian_part(a);  // scrub the sub-tolerance asymmetry
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(max_abs(w), 1e-300);
    const double stop = 1e-15 * scale;
    const std::size_t max_sweeps = 64;

    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(w(p, q)));
        if (off <= stop) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = w(p, q);
                const double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;
                const cdouble phase = apq / r;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble sp = s * phase;   // J(p,q) entry
                // w <- J^H w J with J = I except J(p,p)=c, J(p,q)=s*phase,
                // J(q,p)=-s*conj(phase), J(q,q)=c
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble wkp = w(k, p);
                    const cdouble wkq = w(k, q);
                    w(k, p) = c * wkp - std::conj(sp) * wkq;
                    w(k, q) = sp * wkp + c * wkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble wpk = w(p, k);
                    const cdouble wqk = w(q, k);
                    w(p, k) = c * wpk - sp * wqk;
                    w(q, k) = std::conj(sp) * wpk + c * wqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble vkp = v(k, p);
                    const cdouble vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                w(p, p) = cdouble(w(p, p).real(), 0.0);
                w(q, q) = cdouble(w(q, q).real(), 0.0);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return w(i, i).real() > w(j, j).real();
    });

    HermitianEig out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = w(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
    }
    return out;
}

ComplexMatrix cmat_sqrt_direct(const ComplexMatrix& a) {
    const HermitianEig eig = cmat_herm_eig(a);
    const double lmax = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    for (double lambda : eig.eigenvalues) {
        if (lambda <= kPdRel * lmax || lmax <= 0.0) {
            throw NotPositiveDefinite("cmat_sqrt_direct: eigenvalue at or below 1e-12 * lambda_max");
        }
    }
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    // V diag(sqrt(l)) V^H without forming intermediates
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cdouble s{};
            for (std::size_t k = 0; k < n; ++k) {
                s += eig.eigenvectors(i, k) * std::sqrt(eig.eigenvalues[k]) *
                     std::conj(eig.eigenvectors(j, k));
            }
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
        out(i, i) = cdouble(out(i, i).real(), 0.0);
    }
    return out;
}

cdouble cmat_trace(const ComplexMatrix& a) {
    if (!a.square()) throw DimensionMismatch("cmat_trace: matrix not square");
    cdouble t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

namespace {

// One-sided Jacobi on columns; requires rows >= cols.
ComplexSvd svd_tall(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();
    ComplexMatrix u = a;  // columns become U * Sigma
    ComplexMatrix v = ComplexMatrix::identity(m);

    const double eps = 1e-15;
    for (std::size_t sweep = 0; sweep < 64; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                double alpha = 0.0, beta = 0.0;
                cdouble gamma{};
                for (std::size_t k = 0; k < n; ++k) {
                    alpha += std::norm(u(k, i));
                    beta += std::norm(u(k, j));
                    gamma += std::conj(u(k, i)) * u(k, j);
                }
                const double g = std::abs(gamma);
                if (g <= eps * std::sqrt(alpha * beta) || g == 0.0) continue;
                rotated = true;
                const cdouble phase = gamma / g;
                const double tau = (beta - alpha) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble su = s * phase;
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble ui = u(k, i);
                    const cdouble uj = u(k, j);
                    u(k, i) = c * ui - std::conj(su) * uj;
                    u(k, j) = su * ui + c * uj;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const cdouble vi = v(k, i);
                    const cdouble vj = v(k, j);
                    v(k, i) = c * vi - std::conj(su) * vj;
                    v(k, j) = su * vi + c * vj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(m);
    for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::norm(u(k, j));
        sigma[j] = std::sqrt(s);
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

    ComplexSvd out;
    out.sigma.resize(m);
    out.v = ComplexMatrix(m, m);
    ComplexMatrix uf(n, n);
    const double tiny = 1e-306;
    std::size_t placed = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = sigma[src];
        for (std::size_t k = 0; k < m; ++k) out.v(k, j) = v(k, src);
        if (sigma[src] > tiny) {
            for (std::size_t k = 0; k < n; ++k) uf(k, j) = u(k, src) / sigma[src];
            placed = j + 1;
        }
    }
    // Complete U to a full unitary basis for zero (or absent) singular values.
    for (std::size_t j = placed; j < n; ++j) {
        for (std::size_t seed = 0; seed < n; ++seed) {
            std::vector<cdouble> cand(n);
            cand[(j + seed) % n] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t prev = 0; prev < j; ++prev) {
                    cdouble proj{};
                    for (std::size_t k = 0; k < n; ++k) proj += std::conj(uf(k, prev)) * cand[k];
                    for (std::size_t k = 0; k < n; ++k) cand[k] -= proj * uf(k, prev);
                }
            }
            double nrm = 0.0;
            for (const auto& z : cand) nrm += std::norm(z);
            nrm = std::sqrt(nrm);
            if (nrm > 1e-3) {
                for (std::size_t k = 0; k < n; ++k) uf(k, j) = cand[k] / nrm;
                break;
            }
        }
    }
    out.u = std::move(uf);
    return out;
}

}  // namespace

ComplexSvd cmat_svd(const ComplexMatrix& a) {
    if (a.rows() >= a.cols()) return svd_tall(a);
    ComplexSvd t = svd_tall(conj_transpose(a));
    ComplexSvd out;
    out.u = std::move(t.v);
    out.v = std::move(t.u);
    out.sigma = std::move(t.sigma);
    return out;
}

ComplexMatrix matrix_sqrt_newton(const ComplexMatrix& a, double tol, std::size_t max_iterations) {
    if (!a.square()) throw DimensionMismatch("matrix_sqrt_newton: matrix not square");
    ComplexMatrix x = a;
    ComplexMatrix best = x;
    double r = frobenius_norm(cmat_mul(x, x) - a);
    double best_r = r;
    for (std::size_t k = 0; k < max_iterations && r >= tol; ++k) {
        x = 0.5 * (x + cmat_mul(a, cmat_inv(x)));
        r = frobenius_norm(cmat_mul(x, x) - a);
        if (r < best_r) {
            best_r = r;
            best = x;
        } else if (r > 10.0 * best_r) {
            break;  // past the rounding floor; the iteration only degrades now
        }
    }
    return best;
}

MatrixSqrtPair matrix_sqrt_db(const ComplexMatrix& a, double tol, std::size_t max_iterations) {
    if (!a.square()) throw DimensionMismatch("matrix_sqrt_db: matrix not square");
    MatrixSqrtPair pair{a, ComplexMatrix::identity(a.rows())};
    MatrixSqrtPair best = pair;
    double r = frobenius_norm(cmat_mul(pair.sqrt, pair.sqrt) - a);
    double best_r = r;
    for (std::size_t k = 0; k < max_iterations && r >= tol; ++k) {
        ComplexMatrix yinv = cmat_inv(pair.inv_sqrt);
        ComplexMatrix xinv = cmat_inv(pair.sqrt);
        pair.sqrt = 0.5 * (pair.sqrt + yinv);
        pair.inv_sqrt = 0.5 * (pair.inv_sqrt + xinv);
        r = frobenius_norm(cmat_mul(pair.sqrt, pair.sqrt) - a);
        if (r < best_r) {
            best_r = r;
            best = pair;
        } else if (r > 10.0 * best_r) {
            break;
        }
    }
    return best;
}

}  // namespace tsqrt
