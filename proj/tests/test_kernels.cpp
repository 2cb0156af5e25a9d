#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "tsqrt/complex_matrix.hpp"
#include "tsqrt/errors.hpp"

using namespace tsqrt;
using test::random_cmatrix;
using test::random_hermitian;
using test::random_hpd;

TEST_CASE("cmat_mul identities and oracle") {
    ComplexMatrix a = random_cmatrix(3, 3, 11);
    ComplexMatrix id = ComplexMatrix::identity(3);
    ComplexMatrix ai = cmat_mul(a, id);
    CHECK(frobenius_norm(ai - a) == doctest::Approx(0.0).epsilon(1e-15));

    ComplexMatrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    ComplexMatrix sq = cmat_mul(swap, swap);
    CHECK(frobenius_norm(sq - ComplexMatrix::identity(2)) == 0.0);

    // naive triple loop oracle
    ComplexMatrix b = random_cmatrix(3, 3, 12);
    ComplexMatrix c = cmat_mul(a, b);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            cdouble s{};
            for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
            CHECK(std::abs(c(i, j) - s) == 0.0);
        }

    CHECK_THROWS_AS(cmat_mul(random_cmatrix(2, 3, 1), random_cmatrix(2, 2, 2)),
                    DimensionMismatch);
}

TEST_CASE("cmat_inv basic and residual property") {
    ComplexMatrix id = ComplexMatrix::identity(4);
    CHECK(frobenius_norm(cmat_inv(id) - id) < 1e-14);

    ComplexMatrix d(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 4.0;
    ComplexMatrix dinv = cmat_inv(d);
    CHECK(dinv(0, 0).real() == doctest::Approx(0.5));
    CHECK(dinv(1, 1).real() == doctest::Approx(0.25));

    ComplexMatrix a = random_cmatrix(4, 4, 21);
    ComplexMatrix r = cmat_mul(a, cmat_inv(a)) - ComplexMatrix::identity(4);
    CHECK(frobenius_norm(r) < 1e-10);
}

TEST_CASE("cmat_inv residual scales with condition number") {
    for (double kappa : {1e2, 1e4, 1e6}) {
        ComplexMatrix a = random_hpd(4, 77, 1.0, kappa);
        ComplexMatrix r = cmat_mul(a, cmat_inv(a)) - ComplexMatrix::identity(4);
        CHECK(frobenius_norm(r) <= 1e-10 * kappa);
    }
}

TEST_CASE("cmat_inv singular pivot") {
    ComplexMatrix z(3, 3);
    z(0, 0) = 1.0;
    z(1, 1) = 1.0;  // third row/col zero
    CHECK_THROWS_AS(cmat_inv(z), SingularMatrix);
}

TEST_CASE("cmat_herm_eig diagonal, ordering, reconstruction") {
    ComplexMatrix d(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    HermitianEig e = cmat_herm_eig(d);
    CHECK(e.eigenvalues[0] == doctest::Approx(3.0));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0));
    CHECK(std::abs(e.eigenvectors(0, 0)) == doctest::Approx(1.0));

    ComplexMatrix a = random_hermitian(5, 31);
    HermitianEig ea = cmat_herm_eig(a);
    for (std::size_t i = 1; i < 5; ++i) CHECK(ea.eigenvalues[i - 1] >= ea.eigenvalues[i]);
    ComplexMatrix recon(5, 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            cdouble s{};
            for (std::size_t k = 0; k < 5; ++k)
                s += ea.eigenvectors(i, k) * ea.eigenvalues[k] * std::conj(ea.eigenvectors(j, k));
            recon(i, j) = s;
        }
    CHECK(frobenius_norm(recon - a) < 1e-10);
    ComplexMatrix vhv = cmat_mul(conj_transpose(ea.eigenvectors), ea.eigenvectors);
    CHECK(frobenius_norm(vhv - ComplexMatrix::identity(5)) < 1e-10);

    CHECK_THROWS_AS(cmat_herm_eig(random_cmatrix(3, 3, 5)), NotHermitian);
}

TEST_CASE("cmat_herm_eig on the toy covariance") {
    // Eigenvalues of this symmetric matrix as they actually are; the bundled
    // reference text prints different values (see the reproduce harness).
    ComplexMatrix c(3, 3);
    const double vals[9] = {1.25, 0.75, 0.75, 0.75, 1.25, 0.25, 0.75, 0.25, 1.25};
    for (std::size_t i = 0; i < 9; ++i) c(i / 3, i % 3) = vals[i];
    HermitianEig e = cmat_herm_eig(c);
    CHECK(e.eigenvalues[0] == doctest::Approx(2.4430004682).epsilon(1e-9));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(e.eigenvalues[2] == doctest::Approx(0.3069995318).epsilon(1e-9));
}

TEST_CASE("cmat_sqrt_direct") {
    ComplexMatrix id = ComplexMatrix::identity(3);
    CHECK(frobenius_norm(cmat_sqrt_direct(id) - id) < 1e-14);

    ComplexMatrix d(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    ComplexMatrix s = cmat_sqrt_direct(d);
    CHECK(s(0, 0).real() == doctest::Approx(2.0));
    CHECK(s(1, 1).real() == doctest::Approx(3.0));

    ComplexMatrix a = random_hpd(4, 99);
    ComplexMatrix r = cmat_sqrt_direct(a);
    CHECK(frobenius_norm(cmat_mul(r, r) - a) < 1e-10);
    CHECK(hermitian_deviation(r) < 1e-12);

    ComplexMatrix neg(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -1.0;
    CHECK_THROWS_AS(cmat_sqrt_direct(neg), NotPositiveDefinite);
}

TEST_CASE("cmat_sqrt_direct squares back on the dc covariance slice") {
    ComplexMatrix a(3, 3);
    const double vals[9] = {6, 2, 0, 2, 5, 2, 0, 2, 4};
    for (std::size_t i = 0; i < 9; ++i) a(i / 3, i % 3) = vals[i];
    const ComplexMatrix s = cmat_sqrt_direct(a);
    CHECK(frobenius_norm(cmat_mul(s, s) - a) < 1e-10);
}

TEST_CASE("cmat_trace") {
    CHECK(cmat_trace(ComplexMatrix::identity(3)).real() == doctest::Approx(3.0));
    ComplexMatrix a = random_cmatrix(4, 4, 3);
    cdouble s{};
    for (std::size_t i = 0; i < 4; ++i) s += a(i, i);
    CHECK(std::abs(cmat_trace(a) - s) == 0.0);
    CHECK_THROWS_AS(cmat_trace(random_cmatrix(2, 3, 4)), DimensionMismatch);
}

TEST_CASE("cmat_svd reconstruction and orthogonality") {
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{4, 4}, {5, 3}, {3, 5}}) {
        ComplexMatrix a = random_cmatrix(n, m, 7 * n + m);
        ComplexSvd svd = cmat_svd(a);
        for (std::size_t i = 1; i < svd.sigma.size(); ++i)
            CHECK(svd.sigma[i - 1] >= svd.sigma[i]);
        ComplexMatrix us(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < svd.sigma.size(); ++j)
                us(i, j) = svd.u(i, j) * svd.sigma[j];
        ComplexMatrix recon = cmat_mul(us, conj_transpose(svd.v));
        CHECK(frobenius_norm(recon - a) < 1e-10 * std::max(1.0, frobenius_norm(a)));
        CHECK(frobenius_norm(cmat_mul(conj_transpose(svd.u), svd.u) -
                             ComplexMatrix::identity(n)) < 1e-10);
        CHECK(frobenius_norm(cmat_mul(conj_transpose(svd.v), svd.v) -
                             ComplexMatrix::identity(m)) < 1e-10);
    }
}

TEST_CASE("matrix sqrt iterations agree with the direct root") {
    ComplexMatrix a = random_hpd(4, 55, 0.5, 20.0);
    ComplexMatrix direct = cmat_sqrt_direct(a);
    ComplexMatrix newton = matrix_sqrt_newton(a, 1e-13, 60);
    MatrixSqrtPair db = matrix_sqrt_db(a, 1e-13, 60);
    CHECK(frobenius_norm(newton - direct) < 1e-10);
    CHECK(frobenius_norm(db.sqrt - direct) < 1e-10);
    CHECK(frobenius_norm(cmat_mul(db.inv_sqrt, db.sqrt) - ComplexMatrix::identity(4)) < 1e-11);
}
