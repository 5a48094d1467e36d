#include <doctest.h>

#include <cmath>
#include <random>

#include "spindm/linalg.hpp"

using namespace spindm;

namespace {

Mat4 random_hermitian(std::mt19937& rng, double scale = 10.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    Mat4 m;
    for (int i = 0; i < 4; ++i) {
        m(i, i) = u(rng);
        for (int j = i + 1; j < 4; ++j) {
            m(i, j) = cplx{u(rng), u(rng)};
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

Mat4 reconstruct(const HermEig4& eig) {
    Mat4 m;
    for (int k = 0; k < 4; ++k) {
        const Vec4 v = eig.vector(k);
        m = m + eig.values[k] * outer(v);
    }
    return m;
}

} // namespace

TEST_CASE("kron basics") {
    const Mat4 zz = kron(pauli_z(), pauli_z());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double expected = (i == j) ? ((i == 0 || i == 3) ? 1.0 : -1.0) : 0.0;
            CHECK(std::abs(zz(i, j) - expected) == 0.0);
        }

    const Mat4 id = kron(Mat2::identity(), Mat2::identity());
    CHECK(max_abs(id - Mat4::identity()) == 0.0);
}

TEST_CASE("kron DM combination has the two imaginary entries") {
    // sx.sy - sy.sx expanded by hand: 2i at (|01>,|10>), -2i at (|10>,|01>).
    const Mat4 dm = kron(pauli_x(), pauli_y()) - kron(pauli_y(), pauli_x());
    CHECK(std::abs(dm(1, 2) - cplx{0.0, 2.0}) < 1e-15);
    CHECK(std::abs(dm(2, 1) - cplx{0.0, -2.0}) < 1e-15);
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!((i == 1 && j == 2) || (i == 2 && j == 1))) off += std::abs(dm(i, j));
    CHECK(off == 0.0);
}

TEST_CASE("kron is bilinear") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        Mat2 a, b, c;
        for (int i = 0; i < 4; ++i) {
            a.a[i] = cplx{u(rng), u(rng)};
            b.a[i] = cplx{u(rng), u(rng)};
            c.a[i] = cplx{u(rng), u(rng)};
        }
        const cplx alpha{u(rng), u(rng)};
        Mat2 lin;
        for (int i = 0; i < 4; ++i) lin.a[i] = alpha * a.a[i] + b.a[i];
        const Mat4 lhs = kron(lin, c);
        const Mat4 rhs = alpha * kron(a, c) + kron(b, c);
        CHECK(max_abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("herm_eig on a diagonal permutation") {
    Mat4 m;
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    m(3, 3) = 0.0;
    const HermEig4 eig = herm_eig(m);
    CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(1.0));
    CHECK(eig.values[2] == doctest::Approx(2.0));
    CHECK(eig.values[3] == doctest::Approx(3.0));
    // vectors are the permuted standard basis
    CHECK(std::abs(eig.vectors(3, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(1, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(2, 2)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.vectors(0, 3)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig on the pure DM coupling matrix") {
    // D = 1 block: entries +i / -i on (|01>,|10>); spectrum (-1, 0, 0, 1).
    Mat4 m;
    m(1, 2) = cplx{0.0, 1.0};
    m(2, 1) = cplx{0.0, -1.0};
    const HermEig4 eig = herm_eig(m);
    CHECK(eig.values[0] == doctest::Approx(-1.0));
    CHECK(eig.values[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eig.values[2] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(eig.values[3] == doctest::Approx(1.0));
}

TEST_CASE("herm_eig reconstruction and orthonormality on random input") {
    std::mt19937 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat4 m = random_hermitian(rng);
        const HermEig4 eig = herm_eig(m);
        const double scale = std::max(1.0, max_abs(m));

        CHECK(max_abs(reconstruct(eig) - m) <= 1e-11 * scale);

        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const cplx g = dot(eig.vector(i), eig.vector(j));
                CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-12);
            }

        for (int k = 0; k < 4; ++k) {
            const Vec4 v = eig.vector(k);
            Vec4 residual = mat_vec(m, v);
            for (int i = 0; i < 4; ++i) residual[i] -= eig.values[k] * v[i];
            CHECK(max_abs(residual) <= 1e-12 * scale);
        }

        CHECK(std::is_sorted(eig.values.begin(), eig.values.end()));
    }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
    Mat4 m;
    m(0, 1) = 1.0; // missing conjugate partner
    CHECK_THROWS_AS(herm_eig(m), NotHermitianError);
}

TEST_CASE("spectral_fn basics") {
    std::mt19937 rng(7);
    const Mat4 m = random_hermitian(rng, 3.0);

    SUBCASE("identity function returns the matrix") {
        CHECK(max_abs(spectral_fn(m, [](double x) { return x; }) - m) < 1e-12);
    }
    SUBCASE("exp of the zero matrix is the identity") {
        Mat4 zero;
        CHECK(max_abs(spectral_fn(zero, [](double x) { return std::exp(x); }) -
                      Mat4::identity()) < 1e-14);
    }
    SUBCASE("exp on diag(ln2, 0, 0, 0)") {
        Mat4 d;
        d(0, 0) = std::log(2.0);
        const Mat4 e = spectral_fn(d, [](double x) { return std::exp(x); });
        CHECK(std::real(e(0, 0)) == doctest::Approx(2.0));
        CHECK(std::real(e(1, 1)) == doctest::Approx(1.0));
        CHECK(std::real(e(2, 2)) == doctest::Approx(1.0));
        CHECK(std::real(e(3, 3)) == doctest::Approx(1.0));
    }
    SUBCASE("exp(A) * exp(-A) = I") {
        for (int trial = 0; trial < 50; ++trial) {
            const Mat4 a = random_hermitian(rng, 2.0);
            const Mat4 ep = spectral_fn(a, [](double x) { return std::exp(x); });
            const Mat4 em = spectral_fn(a, [](double x) { return std::exp(-x); });
            CHECK(max_abs(ep * em - Mat4::identity()) <= 1e-10);
        }
    }
    SUBCASE("overflowing map raises NonFiniteResult") {
        Mat4 d;
        d(0, 0) = 1.0;
        CHECK_THROWS_AS(spectral_fn(d, [](double x) { return std::exp(x * 1e6); }),
                        NonFiniteResultError);
    }
}
