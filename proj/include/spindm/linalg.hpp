#pragma once

// Minimal complex linear-algebra kernel for the fixed 2x2 / 4x4 matrices of
// the two-qubit problem: Kronecker products, Pauli operators, a dense
// Hermitian eigensolver (cyclic complex Jacobi) and spectral matrix
// functions. Everything is a plain value type; all functions are pure.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include "spindm/errors.hpp"

namespace spindm {

using cplx = std::complex<double>;

inline constexpr cplx iu{0.0, 1.0}; // imaginary unit

template <int N>
struct Mat {
    std::array<cplx, N * N> a{};

    cplx& operator()(int r, int c) { return a[r * N + c]; }
    const cplx& operator()(int r, int c) const { return a[r * N + c]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r;
        for (int i = 0; i < N * N; ++i) r.a[i] = x.a[i] + y.a[i];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r;
        for (int i = 0; i < N * N; ++i) r.a[i] = x.a[i] - y.a[i];
        return r;
    }
    friend Mat operator*(cplx s, const Mat& x) {
        Mat r;
        for (int i = 0; i < N * N; ++i) r.a[i] = s * x.a[i];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const cplx xik = x(i, k);
                if (xik == cplx{}) continue;
                for (int j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;
using Vec4 = std::array<cplx, 4>;

template <int N>
Mat<N> adjoint(const Mat<N>& m) {
    Mat<N> r;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

template <int N>
cplx trace(const Mat<N>& m) {
    cplx t{};
    for (int i = 0; i < N; ++i) t += m(i, i);
    return t;
}

/// Max absolute entry; used as the matrix norm for every tolerance here.
template <int N>
double max_abs(const Mat<N>& m) {
    double r = 0.0;
    for (const auto& z : m.a) r = std::max(r, std::abs(z));
    return r;
}

inline double max_abs(const Vec4& v) {
    double r = 0.0;
    for (const auto& z : v) r = std::max(r, std::abs(z));
    return r;
}

template <int N>
bool all_finite(const Mat<N>& m) {
    for (const auto& z : m.a)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

template <int N>
Mat<N> hermitize(const Mat<N>& m) {
    Mat<N> r;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return r;
}

inline Vec4 mat_vec(const Mat4& m, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline cplx dot(const Vec4& x, const Vec4& y) {
    cplx s{};
    for (int i = 0; i < 4; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline double norm(const Vec4& v) { return std::sqrt(std::real(dot(v, v))); }

/// |v><v| projector.
inline Mat4 outer(const Vec4& v) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = v[i] * std::conj(v[j]);
    return r;
}

// Pauli matrices.
inline Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline Mat2 pauli_y() {
    Mat2 m;
    m(0, 1) = -iu;
    m(1, 0) = iu;
    return m;
}
inline Mat2 pauli_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

/// Kronecker product; qubit 1 is the left factor, so the basis order is
/// |00>, |01>, |10>, |11>.
inline Mat4 kron(const Mat2& x, const Mat2& y) {
    Mat4 r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) r(2 * a + b, 2 * c + d) = x(a, c) * y(b, d);
    return r;
}

struct HermEig4 {
    std::array<double, 4> values; // ascending
    Mat4 vectors;                 // orthonormal eigenvectors as columns

    Vec4 vector(int k) const {
        return {vectors(0, k), vectors(1, k), vectors(2, k), vectors(3, k)};
    }
};

inline void require_hermitian(const Mat4& m, const char* who) {
    const double tol = std::max(1e-12 * max_abs(m), 1e-14);
    if (max_abs(m - adjoint(m)) > tol)
        throw NotHermitianError(std::string(who) + ": matrix is not Hermitian");
}

/// Dense Hermitian eigensolver, cyclic complex Jacobi rotations.
/// Deterministic sweep order; eigenvalues ascending with a stable sort, so
/// degenerate subspaces come out in a reproducible index order.
inline HermEig4 herm_eig(const Mat4& input) {
    require_hermitian(input, "herm_eig");

    Mat4 w = hermitize(input);
    Mat4 v = Mat4::identity();
    const double scale = std::max(1.0, max_abs(w));
    const double tol = 1e-16 * scale;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(w(p, q)));
        if (off <= tol) break;

        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = w(p, q);
                const double mag = std::abs(apq);
                if (mag <= tol * 1e-2) continue;

                const double app = std::real(w(p, p));
                const double aqq = std::real(w(q, q));
                const cplx u = apq / mag; // phase of the pivot
                const double tau = (aqq - app) / (2.0 * mag);
                // Smaller-magnitude root of t^2 - 2 tau t - 1 = 0, the
                // zeroing condition for the rotation convention below.
                const double t =
                    -(tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Unitary plane rotation J with J(p,p)=c, J(p,q)=-s*u,
                // J(q,p)=s*conj(u), J(q,q)=c; w <- J^H w J zeroes w(p,q).
                Mat4 j = Mat4::identity();
                j(p, p) = c;
                j(p, q) = -s * u;
                j(q, p) = s * std::conj(u);
                j(q, q) = c;
                w = adjoint(j) * w * j;
                v = v * j;
                w(p, q) = 0.0;
                w(q, p) = 0.0;
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag{};
    for (int i = 0; i < 4; ++i) diag[i] = std::real(w(i, i));
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

    HermEig4 out;
    for (int k = 0; k < 4; ++k) {
        out.values[k] = diag[order[k]];
        for (int r = 0; r < 4; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

/// V f(diag) V^H for a Hermitian argument. Throws NonFiniteResultError when
/// f overflows on an eigenvalue (signals that the caller needs the shifted
/// formulation, e.g. e^{-(E-E_min)/kT} instead of e^{-E/kT}).
inline Mat4 spectral_fn(const Mat4& m, const std::function<double(double)>& f) {
    const HermEig4 eig = herm_eig(m);
    Mat4 r;
    for (int k = 0; k < 4; ++k) {
        const double fk = f(eig.values[k]);
        if (!std::isfinite(fk))
            throw NonFiniteResultError("spectral_fn: f(eigenvalue) is not finite");
        const Vec4 vk = eig.vector(k);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) += fk * vk[i] * std::conj(vk[j]);
    }
    return hermitize(r);
}

/// sinh(x)/x with a Taylor fallback near zero.
inline double sinhc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

/// sin(x)/x with a Taylor fallback near zero.
inline double sinc(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// count evenly spaced values over [lo, hi], endpoints included.
inline std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return g;
}

} // namespace spindm
