#pragma once

// Wootters concurrence of a two-qubit state:
//
//   C = max(l1 - l2 - l3 - l4, 0),  l_i the descending square roots of the
//   eigenvalues of rho * (sy.sy) rho^* (sy.sy).
//
// Two routes: the numeric definition (via sqrt(rho) and the Hermitian
// eigensolver) and the closed-form lambdas of the block-structured thermal
// state.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "spindm/linalg.hpp"
#include "spindm/params.hpp"
#include "spindm/thermal.hpp"

namespace spindm {

enum class Branch {
    none,
    afm,     // antiferromagnetic sign branch
    fm,      // ferromagnetic sign branch
    under,   // under-critical DM coupling
    over,    // over-critical DM coupling
    fm_under,
    fm_over,
};

inline std::string to_string(Branch b) {
    switch (b) {
    case Branch::none: return "none";
    case Branch::afm: return "afm";
    case Branch::fm: return "fm";
    case Branch::under: return "under";
    case Branch::over: return "over";
    case Branch::fm_under: return "fm_under";
    case Branch::fm_over: return "fm_over";
    }
    return "?";
}

struct ConcurrenceSource {
    enum class Kind { numeric, general_closed_form, model_formula } kind;
    ModelTag tag = ModelTag::pure_dm; // meaningful only for model_formula
    Branch branch = Branch::none;
};

struct ConcurrenceReport {
    std::array<double, 4> lambdas; // descending, each >= 0
    double value;                  // max(l1 - l2 - l3 - l4, 0)
    ConcurrenceSource source;
};

/// sy.sy, the spin-flip conjugation matrix (real antidiagonal -1,1,1,-1).
inline Mat4 spin_flip_matrix() {
    Mat4 f;
    f(k00, k11) = -1.0;
    f(k01, k10) = 1.0;
    f(k10, k01) = 1.0;
    f(k11, k00) = -1.0;
    return f;
}

namespace detail {

/// True when rho is supported on the {|00>,|11>} + {|01>,|10>} checkerboard,
/// the form every thermal state of the block Hamiltonian takes.
inline bool has_block_pattern(const Mat4& rho, double tol) {
    static constexpr bool allowed[4][4] = {
        {true, false, false, true},
        {false, true, true, false},
        {false, true, true, false},
        {true, false, false, true},
    };
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!allowed[i][j] && std::abs(rho(i, j)) > tol) return false;
    return true;
}

/// Wootters lambdas of one 2x2 block that the spin flip maps onto itself
/// (up to sign): for the sub-density-matrix [[a, b],[conj(b), d]] they are
/// sqrt(a d) +- |b|, which is exact and cancellation-free.
inline std::pair<double, double> block_lambdas(double a, double d, double b_abs) {
    const double root = std::sqrt(std::max(a, 0.0) * std::max(d, 0.0));
    return {root + b_abs, std::abs(root - b_abs)};
}

} // namespace detail

/// Numeric Wootters concurrence. Block-patterned states use the stable 2x2
/// reduction of rho*rho_tilde; general states go through the Hermitian
/// route eig(sqrt(rho) rho_tilde sqrt(rho)), whose near-zero lambdas carry
/// an absolute error of order sqrt(machine epsilon).
inline ConcurrenceReport concurrence_numeric(const DensityMatrix& rho_in) {
    try {
        require_density_matrix(rho_in);
    } catch (const InvalidStateError&) {
        throw;
    } catch (const Error& e) {
        throw InvalidStateError(e.what());
    }
    const Mat4 rho = hermitize(rho_in);

    ConcurrenceReport rep;
    rep.source = {ConcurrenceSource::Kind::numeric};

    if (detail::has_block_pattern(rho, 1e-13)) {
        const auto outer_pair = detail::block_lambdas(
            std::real(rho(k00, k00)), std::real(rho(k11, k11)), std::abs(rho(k00, k11)));
        const auto inner_pair = detail::block_lambdas(
            std::real(rho(k01, k01)), std::real(rho(k10, k10)), std::abs(rho(k01, k10)));
        rep.lambdas = {outer_pair.first, outer_pair.second, inner_pair.first, inner_pair.second};
    } else {
        const Mat4 sqrt_rho =
            spectral_fn(rho, [](double x) { return std::sqrt(std::max(x, 0.0)); });
        const Mat4 f = spin_flip_matrix();
        Mat4 rho_conj;
        for (int i = 0; i < 16; ++i) rho_conj.a[i] = std::conj(rho.a[i]);
        const Mat4 rho_tilde = f * rho_conj * f;

        const Mat4 m = hermitize(sqrt_rho * rho_tilde * sqrt_rho);
        const HermEig4 eig = herm_eig(m);
        for (int k = 0; k < 4; ++k)
            rep.lambdas[k] = std::sqrt(std::max(eig.values[3 - k], 0.0));
    }

    std::sort(rep.lambdas.begin(), rep.lambdas.end(), std::greater<>());
    rep.value = std::max(rep.lambdas[0] - rep.lambdas[1] - rep.lambdas[2] - rep.lambdas[3], 0.0);
    return rep;
}

/// Concurrence of a pure state, 2 |a00 a11 - a01 a10|.
inline double concurrence_pure(const Vec4& psi) {
    return 2.0 * std::abs(psi[k00] * psi[k11] - psi[k01] * psi[k10]);
}

/// Closed-form lambdas of the thermal state, in label order
///   l1,2 = (e^{-jz/2kT}/Z) | sqrt(1 + (J-/mu)^2 sinh^2(mu/kT)) -+ (J-/mu) sinh(mu/kT) |
///   l3,4 = (e^{+jz/2kT}/Z) | sqrt(1 + (R/nu)^2 sinh^2(nu/kT)) -+ (R/nu) sinh(nu/kT) |
/// with R = sqrt(J+^2 + D^2). Computed in ground-shifted form, so valid for
/// small kT as well.
inline std::array<double, 4> lambdas_general(const ModelParams& p, double kT) {
    if (!(kT > 0.0)) throw ZeroTemperatureError("lambdas_general requires kT > 0");
    const auto w = detail::shifted_weights(p, kT / p.k_boltz);

    const double jm = p.j_minus();
    const double r_in = std::hypot(p.j_plus(), p.d);

    // Outer pair: hypot(q, (J-) * s/mu) -+ (J-) * s/mu, all ground-shifted.
    const double t_out = jm * w.s_out_over_mu;
    const double s_hat_out = std::hypot(w.q_out, t_out);
    // Inner pair likewise with R = |J+ + iD|.
    const double t_in = r_in * w.s_in_over_nu;
    const double s_hat_in = std::hypot(w.q_in, t_in);

    return {
        std::abs(s_hat_out - t_out) / w.zs,
        std::abs(s_hat_out + t_out) / w.zs,
        std::abs(s_hat_in - t_in) / w.zs,
        std::abs(s_hat_in + t_in) / w.zs,
    };
}

/// Concurrence from the general closed-form lambdas.
inline ConcurrenceReport concurrence_general(const ModelParams& p, double kT) {
    auto l = lambdas_general(p, kT);
    std::sort(l.begin(), l.end(), std::greater<>());
    ConcurrenceReport rep;
    rep.lambdas = l;
    rep.value = std::max(l[0] - l[1] - l[2] - l[3], 0.0);
    rep.source = {ConcurrenceSource::Kind::general_closed_form};
    return rep;
}

} // namespace spindm
