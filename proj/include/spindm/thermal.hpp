#pragma once

// Thermal (Gibbs) state of the two-qubit Hamiltonian, by two independent
// routes: the closed-form matrix elements of e^{-H/kT}, and numeric spectral
// exponentiation. Every exponential is computed relative to the ground
// energy so the code stays finite down to kT ~ 1e-3 where the raw
// cosh/sinh forms would overflow.

#include <cmath>

#include "spindm/hamiltonian.hpp"
#include "spindm/linalg.hpp"
#include "spindm/params.hpp"

namespace spindm {

struct Temperature {
    double t = 1.0;
    bool is_zero = false;

    static Temperature of(double value) {
        if (!(value > 0.0)) throw Error("Temperature::of: requires t > 0");
        return Temperature{value, false};
    }
    static Temperature zero() { return Temperature{0.0, true}; }
};

using DensityMatrix = Mat4;

namespace detail {

/// Boltzmann weights of the four closed-form levels, shifted by the ground
/// energy, plus the sinh(beta*x)/x block factors needed by the closed-form
/// density matrix and lambda expressions.
struct ShiftedWeights {
    double beta;             // 1/(k T)
    std::array<double, 4> e; // energies in label order E1..E4
    double e_min;
    std::array<double, 4> g; // exp(-beta (E_i - E_min)), in (0, 1]
    double zs;               // sum of g; Z = exp(-beta E_min) * zs
    double q_out;            // exp(beta (E_min - jz/2))  = shifted outer prefactor
    double q_in;             // exp(beta (E_min + jz/2))  = shifted inner prefactor
    double s_out;            // q_out * sinh(beta mu)
    double s_in;             // q_in  * sinh(beta nu)
    double s_out_over_mu;    // q_out * sinh(beta mu)/mu, finite as mu -> 0
    double s_in_over_nu;     // q_in  * sinh(beta nu)/nu, finite as nu -> 0
};

inline ShiftedWeights shifted_weights(const ModelParams& p, double t) {
    if (!(t > 0.0)) throw ZeroTemperatureError("thermal state requires T > 0");
    const double beta = 1.0 / (p.k_boltz * t);
    const double mu = p.mu();
    const double nu = p.nu();

    ShiftedWeights w;
    w.beta = beta;
    w.e = {0.5 * p.jz - mu, 0.5 * p.jz + mu, -0.5 * p.jz - nu, -0.5 * p.jz + nu};
    w.e_min = std::min({w.e[0], w.e[1], w.e[2], w.e[3]});
    w.zs = 0.0;
    for (int i = 0; i < 4; ++i) {
        w.g[i] = std::exp(-beta * (w.e[i] - w.e_min));
        w.zs += w.g[i];
    }

    w.q_out = std::exp(beta * (w.e_min - 0.5 * p.jz));
    w.q_in = std::exp(beta * (w.e_min + 0.5 * p.jz));
    w.s_out = 0.5 * (w.g[0] - w.g[1]);
    w.s_in = 0.5 * (w.g[2] - w.g[3]);
    w.s_out_over_mu =
        (beta * mu < 1e-4) ? w.q_out * beta * sinhc(beta * mu) : w.s_out / mu;
    w.s_in_over_nu = (beta * nu < 1e-4) ? w.q_in * beta * sinhc(beta * nu) : w.s_in / nu;
    return w;
}

} // namespace detail

/// log Z; always finite.
inline double log_partition_function(const ModelParams& p, Temperature t) {
    if (t.is_zero) throw ZeroTemperatureError("partition function requires T > 0");
    const auto w = detail::shifted_weights(p, t.t);
    return -w.beta * w.e_min + std::log(w.zs);
}

/// Z = 2 [ e^{-jz/2kT} cosh(mu/kT) + e^{jz/2kT} cosh(nu/kT) ]. May overflow
/// to +inf for extreme beta*|E|; use log_partition_function there.
inline double partition_function(const ModelParams& p, Temperature t) {
    return std::exp(log_partition_function(p, t));
}

/// Closed-form thermal density matrix. Nonzero pattern: the two 2x2 blocks
/// {|00>,|11>} and {|01>,|10>}.
inline DensityMatrix density_matrix_analytic(const ModelParams& p, Temperature t) {
    if (t.is_zero) throw ZeroTemperatureError("density_matrix_analytic requires T > 0");
    const auto w = detail::shifted_weights(p, t.t);

    const double c_out = 0.5 * (w.g[0] + w.g[1]);
    const double c_in = 0.5 * (w.g[2] + w.g[3]);
    const double so = w.s_out_over_mu; // times B or J- below
    const double si = w.s_in_over_nu;  // times b or (J+ + iD) below

    Mat4 r;
    r(k00, k00) = (c_out - p.b_homog * so) / w.zs;
    r(k11, k11) = (c_out + p.b_homog * so) / w.zs;
    r(k00, k11) = -p.j_minus() * so / w.zs;
    r(k11, k00) = r(k00, k11);
    r(k01, k01) = (c_in - p.b_inhomog * si) / w.zs;
    r(k10, k10) = (c_in + p.b_inhomog * si) / w.zs;
    r(k01, k10) = -cplx{p.j_plus(), p.d} * si / w.zs;
    r(k10, k01) = std::conj(r(k01, k10));
    return r;
}

/// Independent numeric route: spectral exponentiation of -(H - E_min)/kT,
/// normalized by its trace.
inline DensityMatrix density_matrix_numeric(const ModelParams& p, Temperature t) {
    if (t.is_zero) throw ZeroTemperatureError("density_matrix_numeric requires T > 0");
    const double beta = 1.0 / (p.k_boltz * t.t);
    const Mat4 h = build_hamiltonian(p);
    const double e_min = herm_eig(h).values[0];
    Mat4 m = spectral_fn(h, [&](double e) { return std::exp(-beta * (e - e_min)); });
    const double z = std::real(trace(m));
    return (1.0 / z) * m;
}

/// T = 0 state: uniform mixture over the (possibly degenerate) ground
/// subspace; equals the T -> 0+ limit of the thermal state.
inline DensityMatrix ground_state_mixture(const ModelParams& p) {
    const Mat4 h = build_hamiltonian(p);
    const HermEig4 eig = herm_eig(h);
    const double gap_tol = 1e-10;
    Mat4 r;
    int g = 0;
    for (int k = 0; k < 4; ++k) {
        if (eig.values[k] - eig.values[0] > gap_tol) break;
        r = r + outer(eig.vector(k));
        ++g;
    }
    return (1.0 / g) * r;
}

/// Validation for the DensityMatrix invariants (Hermitian, unit trace, PSD).
inline void require_density_matrix(const Mat4& rho) {
    if (max_abs(rho - adjoint(rho)) > 1e-12)
        throw InvalidStateError("density matrix is not Hermitian");
    if (std::abs(trace(rho) - 1.0) > 1e-12)
        throw InvalidStateError("density matrix trace != 1");
    const auto eig = herm_eig(rho);
    if (eig.values[0] < -1e-12)
        throw InvalidStateError("density matrix has a negative eigenvalue");
}

} // namespace spindm
