#pragma once

// The two-qubit XYZ+DM+field Hamiltonian
//
//   H = 1/2 [ jx sx.sx + jy sy.sy + jz sz.sz
//             + (B+b) sz.1 + (B-b) 1.sz + D (sx.sy - sy.sx) ]
//
// and its closed-form spectrum. In the |00>,|01>,|10>,|11> basis H is
// block diagonal: an outer block on {|00>,|11>} with splitting
// mu = sqrt(B^2 + J-^2) and an inner block on {|01>,|10>} with splitting
// nu = sqrt(b^2 + J+^2 + D^2), where J+- = (jx +- jy)/2.

#include <array>
#include <cmath>
#include <vector>

#include "spindm/linalg.hpp"
#include "spindm/params.hpp"

namespace spindm {

// Basis indices.
inline constexpr int k00 = 0;
inline constexpr int k01 = 1;
inline constexpr int k10 = 2;
inline constexpr int k11 = 3;

inline Mat4 build_hamiltonian(const ModelParams& p) {
    const double jp = p.j_plus();
    const double jm = p.j_minus();
    Mat4 h;
    h(k00, k00) = 0.5 * p.jz + p.b_homog;
    h(k01, k01) = -0.5 * p.jz + p.b_inhomog;
    h(k10, k10) = -0.5 * p.jz - p.b_inhomog;
    h(k11, k11) = 0.5 * p.jz - p.b_homog;
    h(k00, k11) = jm;
    h(k11, k00) = jm;
    h(k01, k10) = cplx{jp, p.d};
    h(k10, k01) = cplx{jp, -p.d};
    return h;
}

struct EigenLevel {
    double energy;
    Vec4 state; // unit norm
};

struct Spectrum {
    // Levels in closed-form label order:
    //   E1 = jz/2 - mu, E2 = jz/2 + mu   (outer block)
    //   E3 = -jz/2 - nu, E4 = -jz/2 + nu (inner block)
    std::array<EigenLevel, 4> levels;
    // Partition of {0,1,2,3} into groups of equal energy (1e-12 gap).
    std::vector<std::vector<int>> degeneracy;
};

namespace detail {

/// Eigenvector of the Hermitian 2x2 block [[a, c],[conj(c), d]] for
/// eigenvalue e. Two algebraic branches, (c, e-a) and (e-d, conj(c)); the
/// larger-norm one is returned so the choice stays continuous through the
/// points where one normalization degenerates.
inline std::array<cplx, 2> block_eigvec(double a, cplx c, double d, double e, bool* degenerate) {
    const std::array<cplx, 2> cand1{c, cplx{e - a, 0.0}};
    const std::array<cplx, 2> cand2{cplx{e - d, 0.0}, std::conj(c)};
    const double n1 = std::norm(cand1[0]) + std::norm(cand1[1]);
    const double n2 = std::norm(cand2[0]) + std::norm(cand2[1]);
    const double scale = std::max({std::abs(a), std::abs(d), std::abs(c), 1.0});
    *degenerate = std::max(n1, n2) <= (1e-13 * scale) * (1e-13 * scale);
    if (*degenerate) return {cplx{1.0, 0.0}, cplx{0.0, 0.0}};
    const auto& v = (n1 >= n2) ? cand1 : cand2;
    const double n = std::sqrt((n1 >= n2) ? n1 : n2);
    return {v[0] / n, v[1] / n};
}

} // namespace detail

/// Closed-form spectrum. Eigenvectors follow the analytic normalizations
/// where nonsingular; at the fully degenerate block limits (mu = 0, nu = 0)
/// they fall back to the basis pairs {|00>,|11>} and {|01>,|10>}.
inline Spectrum analytic_spectrum(const ModelParams& p) {
    const double jm = p.j_minus();
    const double jp = p.j_plus();
    const double mu = p.mu();
    const double nu = p.nu();

    Spectrum s;
    s.levels[0].energy = 0.5 * p.jz - mu;
    s.levels[1].energy = 0.5 * p.jz + mu;
    s.levels[2].energy = -0.5 * p.jz - nu;
    s.levels[3].energy = -0.5 * p.jz + nu;

    // Outer block on {|00>,|11>}.
    {
        const double a = 0.5 * p.jz + p.b_homog;
        const double d = 0.5 * p.jz - p.b_homog;
        const cplx c{jm, 0.0};
        for (int k : {0, 1}) {
            bool degenerate = false;
            auto v = detail::block_eigvec(a, c, d, s.levels[k].energy, &degenerate);
            Vec4 full{};
            if (degenerate) {
                full[k == 0 ? k00 : k11] = 1.0;
            } else {
                full[k00] = v[0];
                full[k11] = v[1];
            }
            s.levels[k].state = full;
        }
    }

    // Inner block on {|01>,|10>}.
    {
        const double a = -0.5 * p.jz + p.b_inhomog;
        const double d = -0.5 * p.jz - p.b_inhomog;
        const cplx c{jp, p.d};
        for (int k : {2, 3}) {
            bool degenerate = false;
            auto v = detail::block_eigvec(a, c, d, s.levels[k].energy, &degenerate);
            Vec4 full{};
            if (degenerate) {
                full[k == 2 ? k01 : k10] = 1.0;
            } else {
                full[k01] = v[0];
                full[k10] = v[1];
            }
            s.levels[k].state = full;
        }
    }

    // Degeneracy partition with 1e-12 gap tolerance (transitive closure).
    std::array<int, 4> group{-1, -1, -1, -1};
    int ng = 0;
    for (int i = 0; i < 4; ++i) {
        if (group[i] >= 0) continue;
        group[i] = ng;
        for (int j = i + 1; j < 4; ++j) {
            if (group[j] >= 0) continue;
            for (int m = 0; m < 4; ++m) {
                if (group[m] == ng &&
                    std::abs(s.levels[j].energy - s.levels[m].energy) <= 1e-12) {
                    group[j] = ng;
                    break;
                }
            }
        }
        ++ng;
    }
    s.degeneracy.assign(ng, {});
    for (int i = 0; i < 4; ++i) s.degeneracy[group[i]].push_back(i);

    return s;
}

} // namespace spindm
