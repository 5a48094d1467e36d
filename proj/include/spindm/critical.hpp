#pragma once

// Critical parameters at which the concurrence switches on or off: closed
// forms per model, a generic bisection solver on the numeric concurrence,
// T = 0 step profiles, and a scan that locates the nonanalytic points of
// the ground-state concurrence (quantum phase transitions).

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "spindm/concurrence.hpp"
#include "spindm/models.hpp"
#include "spindm/params.hpp"
#include "spindm/thermal.hpp"

namespace spindm {

enum class CriticalKind {
    pure_dm_tc,             // T_c = |D| / (k asinh 1)
    xx_dm_tc,               // T_c = sqrt(J^2 + D^2) / (k asinh 1)
    xxx_tc,                 // T_c = 2J / (k ln 3), J > 0
    ising_dm_afm_dc,        // D_c(T) = kT asinh(e^{-jz/kT}), jz > 0
    ising_dm_fm_dc,         // D_c(T) = kT asinh(e^{|jz|/kT}), jz < 0
    xxx_dm_dc,              // D_c(T) = sqrt((kT asinh e^{-J/kT})^2 - J^2)
    xxz_dm_dc,              // D_c = sqrt(jz^2 - J^2) at T = 0
    transverse_ising_dm_dc, // lambda-crossing D_c(B,T), see models.hpp
    transverse_ising_dm_onset, // C > 0 onset in D; grows with T, unlike the crossing
    nuclear_spin_dc,        // implicit: (D/nu) sinh(nu/kT) = e^{-jz/kT}
    xyz_fm_dm_dc,           // sqrt(D_c^2 + J+^2) = |jz| + |J-| at T = 0
    xxz_dmb_bc,             // B_c = sqrt(D^2 + J^2) + jz at T = 0
};

inline const std::vector<std::pair<CriticalKind, std::string>>& critical_kind_names() {
    static const std::vector<std::pair<CriticalKind, std::string>> names = {
        {CriticalKind::pure_dm_tc, "pure_dm_tc"},
        {CriticalKind::xx_dm_tc, "xx_dm_tc"},
        {CriticalKind::xxx_tc, "xxx_tc"},
        {CriticalKind::ising_dm_afm_dc, "ising_dm_afm_dc"},
        {CriticalKind::ising_dm_fm_dc, "ising_dm_fm_dc"},
        {CriticalKind::xxx_dm_dc, "xxx_dm_dc"},
        {CriticalKind::xxz_dm_dc, "xxz_dm_dc"},
        {CriticalKind::transverse_ising_dm_dc, "transverse_ising_dm_dc"},
        {CriticalKind::transverse_ising_dm_onset, "transverse_ising_dm_onset"},
        {CriticalKind::nuclear_spin_dc, "nuclear_spin_dc"},
        {CriticalKind::xyz_fm_dm_dc, "xyz_fm_dm_dc"},
        {CriticalKind::xxz_dmb_bc, "xxz_dmb_bc"},
    };
    return names;
}

inline std::string to_string(CriticalKind k) {
    for (const auto& [kk, n] : critical_kind_names())
        if (kk == k) return n;
    return "?";
}

inline CriticalKind critical_kind_from_string(const std::string& name) {
    for (const auto& [kk, n] : critical_kind_names())
        if (n == name) return kk;
    throw Error("unknown critical kind: " + name);
}

namespace detail {

/// Root of the increasing function g on [0, inf): g(x) = target. Doubles the
/// bracket, then bisects to ~1e-13 relative.
inline double solve_increasing(const std::function<double(double)>& g, double target,
                               double hint) {
    double lo = 0.0;
    double hi = std::max(hint, 1e-6);
    int grow = 0;
    while (g(hi) < target) {
        hi *= 2.0;
        if (++grow > 200) throw NoRootError("no root: function stays below target");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < target)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-13 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Closed-form (or implicitly solved) critical value. Temperature-dependent
/// kinds read the temperature from `kT` (energy units, k folded in).
inline double critical_closed(CriticalKind kind, const ModelParams& p, double kT = 0.0) {
    const auto need_kt = [&] {
        if (!(kT > 0.0)) throw Error("critical_closed: this kind requires kT > 0");
    };
    const double asinh1 = std::asinh(1.0);

    switch (kind) {
    case CriticalKind::pure_dm_tc:
        return std::abs(p.d) / (p.k_boltz * asinh1);
    case CriticalKind::xx_dm_tc:
        return std::hypot(p.jx, p.d) / (p.k_boltz * asinh1);
    case CriticalKind::xxx_tc:
        if (!(p.jx > 0.0)) throw NoClosedFormError("xxx_tc: requires J > 0");
        return 2.0 * p.jx / (p.k_boltz * std::log(3.0));
    case CriticalKind::ising_dm_afm_dc: {
        need_kt();
        if (!(p.jz > 0.0)) throw NoClosedFormError("ising_dm_afm_dc: requires jz > 0");
        return kT * std::asinh(std::exp(-p.jz / kT));
    }
    case CriticalKind::ising_dm_fm_dc: {
        need_kt();
        if (!(p.jz < 0.0)) throw NoClosedFormError("ising_dm_fm_dc: requires jz < 0");
        // Onset of sinh(D/kT) > e^{|jz|/kT}; for large |jz|/kT this is
        // |jz| + kT ln 2 to exponential accuracy.
        const double y = std::abs(p.jz) / kT;
        if (y < 30.0) return kT * std::asinh(std::exp(y));
        return std::abs(p.jz) + kT * (std::log(2.0) + std::log1p(std::exp(-2.0 * y) / 4.0));
    }
    case CriticalKind::xxx_dm_dc: {
        need_kt();
        const double j = p.jx;
        double nu_c;
        const double y = -j / kT;
        if (y < 30.0) {
            nu_c = kT * std::asinh(std::exp(y));
        } else {
            nu_c = -j + kT * std::log(2.0); // asinh(e^y) ~ y + ln 2
        }
        const double d2 = nu_c * nu_c - j * j;
        return d2 > 0.0 ? std::sqrt(d2) : 0.0; // entangled from D = 0 otherwise
    }
    case CriticalKind::xxz_dm_dc:
        if (!(p.jz < 0.0 && std::abs(p.jz) > std::abs(p.jx)))
            throw NoClosedFormError("xxz_dm_dc: requires jz < 0, |jz| > |J|");
        return std::sqrt(p.jz * p.jz - p.jx * p.jx);
    case CriticalKind::transverse_ising_dm_dc: {
        need_kt();
        return detail::transverse_ising_dc(std::abs(p.j_plus()), p.b_homog, kT);
    }
    case CriticalKind::transverse_ising_dm_onset: {
        need_kt();
        return detail::transverse_ising_onset(std::abs(p.j_plus()), p.b_homog, kT);
    }
    case CriticalKind::nuclear_spin_dc: {
        need_kt();
        const double beta = 1.0 / kT;
        const double target = std::exp(-p.jz * beta);
        const double b = std::abs(p.b_inhomog);
        auto g = [&](double x) {
            const double nu = std::hypot(x, b);
            return nu > 0.0 ? (x / nu) * std::sinh(beta * nu) : 0.0;
        };
        return detail::solve_increasing(g, target, std::max({std::abs(p.jz), b, kT}));
    }
    case CriticalKind::xyz_fm_dm_dc: {
        const double s = std::abs(p.jz) + std::abs(p.j_minus());
        const double jp = std::abs(p.j_plus());
        if (s < jp) throw NoClosedFormError("xyz_fm_dm_dc: |jz| + |J-| < |J+|");
        return std::sqrt(s * s - jp * jp);
    }
    case CriticalKind::xxz_dmb_bc:
        return std::hypot(p.jx, p.d) + p.jz;
    }
    throw NoClosedFormError("unsupported critical kind");
}

struct CriticalQuery {
    ModelParams params;   // fixed parameters
    char free = 'T';      // one of 'T' (kT), 'D', 'B'
    double lo = 0.0;
    double hi = 1.0;
    Temperature temp = Temperature::of(1.0); // used when free != 'T'
};

namespace detail {

inline double concurrence_at(const CriticalQuery& q, double x) {
    ModelParams p = q.params;
    Temperature t = q.temp;
    switch (q.free) {
    case 'T': t = Temperature::of(x); break; // temperature units, like the T_c closed forms
    case 'D': p.d = x; break;
    case 'B': p.b_homog = x; break;
    default: throw Error("critical_solve: free parameter must be T, D or B");
    }
    const DensityMatrix rho =
        t.is_zero ? ground_state_mixture(p) : density_matrix_numeric(p, t);
    return concurrence_numeric(rho).value;
}

} // namespace detail

/// Bisection on the entangled/unentangled status of the numeric concurrence
/// (threshold 1e-12). Endpoints must differ in status.
inline double critical_solve(const CriticalQuery& q) {
    if (!(q.lo < q.hi) || !std::isfinite(q.lo) || !std::isfinite(q.hi))
        throw BracketInvalidError("critical_solve: bracket must be finite with lo < hi");
    constexpr double eps = 1e-12;
    double lo = q.lo, hi = q.hi;
    const bool lo_on = detail::concurrence_at(q, lo) > eps;
    const bool hi_on = detail::concurrence_at(q, hi) > eps;
    if (lo_on == hi_on)
        throw BracketInvalidError("critical_solve: same status at both bracket endpoints");

    for (int it = 0; it < 60 && (hi - lo) > 1e-8; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool mid_on = detail::concurrence_at(q, mid) > eps;
        if (mid_on == lo_on)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Ground-state (T = 0) concurrence.
inline double zero_t_concurrence(const ModelParams& p) {
    return concurrence_numeric(ground_state_mixture(p)).value;
}

struct StepBreakpoint {
    double x;             // refined location of the discontinuity
    double left_value;    // C just below
    double boundary_value; // C at the breakpoint (degenerate ground mixture)
    double right_value;   // C just above
};

struct StepProfile {
    char free;
    std::vector<StepBreakpoint> breakpoints;
};

/// Scans zero_t_concurrence along a strictly increasing grid of one free
/// parameter ('D' or 'B'). Two detectors feed the breakpoint list:
/// value jumps larger than 0.1 between adjacent points, and ground-level
/// crossings between the two Hamiltonian blocks (which catch single-point
/// dips such as the 1 / 0 / 1 profiles, invisible to a value grid).
/// Boundary degeneracy needs the breakpoint located to near machine
/// precision, so refinement goes well past the documented 1e-6.
inline StepProfile qpt_scan(const ModelParams& p, char free, const std::vector<double>& grid) {
    if (grid.size() < 3) throw Error("qpt_scan: grid needs at least 3 points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw Error("qpt_scan: grid must be strictly increasing");

    auto params_at = [&](double x) {
        ModelParams q = p;
        if (free == 'D')
            q.d = x;
        else if (free == 'B')
            q.b_homog = x;
        else
            throw Error("qpt_scan: free parameter must be D or B");
        return q;
    };
    auto value_at = [&](double x) { return zero_t_concurrence(params_at(x)); };
    // Ground energies of the {|00>,|11>} and {|01>,|10>} blocks; their
    // difference changes sign exactly at a ground-state crossing.
    auto block_gap = [&](double x) {
        const ModelParams q = params_at(x);
        const double e_outer = 0.5 * q.jz - q.mu();
        const double e_inner = -0.5 * q.jz - q.nu();
        return e_outer - e_inner;
    };

    StepProfile profile;
    profile.free = free;
    const double span = grid.back() - grid.front();

    auto push_breakpoint = [&](double x) {
        for (const auto& bp : profile.breakpoints)
            if (std::abs(x - bp.x) <= 1e-8 * std::max(1.0, span)) return;
        StepBreakpoint bp;
        bp.x = x;
        bp.left_value = value_at(x - 1e-5 * span);
        bp.right_value = value_at(x + 1e-5 * span);
        bp.boundary_value = value_at(x);
        profile.breakpoints.push_back(bp);
    };

    std::vector<double> vals(grid.size()), gaps(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) {
        vals[i] = value_at(grid[i]);
        gaps[i] = block_gap(grid[i]);
    }

    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (std::abs(vals[i + 1] - vals[i]) <= 0.1) continue;
        double lo = grid[i], hi = grid[i + 1];
        double f_lo = vals[i], f_hi = vals[i + 1];
        while (hi - lo > std::max(1e-13, 1e-15 * std::abs(hi))) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = value_at(mid);
            if (std::abs(f_mid - f_lo) >= std::abs(f_hi - f_mid)) {
                hi = mid;
                f_hi = f_mid;
            } else {
                lo = mid;
                f_lo = f_mid;
            }
        }
        push_breakpoint(0.5 * (lo + hi));
    }

    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(gaps[i] * gaps[i + 1] < 0.0)) continue;
        double lo = grid[i], hi = grid[i + 1];
        double g_lo = gaps[i];
        while (hi - lo > std::max(1e-13, 1e-15 * std::abs(hi))) {
            const double mid = 0.5 * (lo + hi);
            const double g_mid = block_gap(mid);
            if (g_mid == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((g_mid < 0.0) == (g_lo < 0.0)) {
                lo = mid;
                g_lo = g_mid;
            } else {
                hi = mid;
            }
        }
        push_breakpoint(0.5 * (lo + hi));
    }

    std::sort(profile.breakpoints.begin(), profile.breakpoints.end(),
              [](const StepBreakpoint& a, const StepBreakpoint& b) { return a.x < b.x; });
    return profile;
}

} // namespace spindm
