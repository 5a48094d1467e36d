#pragma once

// Test-side samplers: random parameter draws inside the validity region of
// each closed-form registry entry.

#include <random>
#include <stdexcept>
#include <string>

#include "spindm/models.hpp"

namespace spindm_test {

struct Draw {
    spindm::ModelParams p;
    double kT;
};

inline Draw sample_entry(const std::string& name, std::mt19937& rng) {
    using namespace spindm;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto u = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
    auto sgn = [&] { return u01(rng) < 0.5 ? -1.0 : 1.0; };

    Draw d;
    d.kT = u(0.05, 10.0);
    ModelParams& p = d.p;

    if (name == "pure_dm") {
        p = presets::pure_dm(sgn() * u(0.2, 5.0));
    } else if (name == "ising_dm/afm") {
        p = presets::ising_dm(u(0.1, 5.0), sgn() * u(0.0, 5.0));
    } else if (name == "ising_dm/fm") {
        p = presets::ising_dm(-u(0.1, 5.0), sgn() * u(0.0, 5.0));
    } else if (name == "nuclear_spin_ising_dm") {
        p = presets::nuclear_spin_ising_dm(sgn() * u(0.1, 3.0), u(-3.0, 3.0), u(-3.0, 3.0),
                                           u(-3.0, 3.0));
    } else if (name == "xy/afm") {
        p = presets::xy(u(0.1, 5.0), u(0.1, 5.0));
    } else if (name == "xy/fm") {
        p = presets::xy(-u(0.1, 5.0), -u(0.1, 5.0));
    } else if (name == "xy_dm") {
        const double s = sgn();
        p = presets::xy_dm(s * u(0.1, 5.0), s * u(0.1, 5.0), sgn() * u(0.0, 5.0));
    } else if (name == "xx_dm") {
        p = presets::xx_dm(sgn() * u(0.1, 5.0), sgn() * u(0.0, 5.0));
    } else if (name == "transverse_ising_dm/under" || name == "transverse_ising_dm/over") {
        const bool under = name.find("under") != std::string::npos;
        for (;;) {
            const double j = u(0.3, 2.0);
            const double b = u(0.1, 2.0);
            d.kT = u(0.1, 2.0);
            const double dc = detail::transverse_ising_dc(j, b, d.kT);
            if (under && dc < 1e-3) continue;
            const double dd = under ? u(0.05, 0.95) * dc : dc + u(0.05, 3.0);
            p = presets::transverse_ising_dm(j, b, dd);
            break;
        }
    } else if (name == "xxx_dm") {
        p = presets::xxx_dm(sgn() * u(0.1, 3.0), sgn() * u(0.0, 3.0));
    } else if (name == "xxz/afm") {
        const double j = u(0.1, 4.0);
        p = presets::xxz(j, u(-j + 0.05, 5.0));
    } else if (name == "xxz/fm") {
        const double j = -u(0.1, 4.0);
        p = presets::xxz(j, u(j + 0.05, 5.0));
    } else if (name == "xxz_dm") {
        const double jz = -u(0.5, 5.0);
        const double j = sgn() * u(0.0, std::abs(jz) - 0.1);
        const double dc = std::sqrt(jz * jz - j * j);
        p = presets::xxz_dm(j, jz, dc + u(0.05, 4.0));
    } else if (name == "xxz_dmb") {
        p = presets::xxz_dmb(sgn() * u(0.1, 3.0), u(-3.0, 3.0), u(-3.0, 3.0),
                             sgn() * u(0.0, 3.0));
    } else if (name == "xyz/afm") {
        p = presets::xyz(u(0.1, 4.0), u(0.1, 4.0), u(0.1, 4.0));
    } else if (name == "xyz/fm") {
        const double jx = -u(0.1, 3.0), jy = -u(0.1, 3.0);
        p = presets::xyz(jx, jy, -(std::max(std::abs(jx), std::abs(jy)) + u(0.0, 2.0)));
    } else if (name == "xyz_dm/afm") {
        p = presets::xyz_dm(u(0.1, 4.0), u(0.1, 4.0), u(0.1, 4.0), sgn() * u(0.0, 3.0));
    } else if (name == "xyz_dm/fm_under" || name == "xyz_dm/fm_over") {
        const double jx = -u(0.1, 3.0), jy = -u(0.1, 3.0);
        const double jz = -(std::max(std::abs(jx), std::abs(jy)) + u(0.05, 2.0));
        const double jp = 0.5 * std::abs(jx + jy);
        const double jm = 0.5 * std::abs(jx - jy);
        const double dc = std::sqrt((std::abs(jz) + jm) * (std::abs(jz) + jm) - jp * jp);
        const bool under = name.find("under") != std::string::npos;
        const double dd = under ? u(0.0, 0.95) * dc : dc + u(0.05, 3.0);
        p = presets::xyz_dm(jx, jy, jz, dd);
    } else {
        throw std::runtime_error("unknown registry entry: " + name);
    }
    return d;
}

} // namespace spindm_test
