#pragma once

// Coupling/field parameters of the two-qubit XYZ Hamiltonian with a z-axis
// antisymmetric (DM) exchange term, plus the named model presets used by the
// closed-form concurrence registry and by the CLI.

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "spindm/errors.hpp"

namespace spindm {

struct ModelParams {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
    double b_homog = 0.0;   // homogeneous field B
    double b_inhomog = 0.0; // inhomogeneous field b
    double d = 0.0;         // DM coupling D
    double k_boltz = 1.0;
    double hbar = 1.0;

    double j_plus() const { return 0.5 * (jx + jy); }
    double j_minus() const { return 0.5 * (jx - jy); }
    double mu() const { return std::hypot(b_homog, j_minus()); }
    double nu() const {
        return std::sqrt(b_inhomog * b_inhomog + j_plus() * j_plus() + d * d);
    }

    /// Anisotropy jz/j; only meaningful for jx == jy == j != 0.
    double anisotropy() const {
        if (std::abs(jx - jy) > 1e-14 || jx == 0.0)
            throw Error("anisotropy: requires jx == jy != 0");
        return jz / jx;
    }

    bool finite() const {
        for (double v : {jx, jy, jz, b_homog, b_inhomog, d, k_boltz, hbar})
            if (!std::isfinite(v)) return false;
        return true;
    }
};

enum class ModelTag {
    pure_dm,
    ising,
    ising_dm,
    nuclear_spin_ising_dm,
    xy,
    xy_dm,
    xx,
    xx_dm,
    transverse_ising_dm,
    xxx,
    xxx_dm,
    xxz,
    xxz_dm,
    xxz_dmb,
    xyz,
    xyz_dm,
};

inline const std::vector<std::pair<ModelTag, std::string>>& model_tag_names() {
    static const std::vector<std::pair<ModelTag, std::string>> names = {
        {ModelTag::pure_dm, "pure_dm"},
        {ModelTag::ising, "ising"},
        {ModelTag::ising_dm, "ising_dm"},
        {ModelTag::nuclear_spin_ising_dm, "nuclear_spin_ising_dm"},
        {ModelTag::xy, "xy"},
        {ModelTag::xy_dm, "xy_dm"},
        {ModelTag::xx, "xx"},
        {ModelTag::xx_dm, "xx_dm"},
        {ModelTag::transverse_ising_dm, "transverse_ising_dm"},
        {ModelTag::xxx, "xxx"},
        {ModelTag::xxx_dm, "xxx_dm"},
        {ModelTag::xxz, "xxz"},
        {ModelTag::xxz_dm, "xxz_dm"},
        {ModelTag::xxz_dmb, "xxz_dmb"},
        {ModelTag::xyz, "xyz"},
        {ModelTag::xyz_dm, "xyz_dm"},
    };
    return names;
}

inline std::string to_string(ModelTag tag) {
    for (const auto& [t, n] : model_tag_names())
        if (t == tag) return n;
    return "?";
}

inline ModelTag model_tag_from_string(std::string_view name) {
    for (const auto& [t, n] : model_tag_names())
        if (n == name) return t;
    throw Error("unknown model tag: " + std::string(name));
}

/// True iff p satisfies the preset's constraint list. Constraints are
/// zero-equalities and coupling-equalities checked to an absolute tolerance.
inline bool check_preset(const ModelParams& p, ModelTag tag, double tol = 1e-14) {
    const auto zero = [&](double v) { return std::abs(v) <= tol; };
    const auto equal = [&](double u, double v) { return std::abs(u - v) <= tol; };

    switch (tag) {
    case ModelTag::pure_dm:
        return zero(p.jx) && zero(p.jy) && zero(p.jz) && zero(p.b_homog) && zero(p.b_inhomog);
    case ModelTag::ising:
        return zero(p.jx) && zero(p.jy) && zero(p.b_homog) && zero(p.b_inhomog) && zero(p.d);
    case ModelTag::ising_dm:
        return zero(p.jx) && zero(p.jy) && zero(p.b_homog) && zero(p.b_inhomog);
    case ModelTag::nuclear_spin_ising_dm:
        return zero(p.jx) && zero(p.jy);
    case ModelTag::xy:
        return zero(p.jz) && zero(p.b_homog) && zero(p.b_inhomog) && zero(p.d);
    case ModelTag::xy_dm:
        return zero(p.jz) && zero(p.b_homog) && zero(p.b_inhomog);
    case ModelTag::xx:
        return equal(p.jx, p.jy) && zero(p.jz) && zero(p.b_homog) && zero(p.b_inhomog) && zero(p.d);
    case ModelTag::xx_dm:
        return equal(p.jx, p.jy) && zero(p.jz) && zero(p.b_homog) && zero(p.b_inhomog);
    case ModelTag::transverse_ising_dm:
        return zero(p.jy) && zero(p.jz) && zero(p.b_inhomog);
    case ModelTag::xxx:
        return equal(p.jx, p.jy) && equal(p.jy, p.jz) && zero(p.b_homog) && zero(p.b_inhomog) &&
               zero(p.d);
    case ModelTag::xxx_dm:
        return equal(p.jx, p.jy) && equal(p.jy, p.jz) && zero(p.b_homog) && zero(p.b_inhomog);
    case ModelTag::xxz:
        return equal(p.jx, p.jy) && zero(p.b_homog) && zero(p.b_inhomog) && zero(p.d);
    case ModelTag::xxz_dm:
        return equal(p.jx, p.jy) && zero(p.b_homog) && zero(p.b_inhomog);
    case ModelTag::xxz_dmb:
        return equal(p.jx, p.jy) && zero(p.b_inhomog);
    case ModelTag::xyz:
        return zero(p.b_homog) && zero(p.b_inhomog) && zero(p.d);
    case ModelTag::xyz_dm:
        return zero(p.b_homog) && zero(p.b_inhomog);
    }
    return false;
}

inline void require_preset(const ModelParams& p, ModelTag tag) {
    if (!check_preset(p, tag))
        throw PresetMismatchError("parameters do not satisfy preset " + to_string(tag));
}

// Convenience constructors for the named presets.
namespace presets {

inline ModelParams pure_dm(double d) {
    ModelParams p;
    p.d = d;
    return p;
}

inline ModelParams ising(double jz) {
    ModelParams p;
    p.jz = jz;
    return p;
}

inline ModelParams ising_dm(double jz, double d) {
    ModelParams p;
    p.jz = jz;
    p.d = d;
    return p;
}

inline ModelParams nuclear_spin_ising_dm(double jz, double b_homog, double b_inhomog, double d) {
    ModelParams p;
    p.jz = jz;
    p.b_homog = b_homog;
    p.b_inhomog = b_inhomog;
    p.d = d;
    return p;
}

inline ModelParams xy(double jx, double jy) {
    ModelParams p;
    p.jx = jx;
    p.jy = jy;
    return p;
}

inline ModelParams xy_dm(double jx, double jy, double d) {
    ModelParams p = xy(jx, jy);
    p.d = d;
    return p;
}

inline ModelParams xx(double j) { return xy(j, j); }

inline ModelParams xx_dm(double j, double d) { return xy_dm(j, j, d); }

/// Transverse-field Ising chain piece; `j` is the effective coupling that
/// enters all closed forms (half the bare jx, which is why jx = 2j here).
inline ModelParams transverse_ising_dm(double j, double b_homog, double d) {
    ModelParams p;
    p.jx = 2.0 * j;
    p.b_homog = b_homog;
    p.d = d;
    return p;
}

inline ModelParams xxx(double j) {
    ModelParams p;
    p.jx = p.jy = p.jz = j;
    return p;
}

inline ModelParams xxx_dm(double j, double d) {
    ModelParams p = xxx(j);
    p.d = d;
    return p;
}

inline ModelParams xxz(double j, double jz) {
    ModelParams p;
    p.jx = p.jy = j;
    p.jz = jz;
    return p;
}

inline ModelParams xxz_dm(double j, double jz, double d) {
    ModelParams p = xxz(j, jz);
    p.d = d;
    return p;
}

inline ModelParams xxz_dmb(double j, double jz, double b_homog, double d) {
    ModelParams p = xxz_dm(j, jz, d);
    p.b_homog = b_homog;
    return p;
}

inline ModelParams xyz(double jx, double jy, double jz) {
    ModelParams p;
    p.jx = jx;
    p.jy = jy;
    p.jz = jz;
    return p;
}

inline ModelParams xyz_dm(double jx, double jy, double jz, double d) {
    ModelParams p = xyz(jx, jy, jz);
    p.d = d;
    return p;
}

} // namespace presets
} // namespace spindm
