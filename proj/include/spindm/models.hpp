#pragma once

// Registry of per-model closed-form concurrences. Each entry carries the
// validity predicate under which its formula provably equals the numeric
// concurrence of the thermal state; outside that region the entry refuses
// (BranchInvalidError) instead of extrapolating.
//
// Every formula is evaluated as a ratio of exponential sums with a common
// max-exponent shift, so entries stay finite at small kT where raw
// sinh/cosh would overflow.

#include <cmath>
#include <functional>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

#include "spindm/concurrence.hpp"
#include "spindm/params.hpp"

namespace spindm {
namespace detail {

struct ExpTerm {
    double coeff;
    double exponent;
};

/// (sum_i a_i e^{x_i}) / (sum_j b_j e^{y_j}) with all exponents shifted by
/// the common maximum.
inline double exp_ratio(std::initializer_list<ExpTerm> num, std::initializer_list<ExpTerm> den) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& t : num)
        if (t.coeff != 0.0) m = std::max(m, t.exponent);
    for (const auto& t : den)
        if (t.coeff != 0.0) m = std::max(m, t.exponent);
    double n = 0.0, d = 0.0;
    for (const auto& t : num) n += t.coeff * std::exp(t.exponent - m);
    for (const auto& t : den) d += t.coeff * std::exp(t.exponent - m);
    return n / d;
}

inline double clamp01(double c) { return std::max(c, 0.0); }

/// max{ (sinh(b x) - e^{-b z}) / (cosh(b x) + e^{-b z}), 0 } -- the shape
/// shared by the pure-DM, Ising+DM, XX+DM, XXX+DM and XXZ(+DM) formulas.
inline double heis_core(double x, double z, double beta) {
    return clamp01(exp_ratio({{0.5, beta * x}, {-0.5, -beta * x}, {-1.0, -beta * z}},
                             {{0.5, beta * x}, {0.5, -beta * x}, {1.0, -beta * z}}));
}

/// Critical DM coupling of the transverse-field Ising piece,
///   D_c(B,T) = sqrt( (kT ln[ sqrt(1 + (j/mu)^2 sinh^2(mu/kT)) +
///                            (j/mu) sinh(mu/kT) ])^2 - j^2 ),
/// mu = sqrt(B^2 + j^2); returns 0 when the log term stays below j (the
/// over-critical branch then applies from D = 0).
inline double transverse_ising_dc(double j, double b_field, double kT) {
    const double mu = std::hypot(b_field, j);
    const double x = mu / kT;
    double log_term; // ln(sqrt(1 + t^2) + t), t = (j/mu) sinh x
    if (x < 30.0) {
        const double t = (j / mu) * std::sinh(x);
        log_term = std::log(std::hypot(1.0, t) + t);
    } else {
        log_term = std::log(j / mu) + x + std::log1p(-std::exp(-2.0 * x));
    }
    const double rc = kT * log_term;
    return rc > j ? std::sqrt(rc * rc - j * j) : 0.0;
}

/// Onset of positive concurrence in D for the same model: solves
/// sinh(R/kT) = sqrt(1 + (j/mu)^2 sinh^2(mu/kT)) for R = sqrt(j^2 + D^2).
/// Grows with temperature, unlike the lambda-crossing value above.
inline double transverse_ising_onset(double j, double b_field, double kT) {
    const double mu = std::hypot(b_field, j);
    const double x = mu / kT;
    double asinh_s; // asinh(S), S = sqrt(1 + ((j/mu) sinh x)^2)
    if (x < 30.0) {
        const double s = std::hypot(1.0, (j / mu) * std::sinh(x));
        asinh_s = std::asinh(s);
    } else {
        // S ~ (j/mu) sinh x, asinh(S) ~ ln(2S)
        asinh_s = std::log(j / mu) + x + std::log1p(-std::exp(-2.0 * x));
    }
    const double r = kT * asinh_s;
    return r > j ? std::sqrt(r * r - j * j) : 0.0;
}

} // namespace detail

struct ModelFormulaEntry {
    ModelTag tag;
    Branch branch;
    std::string name; // "<tag>" or "<tag>/<branch>"
    std::string note;
    std::function<bool(const ModelParams&, double kT)> valid;
    std::function<double(const ModelParams&, double kT)> value; // clamped to [0, ..)
};

/// All closed-form concurrence entries, one per per-model formula.
inline const std::vector<ModelFormulaEntry>& model_registry() {
    using detail::clamp01;
    using detail::exp_ratio;
    using detail::heis_core;

    static const std::vector<ModelFormulaEntry> entries = [] {
        std::vector<ModelFormulaEntry> r;

        auto add = [&r](ModelTag tag, Branch branch, std::string note,
                        std::function<bool(const ModelParams&, double)> valid,
                        std::function<double(const ModelParams&, double)> value) {
            std::string name = to_string(tag);
            if (branch != Branch::none) name += "/" + to_string(branch);
            r.push_back({tag, branch, std::move(name), std::move(note), std::move(valid),
                         std::move(value)});
        };

        add(ModelTag::pure_dm, Branch::none,
            "C = (sinh(|D|/kT) - 1)/(cosh(|D|/kT) + 1)",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::pure_dm) && std::abs(p.d) > 0.0;
            },
            [](const ModelParams& p, double kT) {
                return heis_core(std::abs(p.d), 0.0, 1.0 / kT);
            });

        add(ModelTag::ising_dm, Branch::afm,
            "jz > 0: C = (sinh(|D|/kT) - e^{-jz/kT})/(cosh(|D|/kT) + e^{-jz/kT})",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::ising_dm) && p.jz > 0.0;
            },
            [](const ModelParams& p, double kT) {
                return heis_core(std::abs(p.d), p.jz, 1.0 / kT);
            });

        add(ModelTag::ising_dm, Branch::fm,
            "jz < 0: C = (sinh(|D|/kT) - e^{|jz|/kT})/(cosh(|D|/kT) + e^{|jz|/kT})",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::ising_dm) && p.jz < 0.0;
            },
            [](const ModelParams& p, double kT) {
                return heis_core(std::abs(p.d), p.jz, 1.0 / kT);
            });

        add(ModelTag::nuclear_spin_ising_dm, Branch::none,
            "C = ((|D|/nu) sinh(nu/kT) - e^{-jz/kT})/(cosh(nu/kT) + cosh(B/kT) e^{-jz/kT}), "
            "nu = sqrt(b^2 + D^2); the onset in D is B-independent",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::nuclear_spin_ising_dm);
            },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double nu = std::hypot(p.b_inhomog, p.d);
                const double rr = nu > 0.0 ? std::abs(p.d) / nu : 0.0;
                const double bb = std::abs(p.b_homog);
                return clamp01(exp_ratio({{0.5 * rr, beta * nu},
                                          {-0.5 * rr, -beta * nu},
                                          {-1.0, -beta * p.jz}},
                                         {{0.5, beta * nu},
                                          {0.5, -beta * nu},
                                          {0.5, beta * (bb - p.jz)},
                                          {0.5, beta * (-bb - p.jz)}}));
            });

        // XY without DM. The same expression covers both signs of the
        // couplings: the largest thermal weight always carries |J+|. (The
        // ferromagnetic entry is kept separate because the two cases are
        // stated separately, with distinct validity regions.)
        auto xy_value = [](const ModelParams& p, double kT) {
            const double beta = 1.0 / kT;
            const double jp = std::abs(p.j_plus());
            const double jm = std::abs(p.j_minus());
            return clamp01(exp_ratio({{0.5, beta * jp},
                                      {-0.5, -beta * jp},
                                      {-0.5, beta * jm},
                                      {-0.5, -beta * jm}},
                                     {{0.5, beta * jp},
                                      {0.5, -beta * jp},
                                      {0.5, beta * jm},
                                      {0.5, -beta * jm}}));
        };
        add(ModelTag::xy, Branch::afm,
            "jx,jy > 0: C = (sinh(J+/kT) - cosh(J-/kT))/(cosh(J-/kT) + cosh(J+/kT))",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::xy) && p.jx > 0.0 && p.jy > 0.0;
            },
            xy_value);
        add(ModelTag::xy, Branch::fm,
            "jx,jy < 0: C = (sinh(|J+|/kT) - cosh(J-/kT))/(cosh(|J-|/kT) + cosh(J+/kT))",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::xy) && p.jx < 0.0 && p.jy < 0.0;
            },
            xy_value);

        add(ModelTag::xy_dm, Branch::none,
            "C = (sinh(R/kT) - cosh(J-/kT))/(cosh(R/kT) + cosh(J-/kT)), R = sqrt(J+^2 + D^2)",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::xy_dm) && p.jx * p.jy >= 0.0;
            },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double rr = std::hypot(p.j_plus(), p.d);
                const double jm = std::abs(p.j_minus());
                return clamp01(exp_ratio({{0.5, beta * rr},
                                          {-0.5, -beta * rr},
                                          {-0.5, beta * jm},
                                          {-0.5, -beta * jm}},
                                         {{0.5, beta * rr},
                                          {0.5, -beta * rr},
                                          {0.5, beta * jm},
                                          {0.5, -beta * jm}}));
            });

        add(ModelTag::xx_dm, Branch::none,
            "C = (sinh(nu/kT) - 1)/(cosh(nu/kT) + 1), nu = sqrt(J^2 + D^2)",
            [](const ModelParams& p, double) { return check_preset(p, ModelTag::xx_dm); },
            [](const ModelParams& p, double kT) {
                return heis_core(std::hypot(p.jx, p.d), 0.0, 1.0 / kT);
            });

        // Transverse-field Ising + DM; j below is the effective coupling
        // J+ = J- = jx/2 that enters every closed form of this family.
        add(ModelTag::transverse_ising_dm, Branch::under,
            "D < D_c(B,T): C = max{((j/mu) sinh(mu/kT) - cosh(R/kT))/"
            "(cosh(mu/kT) + cosh(R/kT)), 0}",
            [](const ModelParams& p, double kT) {
                if (!check_preset(p, ModelTag::transverse_ising_dm)) return false;
                const double j = std::abs(p.j_plus());
                return std::abs(p.d) < detail::transverse_ising_dc(j, p.b_homog, kT);
            },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double j = std::abs(p.j_plus());
                const double mu = std::hypot(p.b_homog, j);
                const double rr = std::hypot(j, p.d);
                const double ratio = mu > 0.0 ? j / mu : 0.0;
                return clamp01(exp_ratio({{0.5 * ratio, beta * mu},
                                          {-0.5 * ratio, -beta * mu},
                                          {-0.5, beta * rr},
                                          {-0.5, -beta * rr}},
                                         {{0.5, beta * mu},
                                          {0.5, -beta * mu},
                                          {0.5, beta * rr},
                                          {0.5, -beta * rr}}));
            });

        add(ModelTag::transverse_ising_dm, Branch::over,
            "D > D_c(B,T): C = max{(sinh(R/kT) - sqrt(1 + (j/mu)^2 sinh^2(mu/kT)))/"
            "(cosh(mu/kT) + cosh(R/kT)), 0}",
            [](const ModelParams& p, double kT) {
                if (!check_preset(p, ModelTag::transverse_ising_dm)) return false;
                const double j = std::abs(p.j_plus());
                return std::abs(p.d) > detail::transverse_ising_dc(j, p.b_homog, kT);
            },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double j = std::abs(p.j_plus());
                const double mu = std::hypot(p.b_homog, j);
                const double rr = std::hypot(j, p.d);
                const double ratio = mu > 0.0 ? j / mu : 0.0;
                const double m = beta * std::max(mu, rr);
                const double sinh_mu_shifted =
                    0.5 * (std::exp(beta * mu - m) - std::exp(-beta * mu - m));
                const double s_shifted = std::hypot(std::exp(-m), ratio * sinh_mu_shifted);
                const double num =
                    0.5 * (std::exp(beta * rr - m) - std::exp(-beta * rr - m)) - s_shifted;
                const double den = 0.5 * (std::exp(beta * mu - m) + std::exp(-beta * mu - m)) +
                                   0.5 * (std::exp(beta * rr - m) + std::exp(-beta * rr - m));
                return clamp01(num / den);
            });

        add(ModelTag::xxx_dm, Branch::none,
            "C = (sinh(nu/kT) - e^{-J/kT})/(e^{-J/kT} + cosh(nu/kT)), nu = sqrt(J^2 + D^2); "
            "covers both coupling signs",
            [](const ModelParams& p, double) { return check_preset(p, ModelTag::xxx_dm); },
            [](const ModelParams& p, double kT) {
                return heis_core(std::hypot(p.jx, p.d), p.jx, 1.0 / kT);
            });

        auto xxz_value = [](const ModelParams& p, double kT) {
            return heis_core(std::abs(p.jx), p.jz, 1.0 / kT);
        };
        add(ModelTag::xxz, Branch::afm,
            "J > 0, jz/J > -1: C = (sinh(J/kT) - e^{-jz/kT})/(cosh(J/kT) + e^{-jz/kT})",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::xxz) && p.jx > 0.0 && p.jz / p.jx > -1.0;
            },
            xxz_value);
        add(ModelTag::xxz, Branch::fm,
            "J < 0, jz/J < 1: C = (sinh(|J|/kT) - e^{-jz/kT})/(cosh(|J|/kT) + e^{-jz/kT})",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::xxz) && p.jx < 0.0 && p.jz / p.jx < 1.0;
            },
            xxz_value);

        add(ModelTag::xxz_dm, Branch::none,
            "jz < 0, |jz| > |J|, D > sqrt(jz^2 - J^2): "
            "C = (sinh(nu/kT) - e^{|jz|/kT})/(cosh(nu/kT) + e^{|jz|/kT}), nu = sqrt(J^2 + D^2)",
            [](const ModelParams& p, double) {
                return check_preset(p, ModelTag::xxz_dm) && p.jz < 0.0 &&
                       std::abs(p.jz) > std::abs(p.jx) &&
                       std::abs(p.d) > std::sqrt(p.jz * p.jz - p.jx * p.jx);
            },
            [](const ModelParams& p, double kT) {
                return heis_core(std::hypot(p.jx, p.d), p.jz, 1.0 / kT);
            });

        add(ModelTag::xxz_dmb, Branch::none,
            "C = (sinh(nu/kT) - e^{-jz/kT})/(cosh(nu/kT) + e^{-jz/kT} cosh(B/kT)), "
            "nu = sqrt(J^2 + D^2)",
            [](const ModelParams& p, double) { return check_preset(p, ModelTag::xxz_dmb); },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double nu = std::hypot(p.jx, p.d);
                const double bb = std::abs(p.b_homog);
                return clamp01(exp_ratio({{0.5, beta * nu},
                                          {-0.5, -beta * nu},
                                          {-1.0, -beta * p.jz}},
                                         {{0.5, beta * nu},
                                          {0.5, -beta * nu},
                                          {0.5, beta * (bb - p.jz)},
                                          {0.5, beta * (-bb - p.jz)}}));
            });

        auto xyz_afm_valid = [](const ModelParams& p, ModelTag tag) {
            return check_preset(p, tag) && p.jx > 0.0 && p.jy > 0.0 && p.jz > 0.0;
        };
        auto xyz_fm_valid = [](const ModelParams& p, ModelTag tag) {
            return check_preset(p, tag) && p.jx < 0.0 && p.jy < 0.0 && p.jz < 0.0 &&
                   std::abs(p.jz) >= std::max(std::abs(p.jx), std::abs(p.jy));
        };

        // XYZ family; x is J+ (pure) or sqrt(J+^2 + D^2) (with DM).
        auto xyz_afm_value = [](double x, const ModelParams& p, double kT) {
            const double beta = 1.0 / kT;
            const double jm = std::abs(p.j_minus());
            return clamp01(exp_ratio({{0.5, beta * x},
                                      {-0.5, -beta * x},
                                      {-0.5, beta * (jm - p.jz)},
                                      {-0.5, beta * (-jm - p.jz)}},
                                     {{0.5, beta * x},
                                      {0.5, -beta * x},
                                      {0.5, beta * (jm - p.jz)},
                                      {0.5, beta * (-jm - p.jz)}}));
        };

        add(ModelTag::xyz, Branch::afm,
            "jz>jy>jx>0 regime: C = (sinh(J+/kT) - cosh(J-/kT) e^{-jz/kT})/"
            "(cosh(J+/kT) + cosh(J-/kT) e^{-jz/kT})",
            [xyz_afm_valid](const ModelParams& p, double) {
                return xyz_afm_valid(p, ModelTag::xyz);
            },
            [xyz_afm_value](const ModelParams& p, double kT) {
                return xyz_afm_value(p.j_plus(), p, kT);
            });

        add(ModelTag::xyz, Branch::fm,
            "jz<jy<jx<0 regime: C = (sinh(|J-|/kT) - cosh(|J+|/kT) e^{-|jz|/kT})/"
            "(cosh(|J-|/kT) + cosh(|J+|/kT) e^{-|jz|/kT})",
            [xyz_fm_valid](const ModelParams& p, double) { return xyz_fm_valid(p, ModelTag::xyz); },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double jm = std::abs(p.j_minus());
                const double jp = std::abs(p.j_plus());
                const double a = std::abs(p.jz);
                return clamp01(exp_ratio({{0.5, beta * jm},
                                          {-0.5, -beta * jm},
                                          {-0.5, beta * (jp - a)},
                                          {-0.5, beta * (-jp - a)}},
                                         {{0.5, beta * jm},
                                          {0.5, -beta * jm},
                                          {0.5, beta * (jp - a)},
                                          {0.5, beta * (-jp - a)}}));
            });

        add(ModelTag::xyz_dm, Branch::afm,
            "C = (sinh(nu/kT) - e^{-jz/kT} cosh(J-/kT))/(cosh(nu/kT) + e^{-jz/kT} cosh(J-/kT)), "
            "nu = sqrt(J+^2 + D^2)",
            [xyz_afm_valid](const ModelParams& p, double) {
                return xyz_afm_valid(p, ModelTag::xyz_dm);
            },
            [xyz_afm_value](const ModelParams& p, double kT) {
                return xyz_afm_value(std::hypot(p.j_plus(), p.d), p, kT);
            });

        add(ModelTag::xyz_dm, Branch::fm_under,
            "sqrt(J+^2+D^2) < |jz|+|J-|: C = (sinh(|J-|/kT) - cosh(nu/kT) e^{-|jz|/kT})/"
            "(cosh(|J-|/kT) + cosh(nu/kT) e^{-|jz|/kT})",
            [xyz_fm_valid](const ModelParams& p, double) {
                return xyz_fm_valid(p, ModelTag::xyz_dm) &&
                       std::hypot(p.j_plus(), p.d) < std::abs(p.jz) + std::abs(p.j_minus());
            },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double jm = std::abs(p.j_minus());
                const double nu = std::hypot(p.j_plus(), p.d);
                const double a = std::abs(p.jz);
                return clamp01(exp_ratio({{0.5, beta * jm},
                                          {-0.5, -beta * jm},
                                          {-0.5, beta * (nu - a)},
                                          {-0.5, beta * (-nu - a)}},
                                         {{0.5, beta * jm},
                                          {0.5, -beta * jm},
                                          {0.5, beta * (nu - a)},
                                          {0.5, beta * (-nu - a)}}));
            });

        add(ModelTag::xyz_dm, Branch::fm_over,
            "sqrt(J+^2+D^2) > |jz|+|J-|: C = (sinh(nu/kT) - e^{|jz|/kT} cosh(|J-|/kT))/"
            "(cosh(nu/kT) + e^{|jz|/kT} cosh(|J-|/kT))",
            [xyz_fm_valid](const ModelParams& p, double) {
                return xyz_fm_valid(p, ModelTag::xyz_dm) &&
                       std::hypot(p.j_plus(), p.d) > std::abs(p.jz) + std::abs(p.j_minus());
            },
            [](const ModelParams& p, double kT) {
                const double beta = 1.0 / kT;
                const double jm = std::abs(p.j_minus());
                const double nu = std::hypot(p.j_plus(), p.d);
                const double a = std::abs(p.jz);
                return clamp01(exp_ratio({{0.5, beta * nu},
                                          {-0.5, -beta * nu},
                                          {-0.5, beta * (jm + a)},
                                          {-0.5, beta * (-jm + a)}},
                                         {{0.5, beta * nu},
                                          {0.5, -beta * nu},
                                          {0.5, beta * (jm + a)},
                                          {0.5, beta * (-jm + a)}}));
            });

        return r;
    }();
    return entries;
}

inline const ModelFormulaEntry* find_model_entry(ModelTag tag, Branch branch) {
    for (const auto& e : model_registry())
        if (e.tag == tag && e.branch == branch) return &e;
    return nullptr;
}

/// Closed-form concurrence by registry entry. Checks the preset constraints
/// (PresetMismatchError) and the entry's validity region (BranchInvalidError).
inline ConcurrenceReport concurrence_model(ModelTag tag, Branch branch, const ModelParams& p,
                                           double kT) {
    if (!(kT > 0.0)) throw ZeroTemperatureError("concurrence_model requires kT > 0");
    const ModelFormulaEntry* entry = find_model_entry(tag, branch);
    if (entry == nullptr)
        throw BranchInvalidError("no closed-form entry for " + to_string(tag) + "/" +
                                 to_string(branch));
    require_preset(p, tag);
    if (!entry->valid(p, kT))
        throw BranchInvalidError("parameters outside validity region of " + entry->name);

    ConcurrenceReport rep;
    auto l = lambdas_general(p, kT);
    std::sort(l.begin(), l.end(), std::greater<>());
    rep.lambdas = l;
    rep.value = entry->value(p, kT);
    rep.source = {ConcurrenceSource::Kind::model_formula, tag, branch};
    return rep;
}

} // namespace spindm
