#pragma once

// Parameter sweeps over model quantities with deterministic CSV/JSON output,
// the named figure datasets, and the dual-route verification used by the
// CLI --verify flag. CSV schema: `# key=value` comment lines, one header
// row, then data rows with 12 significant digits.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spindm/concurrence.hpp"
#include "spindm/critical.hpp"
#include "spindm/hamiltonian.hpp"
#include "spindm/models.hpp"
#include "spindm/params.hpp"
#include "spindm/thermal.hpp"
#include "spindm/version.hpp"

namespace spindm {

enum class Quantity {
    concurrence_numeric,
    concurrence_model,
    zero_t_concurrence,
    critical_curve,
};

inline std::string to_string(Quantity q) {
    switch (q) {
    case Quantity::concurrence_numeric: return "concurrence_numeric";
    case Quantity::concurrence_model: return "concurrence_model";
    case Quantity::zero_t_concurrence: return "zero_t_concurrence";
    case Quantity::critical_curve: return "critical_curve";
    }
    return "?";
}

inline Quantity quantity_from_string(const std::string& s) {
    if (s == "concurrence_numeric") return Quantity::concurrence_numeric;
    if (s == "concurrence_model") return Quantity::concurrence_model;
    if (s == "zero_t_concurrence") return Quantity::zero_t_concurrence;
    if (s == "critical_curve") return Quantity::critical_curve;
    throw Error("unknown quantity: " + s);
}

struct SweepAxis {
    std::string param; // jx, jy, jz, B, b, D, kT
    double lo = 0.0;
    double hi = 1.0;
    int count = 2;
};

struct SweepSpec {
    ModelTag tag = ModelTag::pure_dm;
    ModelParams fixed;
    double kT = 1.0; // energy units; used when kT is not a swept axis
    std::vector<SweepAxis> axes;
    Quantity quantity = Quantity::concurrence_numeric;
    // Branch selection for concurrence_model: a fixed branch, or automatic
    // (first registry entry of the tag whose validity region contains the
    // point).
    bool auto_branch = true;
    Branch branch = Branch::none;
    CriticalKind critical = CriticalKind::pure_dm_tc; // for critical_curve
};

struct SweepRow {
    std::vector<double> axis; // 1 or 2 values
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string error; // empty on success
};

struct SweepResult {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;
};

namespace detail {

inline std::string fmt_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

inline void apply_param(ModelParams& p, double& kT, const std::string& name, double value) {
    if (name == "jx") p.jx = value;
    else if (name == "jy") p.jy = value;
    else if (name == "jz") p.jz = value;
    else if (name == "B") p.b_homog = value;
    else if (name == "b") p.b_inhomog = value;
    else if (name == "D") p.d = value;
    else if (name == "kT") kT = value;
    else throw Error("unknown sweep parameter: " + name);
}

inline bool is_fixed_param(const SweepSpec& spec, const std::string& name) {
    for (const auto& ax : spec.axes)
        if (ax.param == name) return false;
    return true;
}

/// Evaluate the spec's quantity at one grid point. Domain errors come back
/// as an error tag instead of an exception.
inline SweepRow eval_point(const SweepSpec& spec, const std::vector<double>& axis_values) {
    SweepRow row;
    row.axis = axis_values;
    ModelParams p = spec.fixed;
    double kT = spec.kT;
    for (size_t i = 0; i < spec.axes.size(); ++i)
        apply_param(p, kT, spec.axes[i].param, axis_values[i]);

    try {
        switch (spec.quantity) {
        case Quantity::concurrence_numeric: {
            const auto rho = density_matrix_numeric(p, Temperature::of(kT / p.k_boltz));
            row.value = concurrence_numeric(rho).value;
            break;
        }
        case Quantity::concurrence_model: {
            if (spec.auto_branch) {
                const ModelFormulaEntry* hit = nullptr;
                for (const auto& e : model_registry())
                    if (e.tag == spec.tag && e.valid(p, kT)) {
                        hit = &e;
                        break;
                    }
                if (hit == nullptr) throw BranchInvalidError("no valid branch at this point");
                require_preset(p, spec.tag);
                row.value = hit->value(p, kT);
            } else {
                row.value = concurrence_model(spec.tag, spec.branch, p, kT).value;
            }
            break;
        }
        case Quantity::zero_t_concurrence:
            row.value = zero_t_concurrence(p);
            break;
        case Quantity::critical_curve:
            row.value = critical_closed(spec.critical, p, kT);
            break;
        }
    } catch (const PresetMismatchError&) {
        row.error = "preset_mismatch";
    } catch (const BranchInvalidError&) {
        row.error = "branch_invalid";
    } catch (const NoClosedFormError&) {
        row.error = "no_closed_form";
    } catch (const NoRootError&) {
        row.error = "no_root";
    } catch (const ZeroTemperatureError&) {
        row.error = "zero_temperature";
    } catch (const Error&) {
        row.error = "error";
    }
    return row;
}

} // namespace detail

inline void validate_spec(const SweepSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 2)
        throw Error("sweep needs one or two axes");
    for (const auto& ax : spec.axes) {
        if (ax.count < 2) throw Error("sweep axis count must be >= 2");
        if (!(ax.lo < ax.hi)) throw Error("sweep axis needs lo < hi");
    }
    if (spec.axes.size() == 2 && spec.axes[0].param == spec.axes[1].param)
        throw Error("sweep axes must differ");
}

/// Run the sweep; row-major order over the axes. Per-point domain errors are
/// flagged rows (value nan + error tag), never an abort.
inline SweepResult run_sweep(const SweepSpec& spec) {
    validate_spec(spec);

    SweepResult res;
    res.meta.emplace_back("tool", std::string("spindm ") + version);
    res.meta.emplace_back("model", to_string(spec.tag));
    res.meta.emplace_back("quantity", to_string(spec.quantity));
    if (spec.quantity == Quantity::concurrence_model)
        res.meta.emplace_back("branch", spec.auto_branch ? "auto" : to_string(spec.branch));
    if (spec.quantity == Quantity::critical_curve)
        res.meta.emplace_back("critical_kind", to_string(spec.critical));
    const auto& p = spec.fixed;
    const std::pair<std::string, double> fixed_fields[] = {
        {"jx", p.jx}, {"jy", p.jy}, {"jz", p.jz},     {"B", p.b_homog},
        {"b", p.b_inhomog}, {"D", p.d}, {"k", p.k_boltz}, {"hbar", p.hbar},
    };
    for (const auto& [name, value] : fixed_fields)
        if (detail::is_fixed_param(spec, name))
            res.meta.emplace_back(name, detail::fmt_g12(value));
    if (detail::is_fixed_param(spec, "kT") && spec.quantity != Quantity::zero_t_concurrence)
        res.meta.emplace_back("kT", detail::fmt_g12(spec.kT));
    for (size_t i = 0; i < spec.axes.size(); ++i) {
        const auto& ax = spec.axes[i];
        std::ostringstream os;
        os << ax.param << ":" << detail::fmt_g12(ax.lo) << ":" << detail::fmt_g12(ax.hi) << ":"
           << ax.count;
        res.meta.emplace_back("axis" + std::to_string(i + 1), os.str());
        res.axis_names.push_back(ax.param);
    }

    if (spec.axes.size() == 1) {
        for (double x : linspace(spec.axes[0].lo, spec.axes[0].hi, spec.axes[0].count))
            res.rows.push_back(detail::eval_point(spec, {x}));
    } else {
        for (double x : linspace(spec.axes[0].lo, spec.axes[0].hi, spec.axes[0].count))
            for (double y : linspace(spec.axes[1].lo, spec.axes[1].hi, spec.axes[1].count))
                res.rows.push_back(detail::eval_point(spec, {x, y}));
    }
    return res;
}

inline void write_csv(const SweepResult& res, std::ostream& os) {
    for (const auto& [k, v] : res.meta) os << "# " << k << "=" << v << "\n";
    for (const auto& name : res.axis_names) os << name << ",";
    os << "value,error\n";
    for (const auto& row : res.rows) {
        for (double a : row.axis) os << detail::fmt_g12(a) << ",";
        os << detail::fmt_g12(row.value) << "," << row.error << "\n";
    }
}

inline std::string to_csv(const SweepResult& res) {
    std::ostringstream os;
    write_csv(res, os);
    return os.str();
}

inline void write_json(const SweepResult& res, std::ostream& os) {
    nlohmann::json j;
    for (const auto& [k, v] : res.meta) j["meta"][k] = v;
    j["axes"] = res.axis_names;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : res.rows) {
        nlohmann::json r;
        for (size_t i = 0; i < row.axis.size(); ++i) r[res.axis_names[i]] = row.axis[i];
        if (std::isnan(row.value))
            r["value"] = nullptr;
        else
            r["value"] = row.value;
        if (!row.error.empty()) r["error"] = row.error;
        j["rows"].push_back(std::move(r));
    }
    os << j.dump(2) << "\n";
}

struct VerifyFailure {
    size_t row;
    double deviation;
};

/// Re-derive every successful row through an independent route:
///   concurrence_numeric  <-> general closed-form lambdas
///   concurrence_model    <-> numeric thermal concurrence
///   zero_t_concurrence   <-> ground mixture from the analytic spectrum
///   critical_curve       <-> the eigen-structure crossing that defines the
///                            critical point (lambda or energy degeneracy,
///                            or the concurrence zero).
/// Deviations above 1e-8 are reported.
inline std::vector<VerifyFailure> verify_sweep(const SweepSpec& spec, const SweepResult& res) {
    std::vector<VerifyFailure> failures;
    constexpr double tol = 1e-8;

    for (size_t idx = 0; idx < res.rows.size(); ++idx) {
        const auto& row = res.rows[idx];
        if (!row.error.empty()) continue;
        ModelParams p = spec.fixed;
        double kT = spec.kT;
        for (size_t i = 0; i < row.axis.size(); ++i)
            detail::apply_param(p, kT, spec.axes[i].param, row.axis[i]);

        double dev = 0.0;
        switch (spec.quantity) {
        case Quantity::concurrence_numeric:
            dev = std::abs(row.value - concurrence_general(p, kT).value);
            break;
        case Quantity::concurrence_model: {
            const auto rho = density_matrix_numeric(p, Temperature::of(kT / p.k_boltz));
            dev = std::abs(row.value - concurrence_numeric(rho).value);
            break;
        }
        case Quantity::zero_t_concurrence: {
            const Spectrum s = analytic_spectrum(p);
            double e_min = s.levels[0].energy;
            for (const auto& lv : s.levels) e_min = std::min(e_min, lv.energy);
            Mat4 mix;
            int g = 0;
            for (const auto& lv : s.levels)
                if (lv.energy - e_min <= 1e-10) {
                    mix = mix + outer(lv.state);
                    ++g;
                }
            dev = std::abs(row.value - concurrence_numeric((1.0 / g) * mix).value);
            break;
        }
        case Quantity::critical_curve: {
            if (!(row.value > 0.0)) continue; // no onset to check
            ModelParams q = p;
            double kt_at = kT;
            switch (spec.critical) {
            case CriticalKind::pure_dm_tc:
            case CriticalKind::xx_dm_tc:
            case CriticalKind::xxx_tc:
                kt_at = row.value * q.k_boltz;
                break;
            case CriticalKind::xxz_dmb_bc:
                q.b_homog = row.value;
                break;
            default:
                q.d = row.value;
                break;
            }
            if (spec.critical == CriticalKind::xxz_dm_dc ||
                spec.critical == CriticalKind::xyz_fm_dm_dc ||
                spec.critical == CriticalKind::xxz_dmb_bc) {
                // T = 0 transition: ground level crossing.
                const auto eig = herm_eig(build_hamiltonian(q));
                dev = eig.values[1] - eig.values[0];
            } else if (spec.critical == CriticalKind::transverse_ising_dm_dc) {
                // Degeneracy of the two largest lambdas.
                auto l = lambdas_general(q, kt_at);
                std::sort(l.begin(), l.end(), std::greater<>());
                dev = l[0] - l[1];
            } else {
                // Concurrence onset: l1 - l2 - l3 - l4 crosses zero.
                auto l = lambdas_general(q, kt_at);
                std::sort(l.begin(), l.end(), std::greater<>());
                dev = std::abs(l[0] - l[1] - l[2] - l[3]);
            }
            break;
        }
        }
        if (!(dev <= tol)) failures.push_back({idx, dev});
    }
    return failures;
}

struct FigureOptions {
    std::optional<double> jz;       // required for figures 6 and 7
    bool reproducible = false;      // suppress the generated= timestamp line
    std::optional<ModelParams> xyz; // override for figures 8 and 9
};

/// Timestamp line for emitted files; skipped when reproducible output is
/// requested so identical inputs give byte-identical files.
inline void stamp_result(SweepResult& res, bool reproducible) {
    if (!reproducible) res.meta.emplace_back("generated", detail::iso_timestamp());
}

namespace detail {

inline SweepResult manual_result(const std::string& figure, const std::string& quantity,
                                 std::vector<std::pair<std::string, std::string>> extra_meta,
                                 std::vector<std::string> axis_names,
                                 std::vector<SweepRow> rows) {
    SweepResult res;
    res.meta.emplace_back("tool", std::string("spindm ") + version);
    res.meta.emplace_back("figure", figure);
    res.meta.emplace_back("quantity", quantity);
    for (auto& kv : extra_meta) res.meta.push_back(std::move(kv));
    res.axis_names = std::move(axis_names);
    res.rows = std::move(rows);
    return res;
}

inline double thermal_concurrence(const ModelParams& p, double kT) {
    return concurrence_numeric(density_matrix_numeric(p, Temperature::of(kT / p.k_boltz))).value;
}

inline void write_file(const std::string& path, const SweepResult& res,
                       std::vector<std::string>& written) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_csv(res, f);
    if (!f) throw IoError("write failed: " + path);
    written.push_back(path);
}

} // namespace detail

/// Emit the named figure dataset(s) as CSV under out_dir; returns the paths
/// written. Figures 6 and 7 need opts.jz. Figures 8 and 9 default to the
/// ferromagnetic XYZ couplings (-0.5, -0.75, -1).
inline std::vector<std::string> reproduce_figure(int n, const std::string& out_dir,
                                                 const FigureOptions& opts = {}) {
    if (n < 1 || n > 9) throw Error("figure number must be 1..9");
    const std::string dir = out_dir.empty() ? "." : out_dir;
    std::vector<std::string> written;

    auto path_for = [&](const std::string& stem) { return dir + "/" + stem + ".csv"; };
    auto emit = [&](const std::string& stem, SweepResult res) {
        stamp_result(res, opts.reproducible);
        detail::write_file(path_for(stem), res, written);
    };

    switch (n) {
    case 1: {
        SweepSpec spec;
        spec.tag = ModelTag::pure_dm;
        spec.fixed = presets::pure_dm(1.0);
        spec.quantity = Quantity::concurrence_numeric;
        spec.axes = {{"kT", 0.02, 3.0, 300}};
        auto res = run_sweep(spec);
        res.meta.insert(res.meta.begin() + 1, {"figure", "1"});
        emit("fig1", std::move(res));
        break;
    }
    case 2:
    case 3: {
        const double j = 1.0;
        std::vector<SweepRow> rows;
        const auto b_values = n == 2 ? std::vector<double>{0.05, 0.5, 0.7, 1.0}
                                     : linspace(0.05, 1.0, 40);
        const auto t_grid = linspace(0.02, 2.0, n == 2 ? 100 : 40);
        for (double b : b_values)
            for (double kt : t_grid) {
                SweepRow row;
                row.axis = {b, kt};
                row.value = detail::transverse_ising_onset(j, b, kt);
                rows.push_back(row);
            }
        auto res = detail::manual_result(std::to_string(n), "critical_curve",
                                         {{"model", "transverse_ising_dm"},
                                          {"critical_kind", "transverse_ising_dm_onset"},
                                          {"j", "1"},
                                          {"k", "1"}},
                                         {"B", "kT"}, std::move(rows));
        emit(n == 2 ? "fig2" : "fig3", std::move(res));
        break;
    }
    case 4: {
        const char* stems[] = {"fig4a", "fig4b", "fig4c"};
        const double temps[] = {0.01, 0.5, 1.0};
        for (int i = 0; i < 3; ++i) {
            SweepSpec spec;
            spec.tag = ModelTag::transverse_ising_dm;
            spec.fixed = presets::transverse_ising_dm(1.0, 1.0, 0.0);
            spec.kT = temps[i];
            spec.quantity = Quantity::concurrence_numeric;
            spec.axes = {{"D", 0.0, 2.0, 201}};
            auto res = run_sweep(spec);
            res.meta.insert(res.meta.begin() + 1, {"figure", std::string("4") + "abc"[i]});
            emit(stems[i], std::move(res));
        }
        break;
    }
    case 5: {
        const char* stems[] = {"fig5a", "fig5b", "fig5c", "fig5d"};
        const double ds[] = {0.1, 1.118, 1.19, 3.0};
        for (int i = 0; i < 4; ++i) {
            SweepSpec spec;
            spec.tag = ModelTag::xxz_dmb;
            spec.fixed = presets::xxz_dmb(1.0, 0.5, 2.0, ds[i]);
            spec.quantity = Quantity::concurrence_numeric;
            spec.axes = {{"kT", 0.01, 3.0, 300}};
            auto res = run_sweep(spec);
            res.meta.insert(res.meta.begin() + 1, {"figure", std::string("5") + "abcd"[i]});
            emit(stems[i], std::move(res));
        }
        break;
    }
    case 6:
    case 7: {
        if (!opts.jz)
            throw Error("figures 6 and 7 need an explicit jz (see --jz)");
        const double d = n == 6 ? 0.0 : 2.0;
        const double b_hi = n == 6 ? 4.0 : 5.0;
        std::vector<SweepRow> rows;
        for (double kt : {0.1, 0.5, 1.0})
            for (double b : linspace(0.0, b_hi, 201)) {
                ModelParams p = presets::xxz_dmb(1.0, *opts.jz, b, d);
                SweepRow row;
                row.axis = {kt, b};
                row.value = detail::thermal_concurrence(p, kt);
                rows.push_back(row);
            }
        auto res = detail::manual_result(std::to_string(n), "concurrence_numeric",
                                         {{"model", "xxz_dmb"},
                                          {"jx", "1"},
                                          {"jy", "1"},
                                          {"jz", detail::fmt_g12(*opts.jz)},
                                          {"D", detail::fmt_g12(d)},
                                          {"k", "1"}},
                                         {"kT", "B"}, std::move(rows));
        emit(n == 6 ? "fig6" : "fig7", std::move(res));
        break;
    }
    case 8:
    case 9: {
        ModelParams base = opts.xyz ? *opts.xyz : presets::xyz_dm(-0.5, -0.75, -1.0, 0.0);
        std::vector<SweepRow> rows;
        std::vector<std::pair<std::string, std::string>> meta = {
            {"model", "xyz_dm"},
            {"jx", detail::fmt_g12(base.jx)},
            {"jy", detail::fmt_g12(base.jy)},
            {"jz", detail::fmt_g12(base.jz)},
            {"k", "1"}};
        if (n == 8) {
            for (double kt : {0.1, 0.5, 1.0})
                for (double d : linspace(0.0, 3.0, 301)) {
                    ModelParams p = base;
                    p.d = d;
                    SweepRow row;
                    row.axis = {kt, d};
                    row.value = detail::thermal_concurrence(p, kt);
                    rows.push_back(row);
                }
        } else {
            for (double d : linspace(0.0, 3.0, 61))
                for (double kt : linspace(0.05, 1.5, 30)) {
                    ModelParams p = base;
                    p.d = d;
                    SweepRow row;
                    row.axis = {d, kt};
                    row.value = detail::thermal_concurrence(p, kt);
                    rows.push_back(row);
                }
        }
        auto res = detail::manual_result(std::to_string(n), "concurrence_numeric",
                                         std::move(meta),
                                         n == 8 ? std::vector<std::string>{"kT", "D"}
                                                : std::vector<std::string>{"D", "kT"},
                                         std::move(rows));
        emit(n == 8 ? "fig8" : "fig9", std::move(res));
        break;
    }
    }
    return written;
}

} // namespace spindm
