// Command-line front end: single-point evaluation, 1D/2D parameter sweeps,
// critical-value solving, gate/evolution checks, figure datasets, and the
// oracle-equivalence self-test battery.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spindm/spindm.hpp"

namespace {

using namespace spindm;

struct CommonOpts {
    std::string model = "pure_dm";
    ModelParams params;
    double kT = 1.0;
    std::string quantity = "concurrence_numeric";
    std::string branch = "auto";
    std::string kind; // critical kind
    std::vector<std::string> sweep_axes;
    std::string out;
    std::string format = "csv";
    bool verify = false;
    bool reproducible = false;
};

SweepAxis parse_axis(const std::string& text) {
    SweepAxis ax;
    std::stringstream ss(text);
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 4) throw Error("bad --sweep spec (want param:lo:hi:count): " + text);
    ax.param = parts[0];
    ax.lo = std::stod(parts[1]);
    ax.hi = std::stod(parts[2]);
    ax.count = std::stoi(parts[3]);
    return ax;
}

Branch branch_from_string(const std::string& s) {
    for (Branch b : {Branch::none, Branch::afm, Branch::fm, Branch::under, Branch::over,
                     Branch::fm_under, Branch::fm_over})
        if (to_string(b) == s) return b;
    throw Error("unknown branch: " + s);
}

int basis_index_from_string(const std::string& s) {
    if (s == "00") return k00;
    if (s == "01") return k01;
    if (s == "10") return k10;
    if (s == "11") return k11;
    throw Error("state must be one of 00, 01, 10, 11");
}

/// Writes text to opts.out or stdout.
void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out);
    if (!f) throw IoError("cannot open " + opts.out);
    f << text;
    if (!f) throw IoError("write failed: " + opts.out);
}

SweepSpec build_spec(const CommonOpts& opts) {
    SweepSpec spec;
    spec.tag = model_tag_from_string(opts.model);
    spec.fixed = opts.params;
    spec.kT = opts.kT;
    spec.quantity = quantity_from_string(opts.quantity);
    if (opts.branch == "auto") {
        spec.auto_branch = true;
    } else {
        spec.auto_branch = false;
        spec.branch = branch_from_string(opts.branch);
    }
    if (!opts.kind.empty()) spec.critical = critical_kind_from_string(opts.kind);
    for (const auto& s : opts.sweep_axes) spec.axes.push_back(parse_axis(s));
    return spec;
}

int run_eval(const CommonOpts& opts) {
    const Quantity q = quantity_from_string(opts.quantity);
    const ModelParams& p = opts.params;

    double value = 0.0;
    std::optional<ConcurrenceReport> rep;
    switch (q) {
    case Quantity::concurrence_numeric: {
        rep = concurrence_numeric(density_matrix_numeric(p, Temperature::of(opts.kT / p.k_boltz)));
        value = rep->value;
        break;
    }
    case Quantity::concurrence_model: {
        const ModelTag tag = model_tag_from_string(opts.model);
        if (opts.branch == "auto") {
            const ModelFormulaEntry* hit = nullptr;
            for (const auto& e : model_registry())
                if (e.tag == tag && e.valid(p, opts.kT)) {
                    hit = &e;
                    break;
                }
            if (hit == nullptr) throw BranchInvalidError("no valid closed-form branch here");
            require_preset(p, tag);
            rep = concurrence_model(tag, hit->branch, p, opts.kT);
        } else {
            rep = concurrence_model(tag, branch_from_string(opts.branch), p, opts.kT);
        }
        value = rep->value;
        break;
    }
    case Quantity::zero_t_concurrence:
        value = zero_t_concurrence(p);
        break;
    case Quantity::critical_curve:
        if (opts.kind.empty()) throw Error("--quantity critical_curve needs --kind");
        value = critical_closed(critical_kind_from_string(opts.kind), p, opts.kT);
        break;
    }

    double verify_dev = 0.0;
    if (opts.verify && (q == Quantity::concurrence_numeric || q == Quantity::concurrence_model)) {
        const double numeric =
            concurrence_numeric(density_matrix_numeric(p, Temperature::of(opts.kT / p.k_boltz)))
                .value;
        const double general = concurrence_general(p, opts.kT).value;
        verify_dev = std::max(std::abs(value - numeric), std::abs(value - general));
    }

    std::ostringstream os;
    if (opts.format == "json") {
        nlohmann::json j;
        j["model"] = opts.model;
        j["quantity"] = opts.quantity;
        j["kT"] = opts.kT;
        j["value"] = value;
        if (rep) {
            j["lambdas"] = rep->lambdas;
        }
        if (opts.verify) j["verify_deviation"] = verify_dev;
        os << j.dump(2) << "\n";
    } else {
        os << "model = " << opts.model << "\n";
        os << "quantity = " << opts.quantity << "\n";
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", value);
        os << "value = " << buf << "\n";
        if (rep) {
            os << "lambdas =";
            for (double l : rep->lambdas) {
                std::snprintf(buf, sizeof(buf), " %.12g", l);
                os << buf;
            }
            os << "\n";
        }
    }
    emit(opts, os.str());

    if (opts.verify && verify_dev > 1e-8) {
        std::cerr << "verify: deviation " << verify_dev << " exceeds 1e-8\n";
        return 2;
    }
    return 0;
}

int run_sweep_cmd(const CommonOpts& opts) {
    SweepSpec spec = build_spec(opts);
    SweepResult res = run_sweep(spec);

    if (opts.verify) {
        const auto failures = verify_sweep(spec, res);
        if (!failures.empty()) {
            for (const auto& f : failures)
                std::cerr << "verify: row " << f.row << " deviates by " << f.deviation << "\n";
            return 2;
        }
    }
    stamp_result(res, opts.reproducible);

    std::ostringstream os;
    if (opts.format == "json")
        write_json(res, os);
    else
        write_csv(res, os);
    emit(opts, os.str());
    return 0;
}

int run_critical(const CommonOpts& opts, const std::string& free, double lo, double hi,
                 bool at_zero_t) {
    std::ostringstream os;
    std::optional<double> closed;
    if (!opts.kind.empty())
        closed = critical_closed(critical_kind_from_string(opts.kind), opts.params, opts.kT);

    std::optional<double> solved;
    if (!free.empty()) {
        CriticalQuery q;
        q.params = opts.params;
        q.free = free[0];
        q.lo = lo;
        q.hi = hi;
        q.temp = at_zero_t ? Temperature::zero()
                           : Temperature::of(opts.kT / opts.params.k_boltz);
        solved = critical_solve(q);
    }
    if (!closed && !solved) throw Error("critical: give --kind and/or --free with a bracket");

    char buf[64];
    if (opts.format == "json") {
        nlohmann::json j;
        if (closed) j["closed_form"] = *closed;
        if (solved) j["bisection"] = *solved;
        if (closed && solved) j["difference"] = std::abs(*closed - *solved);
        os << j.dump(2) << "\n";
    } else {
        if (closed) {
            std::snprintf(buf, sizeof(buf), "%.12g", *closed);
            os << "closed_form = " << buf << "\n";
        }
        if (solved) {
            std::snprintf(buf, sizeof(buf), "%.12g", *solved);
            os << "bisection = " << buf << "\n";
        }
        if (closed && solved) {
            std::snprintf(buf, sizeof(buf), "%.3g", std::abs(*closed - *solved));
            os << "difference = " << buf << "\n";
        }
    }
    emit(opts, os.str());
    return 0;
}

int run_evolve(const CommonOpts& opts, double time, const std::string& state, bool check_swap,
               const std::string& profile) {
    std::ostringstream os;
    char buf[128];
    const ModelParams& p = opts.params;

    if (check_swap) {
        const GateCheck chk = check_swap_equivalence(p, time);
        os << "swap_equivalent = " << (chk.verdict ? "true" : "false") << "\n";
        std::snprintf(buf, sizeof(buf), "%.3g", chk.max_deviation);
        os << "max_deviation = " << buf << "\n";
        os << "phases =";
        for (double ph : chk.phase_profile) {
            std::snprintf(buf, sizeof(buf), " %.12g", ph);
            os << buf;
        }
        os << "\n";
    } else if (!profile.empty()) {
        const SweepAxis ax = parse_axis("t:" + profile);
        const int s = basis_index_from_string(state);
        const auto prof = entangling_power_profile(p, s, linspace(ax.lo, ax.hi, ax.count));
        os << "t,concurrence\n";
        for (const auto& [t, c] : prof) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", t, c);
            os << buf;
        }
    } else {
        const int s = basis_index_from_string(state);
        Vec4 psi;
        if (std::abs(p.b_homog) == 0.0 && std::abs(p.b_inhomog) == 0.0) {
            psi = evolve_basis_closed_form(p, time, s);
        } else {
            const Unitary4 u = evolution_operator(p, time);
            for (int i = 0; i < 4; ++i) psi[i] = u(i, s);
        }
        const char* labels[] = {"00", "01", "10", "11"};
        for (int i = 0; i < 4; ++i) {
            std::snprintf(buf, sizeof(buf), "amp_%s = %.12g %+.12gi\n", labels[i],
                          psi[i].real(), psi[i].imag());
            os << buf;
        }
        std::snprintf(buf, sizeof(buf), "concurrence = %.12g\n", concurrence_pure(psi));
        os << buf;
    }
    emit(opts, os.str());
    return 0;
}

int run_selftest(int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> field(-5.0, 5.0);
    std::uniform_real_distribution<double> temp(0.05, 10.0);

    int failures = 0;
    auto report = [&](const char* name, bool ok, double worst) {
        std::printf("%-34s %s  (worst %.3g)\n", name, ok ? "PASS" : "FAIL", worst);
        if (!ok) ++failures;
    };

    double worst_rho = 0.0, worst_conc = 0.0;
    for (int i = 0; i < trials; ++i) {
        ModelParams p;
        p.jx = field(rng);
        p.jy = field(rng);
        p.jz = field(rng);
        p.b_homog = field(rng);
        p.b_inhomog = field(rng);
        p.d = field(rng);
        const double kT = temp(rng);
        const Temperature t = Temperature::of(kT);

        const auto ra = density_matrix_analytic(p, t);
        const auto rn = density_matrix_numeric(p, t);
        worst_rho = std::max(worst_rho, max_abs(ra - rn));

        const double cn = concurrence_numeric(rn).value;
        const double cg = concurrence_general(p, kT).value;
        worst_conc = std::max(worst_conc, std::abs(cn - cg));
    }
    report("thermal state closed vs numeric", worst_rho <= 1e-10, worst_rho);
    report("concurrence lambdas vs numeric", worst_conc <= 1e-9, worst_conc);

    // Registry entries against the numeric path at generic in-region points.
    double worst_model = 0.0;
    const struct {
        const char* name;
        ModelParams params;
        double kT;
    } samples[] = {
        {"pure_dm", presets::pure_dm(1.3), 0.7},
        {"ising_dm/afm", presets::ising_dm(1.1, 0.8), 0.9},
        {"ising_dm/fm", presets::ising_dm(-0.9, 2.2), 0.6},
        {"nuclear_spin_ising_dm", presets::nuclear_spin_ising_dm(0.8, 1.4, 0.5, 1.2), 0.8},
        {"xy/afm", presets::xy(1.4, 0.7), 0.5},
        {"xy/fm", presets::xy(-1.4, -0.7), 0.5},
        {"xy_dm", presets::xy_dm(1.2, 0.5, 0.9), 0.7},
        {"xx_dm", presets::xx_dm(1.0, 0.6), 0.8},
        {"transverse_ising_dm/under", presets::transverse_ising_dm(1.0, 1.0, 0.3), 0.5},
        {"transverse_ising_dm/over", presets::transverse_ising_dm(1.0, 1.0, 1.5), 0.5},
        {"xxx_dm", presets::xxx_dm(1.0, 1.1), 0.9},
        {"xxz/afm", presets::xxz(1.0, 0.4), 0.6},
        {"xxz/fm", presets::xxz(-1.0, -0.5), 0.4},
        {"xxz_dm", presets::xxz_dm(1.0, -1.6, 2.0), 0.7},
        {"xxz_dmb", presets::xxz_dmb(1.0, 0.5, 2.0, 3.0), 0.5},
        {"xyz/afm", presets::xyz(0.6, 0.8, 1.0), 0.4},
        {"xyz/fm", presets::xyz(-0.5, -0.75, -1.0), 0.3},
        {"xyz_dm/afm", presets::xyz_dm(0.6, 0.8, 1.0, 0.9), 0.5},
        {"xyz_dm/fm_under", presets::xyz_dm(-0.5, -0.75, -1.0, 0.4), 0.3},
        {"xyz_dm/fm_over", presets::xyz_dm(-0.5, -0.75, -1.0, 2.0), 0.3},
    };
    bool all_valid = true;
    for (const auto& s : samples) {
        const ModelFormulaEntry* hit = nullptr;
        for (const auto& e : model_registry())
            if (e.name == s.name) hit = &e;
        if (hit == nullptr || !hit->valid(s.params, s.kT)) {
            all_valid = false;
            continue;
        }
        const double model = hit->value(s.params, s.kT);
        const double numeric =
            concurrence_numeric(density_matrix_numeric(s.params, Temperature::of(s.kT))).value;
        worst_model = std::max(worst_model, std::abs(model - numeric));
    }
    report("model formulas vs numeric", all_valid && worst_model <= 1e-9, worst_model);

    std::printf("selftest: %s\n", failures == 0 ? "all checks passed" : "FAILURES detected");
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spindm: two-qubit spin-model entanglement toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key = value config file; flags override it");

    CommonOpts opts;
    app.add_option("--model", opts.model, "model preset tag");
    app.add_option("--jx", opts.params.jx, "x coupling");
    app.add_option("--jy", opts.params.jy, "y coupling");
    app.add_option("--jz", opts.params.jz, "z coupling");
    app.add_option("--B", opts.params.b_homog, "homogeneous field");
    app.add_option("--b", opts.params.b_inhomog, "inhomogeneous field");
    app.add_option("--D", opts.params.d, "DM coupling");
    app.add_option("--kT", opts.kT, "temperature in energy units (k folded in)");
    app.add_option("--k", opts.params.k_boltz, "Boltzmann constant");
    app.add_option("--hbar", opts.params.hbar, "reduced Planck constant");
    app.add_option("--quantity", opts.quantity,
                   "concurrence_numeric | concurrence_model | zero_t_concurrence | "
                   "critical_curve");
    app.add_option("--branch", opts.branch, "closed-form branch (default: auto)");
    app.add_option("--kind", opts.kind, "critical kind for critical_curve / critical");
    app.add_option("--sweep", opts.sweep_axes, "axis spec param:lo:hi:count (up to twice)")
        ->expected(0, 2);
    app.add_option("--out", opts.out, "output file (default stdout)");
    app.add_option("--format", opts.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--verify", opts.verify, "recompute rows through the independent route");
    app.add_flag("--reproducible", opts.reproducible, "suppress the timestamp header line");

    auto* eval = app.add_subcommand("eval", "evaluate one point");
    auto* sweep = app.add_subcommand("sweep", "run a 1D/2D parameter sweep");

    auto* critical = app.add_subcommand("critical", "critical value: closed form and/or bisection");
    std::string free_param;
    double lo = 0.0, hi = 1.0;
    bool at_zero_t = false;
    critical->add_option("--free", free_param, "bisection free parameter: T | D | B");
    critical->add_option("--lo", lo, "bracket low");
    critical->add_option("--hi", hi, "bracket high");
    critical->add_flag("--zero-t", at_zero_t, "bisect the T = 0 ground-state concurrence");

    auto* evolve = app.add_subcommand("evolve", "time evolution and gate checks");
    double time = 0.0;
    std::string state = "01";
    bool check_swap = false;
    std::string profile;
    evolve->add_option("--time", time, "evolution time");
    evolve->add_option("--state", state, "initial basis state: 00 | 01 | 10 | 11");
    evolve->add_flag("--check-swap", check_swap, "test SWAP equivalence up to diagonal phases");
    evolve->add_option("--profile", profile, "entangling-power grid lo:hi:count");

    auto* figure = app.add_subcommand("figure", "emit a named figure dataset");
    int fig_n = 1;
    figure->add_option("n", fig_n, "figure number 1..9")->required();

    auto* selftest = app.add_subcommand("selftest", "run the oracle-equivalence battery");
    int trials = 500;
    unsigned seed = 20260808;
    selftest->add_option("--trials", trials, "random draws for the oracle battery");
    selftest->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    // Models with structural coupling equalities: fill unset flags so
    // `--model xxz --jx 1` means jy = jx (and jz = jx for the isotropic ones).
    {
        const bool xx_like = opts.model == "xx" || opts.model == "xx_dm" ||
                             opts.model == "xxz" || opts.model == "xxz_dm" ||
                             opts.model == "xxz_dmb" || opts.model == "xxx" ||
                             opts.model == "xxx_dm";
        const bool iso = opts.model == "xxx" || opts.model == "xxx_dm";
        if (xx_like && app.count("--jy") == 0) opts.params.jy = opts.params.jx;
        if (iso && app.count("--jz") == 0) opts.params.jz = opts.params.jx;
    }

    try {
        if (*eval) return run_eval(opts);
        if (*sweep) return run_sweep_cmd(opts);
        if (*critical) return run_critical(opts, free_param, lo, hi, at_zero_t);
        if (*evolve) return run_evolve(opts, time, state, check_swap, profile);
        if (*figure) {
            FigureOptions fopts;
            fopts.reproducible = opts.reproducible;
            if (app.count("--jz") > 0) fopts.jz = opts.params.jz;
            const auto written =
                reproduce_figure(fig_n, opts.out.empty() ? "." : opts.out, fopts);
            for (const auto& path : written) std::cout << path << "\n";
            return 0;
        }
        if (*selftest) return run_selftest(trials, seed);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
