#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spindm/sweep.hpp"

using namespace spindm;

namespace {

SweepSpec pure_dm_temperature_spec(int count = 100) {
    SweepSpec spec;
    spec.tag = ModelTag::pure_dm;
    spec.fixed = presets::pure_dm(1.0);
    spec.quantity = Quantity::concurrence_numeric;
    spec.axes = {{"kT", 0.1, 3.0, count}};
    return spec;
}

} // namespace

TEST_CASE("run_sweep: pure DM concurrence vs temperature") {
    const SweepResult res = run_sweep(pure_dm_temperature_spec());
    REQUIRE(res.rows.size() == 100);

    // monotone nonincreasing, starting near 1 and ending at 0
    double prev = 2.0;
    for (const auto& row : res.rows) {
        CHECK(row.error.empty());
        CHECK(row.value <= prev + 1e-12);
        prev = row.value;
    }
    CHECK(res.rows.front().value > 0.9);
    CHECK(res.rows.back().value == 0.0);

    // zero crossing sits at kT close to 1/asinh(1) = 1.1346
    const double kt_c = 1.0 / std::asinh(1.0);
    double first_zero = 0.0;
    for (const auto& row : res.rows)
        if (row.value == 0.0) {
            first_zero = row.axis[0];
            break;
        }
    CHECK(std::abs(first_zero - kt_c) <= 3.0 * (3.0 - 0.1) / 99.0);
}

TEST_CASE("run_sweep: reentrant temperature profile below the field threshold") {
    SweepSpec spec;
    spec.tag = ModelTag::xxz_dmb;
    spec.fixed = presets::xxz_dmb(1.0, 0.5, 2.0, 0.1);
    spec.quantity = Quantity::concurrence_numeric;
    spec.axes = {{"kT", 0.02, 3.0, 150}};
    const SweepResult res = run_sweep(spec);

    // rises from ~0 to an interior maximum, then decays
    CHECK(res.rows.front().value <= 1e-6);
    double peak = 0.0;
    size_t peak_at = 0;
    for (size_t i = 0; i < res.rows.size(); ++i)
        if (res.rows[i].value > peak) {
            peak = res.rows[i].value;
            peak_at = i;
        }
    CHECK(peak > 0.05);
    CHECK(peak_at > 0);
    CHECK(peak_at < res.rows.size() - 1);
    CHECK(res.rows.back().value < peak);
}

TEST_CASE("run_sweep: minimal grid and validation") {
    SweepSpec spec = pure_dm_temperature_spec(2);
    CHECK(run_sweep(spec).rows.size() == 2);

    spec.axes[0].count = 1;
    CHECK_THROWS_AS(run_sweep(spec), Error);
    spec.axes[0] = {"kT", 3.0, 0.1, 10};
    CHECK_THROWS_AS(run_sweep(spec), Error);
    spec.axes = {{"kT", 0.1, 3.0, 5}, {"kT", 0.1, 3.0, 5}};
    CHECK_THROWS_AS(run_sweep(spec), Error);
    spec.axes = {{"qq", 0.1, 3.0, 5}};
    CHECK_THROWS_AS(run_sweep(spec), Error);
}

TEST_CASE("run_sweep: 2D grids come out in row-major long format") {
    SweepSpec spec;
    spec.tag = ModelTag::xxz_dmb;
    spec.fixed = presets::xxz_dmb(1.0, 0.5, 2.0, 0.0);
    spec.quantity = Quantity::concurrence_numeric;
    spec.axes = {{"D", 0.0, 1.0, 3}, {"kT", 0.5, 1.0, 2}};
    const SweepResult res = run_sweep(spec);
    REQUIRE(res.rows.size() == 6);
    CHECK(res.rows[0].axis == std::vector<double>{0.0, 0.5});
    CHECK(res.rows[1].axis == std::vector<double>{0.0, 1.0});
    CHECK(res.rows[2].axis == std::vector<double>{0.5, 0.5});
    CHECK(res.rows[5].axis == std::vector<double>{1.0, 1.0});
}

TEST_CASE("run_sweep flags per-point domain errors instead of aborting") {
    SUBCASE("branch validity holes come back as branch_invalid rows") {
        SweepSpec spec;
        spec.tag = ModelTag::xxz_dm;
        spec.fixed = presets::xxz_dm(1.0, -1.5, 0.0);
        spec.quantity = Quantity::concurrence_model;
        spec.auto_branch = false;
        spec.branch = Branch::none;
        spec.axes = {{"D", 0.0, 3.0, 31}};
        const SweepResult res = run_sweep(spec);
        const double dc = std::sqrt(1.5 * 1.5 - 1.0);
        int flagged = 0, clean = 0;
        for (const auto& row : res.rows) {
            if (row.axis[0] < dc) {
                CHECK(row.error == "branch_invalid");
                CHECK(std::isnan(row.value));
                ++flagged;
            } else if (row.axis[0] > dc + 1e-9) {
                CHECK(row.error.empty());
                ++clean;
            }
        }
        CHECK(flagged > 0);
        CHECK(clean > 0);
    }
    SUBCASE("preset violations come back as preset_mismatch rows") {
        SweepSpec spec;
        spec.tag = ModelTag::pure_dm;
        spec.fixed = presets::xy(1.0, 0.0);
        spec.quantity = Quantity::concurrence_model;
        spec.auto_branch = false;
        spec.branch = Branch::none;
        spec.axes = {{"kT", 0.5, 1.5, 3}};
        for (const auto& row : run_sweep(spec).rows) CHECK(row.error == "preset_mismatch");
    }
}

TEST_CASE("CSV output: schema and determinism") {
    const SweepSpec spec = pure_dm_temperature_spec(10);
    const SweepResult res = run_sweep(spec);
    const std::string csv1 = to_csv(res);
    const std::string csv2 = to_csv(run_sweep(spec));
    CHECK(csv1 == csv2); // byte-identical without a timestamp

    std::istringstream in(csv1);
    std::string line;
    int comment_lines = 0;
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
        ++comment_lines;
        CHECK(line.find('=') != std::string::npos); // key=value form
    }
    CHECK(comment_lines >= 4);
    CHECK(line == "kT,value,error");
    int data_rows = 0;
    do {
        if (!line.empty() && line[0] != '#' && line.find(',') != std::string::npos &&
            line != "kT,value,error")
            ++data_rows;
    } while (std::getline(in, line));
    CHECK(data_rows == 10);

    SweepResult stamped = run_sweep(spec);
    stamp_result(stamped, false);
    CHECK(to_csv(stamped).find("# generated=") != std::string::npos);
    SweepResult unstamped = run_sweep(spec);
    stamp_result(unstamped, true);
    CHECK(to_csv(unstamped).find("# generated=") == std::string::npos);
}

TEST_CASE("JSON output") {
    SweepSpec spec = pure_dm_temperature_spec(3);
    const SweepResult res = run_sweep(spec);
    std::ostringstream os;
    write_json(res, os);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j["rows"].size() == 3);
    CHECK(j["meta"]["model"] == "pure_dm");
    CHECK(j["rows"][0].contains("kT"));
    CHECK(j["rows"][0]["value"].is_number());
}

TEST_CASE("verify_sweep accepts matching routes and reports broken rows") {
    SUBCASE("numeric sweep verifies against the closed-form lambdas") {
        const SweepSpec spec = pure_dm_temperature_spec(25);
        const SweepResult res = run_sweep(spec);
        CHECK(verify_sweep(spec, res).empty());
    }
    SUBCASE("model sweep verifies against the numeric path") {
        SweepSpec spec;
        spec.tag = ModelTag::xxz_dmb;
        spec.fixed = presets::xxz_dmb(1.0, 0.5, 2.0, 3.0);
        spec.quantity = Quantity::concurrence_model;
        spec.axes = {{"kT", 0.1, 2.0, 25}};
        const SweepResult res = run_sweep(spec);
        CHECK(verify_sweep(spec, res).empty());
    }
    SUBCASE("zero-temperature sweep verifies against the analytic spectrum") {
        SweepSpec spec;
        spec.tag = ModelTag::transverse_ising_dm;
        spec.fixed = presets::transverse_ising_dm(1.0, 1.0, 0.0);
        spec.quantity = Quantity::zero_t_concurrence;
        spec.axes = {{"D", 0.0, 2.0, 21}};
        const SweepResult res = run_sweep(spec);
        CHECK(verify_sweep(spec, res).empty());
    }
    SUBCASE("critical curve verifies against the lambda crossing") {
        SweepSpec spec;
        spec.tag = ModelTag::transverse_ising_dm;
        spec.fixed = presets::transverse_ising_dm(1.0, 1.0, 0.0);
        spec.quantity = Quantity::critical_curve;
        spec.critical = CriticalKind::transverse_ising_dm_dc;
        spec.axes = {{"kT", 0.2, 1.5, 15}};
        const SweepResult res = run_sweep(spec);
        CHECK(verify_sweep(spec, res).empty());
    }
    SUBCASE("a corrupted row is reported") {
        const SweepSpec spec = pure_dm_temperature_spec(10);
        SweepResult res = run_sweep(spec);
        res.rows[4].value += 1e-5;
        const auto failures = verify_sweep(spec, res);
        REQUIRE(failures.size() == 1);
        CHECK(failures[0].row == 4);
        CHECK(failures[0].deviation > 1e-8);
    }
}

TEST_CASE("figure datasets") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "spindm_fig_test";
    fs::create_directories(dir);
    FigureOptions opts;
    opts.reproducible = true;

    SUBCASE("figure 1: concurrence runs out near kT = 1.1346") {
        const auto files = reproduce_figure(1, dir.string(), opts);
        REQUIRE(files.size() == 1);
        std::ifstream in(files[0]);
        REQUIRE(in.good());
        std::string line;
        double last_positive = 0.0, first_zero = 10.0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("kT,", 0) == 0) continue;
            double kt, value;
            if (std::sscanf(line.c_str(), "%lf,%lf", &kt, &value) == 2) {
                if (value > 1e-12) last_positive = kt;
                else first_zero = std::min(first_zero, kt);
            }
        }
        const double kt_c = 1.0 / std::asinh(1.0);
        CHECK(last_positive <= kt_c + 1e-3);
        CHECK(first_zero >= kt_c - 1e-3);
    }
    SUBCASE("figure 4 low-temperature panel shows the step") {
        const auto files = reproduce_figure(4, dir.string(), opts);
        REQUIRE(files.size() == 3);
        std::ifstream in(files[0]); // kT = 0.01 panel
        std::string line;
        double at_low_d = 0.0, at_high_d = 0.0;
        while (std::getline(in, line)) {
            double d, value;
            if (line.empty() || line[0] == '#') continue;
            if (std::sscanf(line.c_str(), "%lf,%lf", &d, &value) == 2) {
                if (std::abs(d - 0.5) < 1e-9) at_low_d = value;
                if (std::abs(d - 1.5) < 1e-9) at_high_d = value;
            }
        }
        CHECK(at_low_d == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(5e-3));
        CHECK(at_high_d == doctest::Approx(1.0).epsilon(5e-3));
    }
    SUBCASE("figure 5 panel b starts near one half") {
        const auto files = reproduce_figure(5, dir.string(), opts);
        REQUIRE(files.size() == 4);
        std::ifstream in(files[1]); // D = 1.118
        std::string line;
        double first_value = -1.0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("kT,", 0) == 0) continue;
            double kt, value;
            if (std::sscanf(line.c_str(), "%lf,%lf", &kt, &value) == 2) {
                first_value = value;
                break;
            }
        }
        CHECK(first_value == doctest::Approx(0.5).epsilon(0.02));
    }
    SUBCASE("figures 6 and 7 need jz") {
        CHECK_THROWS_AS(reproduce_figure(6, dir.string(), opts), Error);
        FigureOptions with_jz = opts;
        with_jz.jz = 1.0;
        const auto files = reproduce_figure(6, dir.string(), with_jz);
        REQUIRE(files.size() == 1);
        CHECK(fs::file_size(files[0]) > 1000);
    }
    SUBCASE("figure files are byte-identical when reproducible") {
        const auto a = reproduce_figure(1, dir.string(), opts);
        std::ifstream fa(a[0]);
        std::stringstream sa;
        sa << fa.rdbuf();
        const auto b = reproduce_figure(1, dir.string(), opts);
        std::ifstream fb(b[0]);
        std::stringstream sb;
        sb << fb.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK(sa.str().find("# generated=") == std::string::npos);
    }
    SUBCASE("range check") {
        CHECK_THROWS_AS(reproduce_figure(0, dir.string(), opts), Error);
        CHECK_THROWS_AS(reproduce_figure(10, dir.string(), opts), Error);
    }
}
