#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "output.hpp"

// End-to-end checks of the installed command-line tool. QMEM_BIN is the
// path to the built binary, injected by the build.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stderr_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path err = fs::path("cli_scratch") / "stderr.txt";
    const std::string cmd =
        std::string(QMEM_BIN) + " " + args + " 2>" + err.string();
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(err);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stderr_text = ss.str();
    return r;
}

fs::path scratch(const std::string& name) {
    fs::create_directories("cli_scratch");
    return fs::path("cli_scratch") / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// body = everything after the '#' manifest line
std::string csv_body(const fs::path& p) {
    const std::string all = slurp(p);
    const auto nl = all.find('\n');
    REQUIRE(nl != std::string::npos);
    REQUIRE(all.rfind("# ", 0) == 0);
    return all.substr(nl + 1);
}

std::vector<std::vector<double>> csv_rows(const fs::path& p) {
    std::istringstream body(csv_body(p));
    std::string line;
    std::getline(body, line);  // header
    std::vector<std::vector<double>> rows;
    while (std::getline(body, line)) {
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

void write_design_params(const fs::path& p, bool with_cm = true,
                         bool drop_alpha = false, double alpha = 0.1) {
    json j;
    j["linewidth"] = 1e4;
    if (!drop_alpha) j["alpha_L"] = alpha;
    j["finesse"] = 1000.0;
    j["round_trip_length"] = 0.1;
    j["wavelength"] = 606e-9;
    j["cross_section"] = 1e-7;
    j["sample_length"] = 1e-3;
    if (with_cm) j["Cm"] = 100.0;
    std::ofstream out(p);
    out << j.dump(2);
}

}  // namespace

TEST_CASE("cli design command") {
    const auto params = scratch("design-cell.json");
    write_design_params(params);
    const auto out = scratch("design.json");

    const auto r = run_cli("design --params " + params.string() + " --out " +
                           out.string());
    CHECK(r.exit_code == 0);

    const json rep = json::parse(slurp(out));
    CHECK(rep["T2_us"].get<double>() == doctest::Approx(31.831).epsilon(1e-3));
    CHECK(std::abs(rep["window_2T_us"].get<double>() / 1.25 - 1.0) < 0.02);
    CHECK(std::abs(rep["pulse_duration_ns"].get<double>() / 320.0 - 1.0) < 0.02);
    CHECK(std::abs(rep["efficiency_large_cm"].get<double>() - 0.90) < 0.005);
    CHECK(rep["cm_inconsistent"].get<bool>());
    CHECK(rep["Cm_derived"].get<double>() ==
          doctest::Approx(15.915494309189535).epsilon(1e-9));
    // manifest sibling exists and names the command
    const json man = json::parse(slurp(out.string() + ".manifest.json"));
    CHECK(man["command"] == "design");
    CHECK(man["version"] == "0.1.0");

    // text format
    const auto txt = scratch("design.txt");
    const auto r2 = run_cli("design --params " + params.string() + " --out " +
                            txt.string() + " --format text");
    CHECK(r2.exit_code == 0);
    CHECK(slurp(txt).find("pulse duration") != std::string::npos);
}

TEST_CASE("cli design rejects bad input") {
    const auto missing = scratch("missing-key.json");
    write_design_params(missing, true, /*drop_alpha=*/true);
    auto r = run_cli("design --params " + missing.string() + " --out " +
                     scratch("never.json").string());
    CHECK(r.exit_code == 1);
    CHECK(r.stderr_text.find("alpha_L") != std::string::npos);

    const auto zero = scratch("zero-alpha.json");
    write_design_params(zero, true, false, 0.0);
    r = run_cli("design --params " + zero.string() + " --out " +
                scratch("never.json").string());
    CHECK(r.exit_code == 1);

    r = run_cli("design --params " + scratch("nonexistent.json").string() +
                " --out " + scratch("never.json").string());
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli schedule command") {
    const auto out = scratch("schedule.csv");
    const auto r = run_cli(
        "schedule --cm 100 --t-peak optimal --samples 200 --finesse 1000 "
        "--out " +
        out.string());
    CHECK(r.exit_code == 0);
    const auto rows = csv_rows(out);
    REQUIRE(rows.size() == 200);
    // final sample sits at C = Cm
    CHECK(rows.back()[1] == doctest::Approx(100.0).epsilon(1e-9));
    CHECK(rows.back()[2] == 0.0);  // on resonance
    // t runs over [0, 2T]
    CHECK(rows.front()[0] == 0.0);
    CHECK(rows.back()[0] == doctest::Approx(2 * 0.019741546560257098).epsilon(1e-6));
    // the path offset stays a small fraction of a wavelength
    for (const auto& row : rows) CHECK(row[4] < 0.05);

    // determinism: identical bodies on a second run
    const auto out2 = scratch("schedule2.csv");
    run_cli("schedule --cm 100 --t-peak optimal --samples 200 --finesse 1000 "
            "--out " +
            out2.string());
    CHECK(csv_body(out) == csv_body(out2));

    // two-row edge case
    const auto edge = scratch("schedule-edge.csv");
    const auto r3 = run_cli(
        "schedule --cm 100 --t-peak 0.01 --samples 2 --finesse 1000 --out " +
        edge.string());
    CHECK(r3.exit_code == 0);
    CHECK(csv_rows(edge).size() == 2);
}

TEST_CASE("cli schedule warns when infeasible") {
    const auto out = scratch("schedule-infeasible.csv");
    // ten optimal windows: the needed finesse blows up exponentially
    const auto r = run_cli(
        "schedule --cm 100 --t-peak 0.2 --samples 50 --finesse 1000 --out " +
        out.string());
    CHECK(r.exit_code == 0);  // warning, still written
    CHECK(r.stderr_text.find("infeasible") != std::string::npos);
    const auto rows = csv_rows(out);
    REQUIRE(rows.size() == 50);
    CHECK(std::isnan(rows.front()[2]));  // unreachable start reported as nan
    CHECK_FALSE(std::isnan(rows.back()[2]));
}

TEST_CASE("cli simulate emit matches the envelope") {
    const auto out = scratch("emit.csv");
    const auto r = run_cli("simulate --mode emit --cm 100 --t-peak optimal "
                           "--out " +
                           out.string());
    CHECK(r.exit_code == 0);
    const json sum = json::parse(slurp(scratch("emit.summary.json")));
    CHECK(sum["envelope_max_dev_over_Fm"].get<double>() < 1e-6);
    CHECK(sum["ledger_residual"].get<double>() < 1e-8);
}

TEST_CASE("cli simulate full cycle reports the headline efficiency") {
    const auto out = scratch("cycle.csv");
    const auto r = run_cli(
        "simulate --mode full_cycle --cm 100 --t-peak optimal --finesse 1000 "
        "--t2-us 31.83 --out " +
        out.string());
    CHECK(r.exit_code == 0);
    const json sum = json::parse(slurp(scratch("cycle.summary.json")));
    CHECK(std::abs(sum["efficiency_numeric"].get<double>() -
                   0.90586331755380648) < 1e-3);
    CHECK(sum["bookkeeping_residual"].get<double>() < 1e-6);
    CHECK(sum["ledger_residual_storage"].get<double>() < 1e-8);
    CHECK(sum["ledger_residual_retrieval"].get<double>() < 1e-8);
    // CSV with cavity columns joined: t, C, theta, beta, F_in, ...
    const auto rows = csv_rows(out);
    CHECK(rows.front().size() == 9);
    // times strictly increase through both windows
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i][0] > rows[i - 1][0]);
}

TEST_CASE("cli simulate store with jitter") {
    const auto out = scratch("store.csv");
    const auto r = run_cli(
        "simulate --mode store --cm 100 --t-peak optimal --jitter-delta 0.002 "
        "--out " +
        out.string());
    CHECK(r.exit_code == 0);
    const json sum = json::parse(slurp(scratch("store.summary.json")));
    const double p0 = sum["P0"].get<double>();
    const double p0_aligned = sum["P0_predicted_aligned"].get<double>();
    const double ratio = sum["overlap_ratio_predicted"].get<double>();
    CHECK(p0 / p0_aligned == doctest::Approx(ratio).epsilon(1e-5));
}

TEST_CASE("cli exit code 2 on ledger failure") {
    const auto out = scratch("fail.csv");
    const auto r = run_cli(
        "simulate --mode emit --cm 100 --t-peak optimal --ledger-tol 1e-30 "
        "--out " +
        out.string());
    CHECK(r.exit_code == 2);
    CHECK(fs::exists(out));  // outputs still written
}

TEST_CASE("cli jitter command") {
    const auto out = scratch("jitter.csv");
    const auto r = run_cli("jitter --cm 100 --grid-max 0.5 --grid-points 21 "
                           "--out " +
                           out.string());
    CHECK(r.exit_code == 0);
    const auto rows = csv_rows(out);
    REQUIRE(rows.size() == 21);
    // center row: delta = 0, ratio exactly 1
    CHECK(rows[10][0] == 0.0);
    CHECK(rows[10][2] == 1.0);
    // symmetric under delta -> -delta
    for (int i = 0; i < 10; ++i)
        CHECK(rows[i][2] == doctest::Approx(rows[20 - i][2]).epsilon(1e-12));
    const json sum = json::parse(slurp(scratch("jitter.summary.json")));
    CHECK(std::abs(sum["gdCm_at_0.90_efficiency"].get<double>() - 0.35) < 0.05);
    CHECK(std::abs(sum["gdCm_at_0.99_efficiency"].get<double>() - 0.10) < 0.02);
}

TEST_CASE("csv cells round-trip doubles exactly") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, i % 60 - 30);
        const double back = std::stod(qmem_cli::fmt17(x));
        CHECK(back == x);
    }
    CHECK(qmem_cli::fmt17(0.1) == "0.10000000000000001");
}

TEST_CASE("cli simulate accepts the quadrature route") {
    const auto out = scratch("emit-quad.csv");
    // coarse but valid grid keeps the nested quadrature quick; the
    // sampled-series ledger is resolution-limited there, so widen its
    // tolerance accordingly
    const auto r = run_cli(
        "simulate --mode emit --cm 100 --t-peak optimal --method closed-form "
        "--dt 9.8e-5 --ledger-tol 1e-4 --out " +
        out.string());
    CHECK(r.exit_code == 0);
    const json sum = json::parse(slurp(scratch("emit-quad.summary.json")));
    CHECK(sum["envelope_max_dev_over_Fm"].get<double>() < 1e-8);
}

TEST_CASE("cli audit command") {
    const auto out = scratch("audit.csv");
    const auto r = run_cli("audit --cm-list 100,1000,10000 --out " +
                           out.string());
    CHECK(r.exit_code == 0);
    const auto rows = csv_rows(out);
    REQUIRE(rows.size() == 3);
    // relative gaps (columns 4, 8, 12, 16) shrink monotonically
    for (std::size_t col : {4u, 8u, 12u, 16u}) {
        CHECK(rows[1][col] < rows[0][col]);
        CHECK(rows[2][col] < rows[1][col]);
    }
}
