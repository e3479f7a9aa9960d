// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/cli.hpp"
#include "uewpiot/error.hpp"
#include "uewpiot/linkbudget.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

using namespace uewpiot;
using namespace uewpiot::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("uewpiot_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "uewpiot");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text != nullptr) {
        *out_text = out.str();
    }
    return code;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("axis parsing") {
    const auto range = Axis::parse("1:50:1");
    CHECK(range.values.size() == 50);
    CHECK(range.values.front() == 1.0);
    CHECK(range.values.back() == 50.0);
    CHECK(Axis::parse("0:1:0.1").values.size() == 11);
    CHECK(Axis::parse("400e6, 900e6").values == std::vector<double>{400e6, 900e6});
    CHECK_THROWS_AS(Axis::parse("1:2"), ConfigError);
    CHECK_THROWS_AS(Axis::parse("1,x"), ConfigError);
    CHECK_THROWS_AS(Axis::parse(""), ConfigError);
}

TEST_CASE("config parsing") {
    std::istringstream in(R"(# comment
link.frequency_hz = 900e6
link.threshold_dbm = -10   # inline comment
plan.solver = exact

mission.payload_bits = 2e6
)");
    const auto c = parse_config(in);
    CHECK(c.link.frequency_hz == 900e6);
    CHECK(c.link.threshold_dbm == -10.0);
    CHECK(c.plan.solver == planner::TourMode::Exact);
    CHECK(c.mission.payload_bits == 2e6);

    std::istringstream unknown("link.frequncy_hz = 1\n");
    CHECK_THROWS_AS(parse_config(unknown), ConfigError);
    std::istringstream malformed("link.frequency_hz 1\n");
    CHECK_THROWS_AS(parse_config(malformed), ConfigError);
    std::istringstream bad_value("link.rows = four\n");
    CHECK_THROWS_AS(parse_config(bad_value), ConfigError);
}

TEST_CASE("defaults round-trip") {
    RunConfig modified;
    modified.link.threshold_dbm = -12.5;
    modified.sweep.distances_m = Axis::parse("2:10:2");
    modified.field.node_count = 17;
    const auto text = describe_config(modified);
    std::istringstream in(text);
    const auto parsed = parse_config(in);
    CHECK(describe_config(parsed) == text);
    for (const auto& key : config_keys()) {
        CHECK(text.find(key + " = ") != std::string::npos);
    }
    RunConfig defaults;
    CHECK(defaults.get("link.excess_los_db") == "23.06");
    CHECK(defaults.get("link.threshold_dbm") == "auto");
}

TEST_CASE("eh sweep") {
    RunConfig c;
    const auto rows = sweep_eh_rows(c);
    CHECK(rows.size() == 150);
    for (const auto& r : rows) {
        CHECK(r.harvested_dbm - r.received_dbm == doctest::Approx(10.0 * std::log10(0.3)).epsilon(1e-12));
        CHECK(r.threshold_dbm == -20.0);
    }
    // N = 32 series at 400 MHz crosses -20 dBm between 13 and 14 m, matching
    // the root finder.
    const auto eh = linkbudget::achievable_eh_distance(10.0, linkbudget::AntennaArray::linear(32),
                                                       linkbudget::EhCircuit(400e6),
                                                       linkbudget::RadioEnvironment::calibrated(400e6), 10.0);
    REQUIRE(eh);
    double last_above = 0.0;
    for (const auto& r : rows) {
        if (r.elements == 32 && r.harvested_dbm >= -20.0) {
            last_above = r.distance_m;
        }
    }
    CHECK(last_above == std::floor(*eh));

    const auto csv = eh_sweep_csv(rows);
    CHECK(csv.rfind(std::string(kEhSweepHeader) + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 151);
}

TEST_CASE("rate sweep") {
    RunConfig c;
    const auto rows = sweep_rate_rows(c);
    CHECK(rows.size() == 450);
    std::map<std::pair<double, int>, double> last;
    for (const auto& r : rows) {
        CHECK(r.rate_bps >= 0.0);
        const auto key = std::make_pair(r.freq_hz, r.elements);
        if (last.count(key) != 0u) {
            CHECK(r.rate_bps < last[key]);
        }
        last[key] = r.rate_bps;
        if (r.freq_hz == 900e6 && r.elements == 32 && r.distance_m == 10.0) {
            CHECK(r.rate_bps >= 50e6);
            CHECK(r.rate_bps <= 100e6);
        }
    }
}

TEST_CASE("unknown band without threshold is a configuration error") {
    RunConfig c;
    c.sweep.eh_frequencies_hz = Axis::parse("5.8e9");
    CHECK_THROWS_AS(sweep_eh_rows(c), ConfigError);
    c.link.threshold_dbm = -30.0;
    CHECK(sweep_eh_rows(c).size() == 150);
}

TEST_CASE("plan and simulate outputs") {
    RunConfig c;
    c.out_dir = scratch_dir("simulate");
    const auto files = run_simulate(c);
    REQUIRE(files.size() == 3);
    const auto tour = slurp(c.out_dir / std::string(kTourFile));
    const auto report = slurp(c.out_dir / std::string(kReportFile));
    const auto summary = slurp(c.out_dir / std::string(kSummaryFile));
    CHECK(tour.find("one-by-one,") != std::string::npos);
    CHECK(tour.find("H=10,") != std::string::npos);
    CHECK(tour.find("H=5,") != std::string::npos);
    CHECK(std::count(report.begin(), report.end(), '\n') == 26);

    // saving% recomputable from the summary's length column.
    std::stringstream ss(summary);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "strategy,height_m,radius_m,groups,length_m,saving_pct");
    double base = 0.0;
    for (int k = 0; k < 3; ++k) {
        std::getline(ss, line);
        const auto cells = split(line);
        REQUIRE(cells.size() == 6);
        const double length = std::stod(cells[4]);
        if (k == 0) {
            base = length;
        }
        CHECK(std::stod(cells[5]) == doctest::Approx(100.0 * (1.0 - length / base)).epsilon(1e-5));
    }

    // Byte-identical rerun.
    run_simulate(c);
    CHECK(slurp(c.out_dir / std::string(kTourFile)) == tour);
    CHECK(slurp(c.out_dir / std::string(kReportFile)) == report);
    CHECK(slurp(c.out_dir / std::string(kSummaryFile)) == summary);
    fs::remove_all(c.out_dir);
}

TEST_CASE("exit codes") {
    const auto dir = scratch_dir("exit");
    std::string out;
    CHECK(invoke({"defaults"}, &out) == kExitOk);
    CHECK(out.find("link.frequency_hz = ") != std::string::npos);

    CHECK(invoke({"--out", dir.string(), "sweep-eh"}) == kExitOk);
    CHECK(fs::exists(dir / std::string(kEhSweepFile)));

    CHECK(invoke({"--config", "/nonexistent/file.conf", "sweep-eh"}) == kExitConfig);
    CHECK(invoke({"bogus-command"}) == kExitConfig);

    const auto conf = dir / "bad_height.conf";
    {
        std::ofstream f(conf);
        f << "plan.heights_m = 10,20\n";
    }
    CHECK(invoke({"--config", conf.string(), "--out", dir.string(), "plan"}) == kExitInfeasible);

    const auto typo = dir / "typo.conf";
    {
        std::ofstream f(typo);
        f << "plan.heigths_m = 10\n";
    }
    CHECK(invoke({"--config", typo.string(), "plan"}) == kExitConfig);

    // A regular file where the output directory should be.
    const auto blocker = dir / "blocker";
    {
        std::ofstream f(blocker);
        f << "x";
    }
    CHECK(invoke({"--out", (blocker / "sub").string(), "sweep-rate"}) == kExitIo);

    CHECK(invoke({"--seed", "3", "--out", dir.string(), "plan"}) == kExitOk);
    fs::remove_all(dir);
}

} // TEST_SUITE
