// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "oracles.hpp"

#include "uewpiot/cli.hpp"
#include "uewpiot/error.hpp"
#include "uewpiot/linkbudget.hpp"
#include "uewpiot/mission.hpp"
#include "uewpiot/planner.hpp"

#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace uewpiot;
namespace lb = uewpiot::linkbudget;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            detail = what;
        }
        pass = pass && ok;
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> body;
};

bool near(double value, double expected, double tol) { return std::abs(value - expected) <= tol; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome upa_sizing() {
    Outcome o;
    struct Case {
        double f;
        double w;
        double h;
    };
    for (const Case c : {Case{400e6, 1.125, 2.625}, Case{900e6, 0.5, 1.1667}, Case{2.4e9, 0.1875, 0.4375}}) {
        const auto size = lb::upa_physical_size(lb::RadioEnvironment::calibrated(c.f), 4, 8);
        o.require(near(size.width_m, c.w, 0.005) && near(size.height_m, c.h, 0.005),
                  fmt::format("{:g} Hz: {:.4f}x{:.4f} m", c.f, size.width_m, size.height_m));
        if (o.pass) {
            o.detail += fmt::format("{}{:g} MHz {:.4f}x{:.4f} m", o.detail.empty() ? "" : ", ", c.f / 1e6,
                                    size.width_m, size.height_m);
        }
    }
    return o;
}

Outcome coverage_radii() {
    Outcome o;
    const double r10 = planner::coverage_radius(10.0, 13.0);
    const double r5 = planner::coverage_radius(5.0, 13.0);
    o.require(near(r10, 8.3066, 0.01), fmt::format("R(10,13) = {:.4f}", r10));
    o.require(near(r5, 12.0, 0.01), fmt::format("R(5,13) = {:.4f}", r5));
    if (o.pass) {
        o.detail = fmt::format("R(10,13) = {:.4f} m, R(5,13) = {:.4f} m", r10, r5);
    }
    return o;
}

Outcome calibration_targets() {
    Outcome o;
    const cli::RunConfig config;
    const auto eh = lb::achievable_eh_distance(config.link.tx_power_w, lb::AntennaArray::linear(32),
                                               lb::EhCircuit(400e6, 0.3), config.environment(400e6), 10.0);
    o.require(eh && *eh >= 10.0 && *eh <= 16.0, "EH distance outside [10, 16] m");
    const auto geom = lb::LinkGeometry::from_slant(10.0, 10.0);
    const double rate = lb::achievable_data_rate(geom, config.environment(900e6), lb::AntennaArray::linear(32),
                                                 lb::EhCircuit(900e6, 0.3), config.link.tx_power_w, 15e6,
                                                 config.link.noise_figure_db);
    o.require(rate >= 50e6 && rate <= 100e6, fmt::format("rate {:.3f} Mbps", rate / 1e6));
    if (o.pass) {
        o.detail = fmt::format("d_EH = {:.3f} m, rate = {:.3f} Mbps (eta_LoS {} dB, eta_NLoS {} dB, NF {} dB)",
                               *eh, rate / 1e6, config.link.excess_los_db, config.link.excess_nlos_db,
                               config.link.noise_figure_db);
    }
    return o;
}

Outcome link_properties() {
    Outcome o;
    std::mt19937_64 rng(2024);
    const std::vector<double> bands{400e6, 900e6, 2.4e9};
    const std::vector<int> sizes{1, 2, 4, 8, 16, 32, 64};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int roots = 0;
    for (int trial = 0; trial < 10000 && o.pass; ++trial) {
        const double f = bands[rng() % bands.size()];
        const int n = sizes[rng() % sizes.size()];
        const double eff = 0.05 + 0.9 * unit(rng);
        const double tx = 0.1 + 20.0 * unit(rng);
        const double h = 1.0 + 30.0 * unit(rng);
        const double d = h + 100.0 * unit(rng);
        const auto env = (trial % 2 == 0) ? lb::RadioEnvironment::calibrated(f) : lb::RadioEnvironment::suburban(f);
        const lb::EhCircuit circuit(f, eff);
        const lb::AntennaArray array = lb::AntennaArray::linear(n);
        const auto geom = lb::LinkGeometry::from_slant(h, d);

        const double rx = lb::received_power_dbm(tx, array, env, geom);
        const double hv = lb::harvested_power_dbm(tx, array, circuit, env, geom);
        o.require(hv == rx + 10.0 * std::log10(eff), fmt::format("identity broken at trial {}", trial));

        const auto farther = lb::LinkGeometry::from_slant(h, d * 1.01 + 0.01);
        o.require(lb::received_power_dbm(tx, array, env, farther) < rx,
                  fmt::format("not strictly decreasing at trial {}", trial));

        const int n2 = sizes[rng() % sizes.size()];
        const double rx2 = lb::received_power_dbm(tx, lb::AntennaArray::linear(n2), env, geom);
        o.require(near(rx2 - rx, 10.0 * std::log10(static_cast<double>(n2) / n), 1e-9),
                  fmt::format("array-gain spacing off at trial {}", trial));

        if (trial % 10 == 0) {
            const auto root = lb::achievable_eh_distance(tx, array, circuit, env, h);
            if (root && *root > h && *root < 1e5) {
                const double at_root =
                    lb::harvested_power_dbm(tx, array, circuit, env, lb::LinkGeometry::from_slant(h, *root));
                o.require(near(at_root, lb::eh_input_threshold_dbm(circuit), 0.01),
                          fmt::format("root residual {:.4f} dB at trial {}",
                                      at_root - lb::eh_input_threshold_dbm(circuit), trial));
                ++roots;
            }
        }
    }
    if (o.pass) {
        o.detail = fmt::format("10000 cases, {} EH roots checked", roots);
    }
    return o;
}

Outcome monte_carlo_ordering() {
    Outcome o;
    cli::RunConfig config;
    config.montecarlo.seeds = 100;
    config.plan.eh_distance_m = 13.0;
    config.plan.heights_m = cli::Axis::parse("10,5");
    config.field.width_m = 100.0;
    config.field.height_m = 100.0;
    config.field.density = 0.25;
    config.field.node_count = 0;
    const auto rows = cli::monte_carlo_rows(config);

    std::map<std::string, double> length;
    std::map<std::string, double> saving;
    std::map<std::string, int> count;
    for (const auto& r : rows) {
        length[r.strategy] += r.length_m;
        saving[r.strategy] += r.saving;
        ++count[r.strategy];
    }
    o.require(count["one-by-one"] == 100 && count["H=10"] == 100 && count["H=5"] == 100,
              "unexpected Monte-Carlo row count");
    if (!o.pass) {
        return o;
    }
    const double l0 = length["one-by-one"] / 100.0;
    const double l10 = length["H=10"] / 100.0;
    const double l5 = length["H=5"] / 100.0;
    const double s5 = saving["H=5"] / 100.0;
    o.require(l0 > l10 && l10 > l5, fmt::format("means {:.3f} / {:.3f} / {:.3f}", l0, l10, l5));
    o.require(s5 >= 0.02 && s5 <= 0.30, fmt::format("mean H=5 saving {:.2f}%", 100.0 * s5));
    o.detail = fmt::format("mean L = {:.3f} / {:.3f} / {:.3f} m, mean H=5 saving {:.2f}%", l0, l10, l5, 100.0 * s5);
    return o;
}

Outcome subset_dominance() {
    Outcome o;
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 50 && o.pass; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        const auto t = oracle::random_points(rng, n);
        std::vector<planner::Point> s;
        for (const auto& p : t) {
            if (rng() & 1u) {
                s.push_back(p);
            }
        }
        const double over_s = planner::plan_tour(s, planner::TourMode::Exact).length;
        const double over_t = planner::plan_tour(t, planner::TourMode::Exact).length;
        o.require(over_s <= over_t + 1e-9,
                  fmt::format("instance {}: L(S) {:.6f} > L(T) {:.6f}", trial, over_s, over_t));
    }
    if (o.pass) {
        o.detail = "50/50 instances";
    }
    return o;
}

Outcome optimizer_equivalence() {
    Outcome o;
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int feasible = 0;
    for (int trial = 0; trial < 100 && o.pass; ++trial) {
        mission::MissionScenario s;
        const double h = 3.0 + 7.0 * unit(rng);
        const std::size_t members = 1 + rng() % 5;
        std::vector<planner::Point> pts{{50.0, 50.0}};
        for (std::size_t k = 1; k < members; ++k) {
            const double r = 12.0 * std::sqrt(unit(rng));
            const double phi = 2.0 * oracle::kPi * unit(rng);
            pts.push_back({50.0 + r * std::cos(phi), 50.0 + r * std::sin(phi)});
        }
        s.field = planner::NodeField{100.0, 100.0, 0, pts};
        s.hover_height_m = h;
        s.payload_bits = 1e4 + 3e7 * unit(rng);
        s.latency_cap_s = 0.05 + 1.5 * unit(rng);
        s.weights = {0.1 + unit(rng), 0.1 + 10.0 * unit(rng)};

        const oracle::HandLink hand{s.env.carrier_frequency_hz(), s.env.los().a, s.env.los().b,
                                    s.env.excess().los_db, s.env.excess().nlos_db};
        std::vector<double> power;
        std::vector<double> rate;
        for (const auto& p : pts) {
            const double d = std::hypot(std::hypot(p.x - 50.0, p.y - 50.0), h);
            power.push_back(std::pow(10.0, (hand.harvested_dbm(s.wpt_power_w, 32, 0.3, h, d) - 30.0) / 10.0));
            rate.push_back(hand.rate_bps(s.wpt_power_w, 32, 0.3, h, d, s.bandwidth_hz, s.noise_figure_db));
        }
        const auto grid = oracle::grid_search_powering(power, rate, s.payload_bits, s.wpt_power_w, s.hover_power_w,
                                                       s.weights.energy_per_joule, s.weights.time_per_second,
                                                       s.latency_cap_s);

        std::vector<std::size_t> all(pts.size());
        std::iota(all.begin(), all.end(), 0);
        const mission::HoverSite site{pts.front(), h};
        bool ok = true;
        mission::PoweringPlan plan;
        try {
            plan = mission::optimize_powering(s, site, all);
        } catch (const InfeasibleError&) {
            ok = false;
        }
        o.require(ok == grid.feasible, fmt::format("group {}: verdict {} vs grid {}", trial, ok, grid.feasible));
        if (ok && grid.feasible) {
            ++feasible;
            o.require(std::abs(plan.powering_s - grid.tau) <= 1e-4,
                      fmt::format("group {}: tau {:.6f} vs grid {:.6f}", trial, plan.powering_s, grid.tau));
            const double slack = s.weights.energy_per_joule * (s.wpt_power_w + s.hover_power_w) * 1e-4 +
                                 s.weights.time_per_second * 1e-4;
            o.require(plan.cost <= grid.cost + 1e-9 && grid.cost - plan.cost <= slack,
                      fmt::format("group {}: cost {:.6f} vs grid {:.6f}", trial, plan.cost, grid.cost));
        }
    }
    if (o.pass) {
        o.detail = fmt::format("100 groups, {} feasible, {} infeasible", feasible, 100 - feasible);
    }
    return o;
}

Outcome mission_invariants() {
    Outcome o;
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t groups = 0;
    for (int trial = 0; trial < 50 && o.pass; ++trial) {
        mission::MissionScenario s;
        const std::uint64_t seed = rng();
        s.field = planner::generate_nodes(100.0, 100.0, 0.25, seed, std::size_t{10 + rng() % 31});
        s.hover_height_m = 2.0 + 10.0 * unit(rng);
        s.payload_bits = 1e5 + 5e6 * unit(rng);
        s.latency_cap_s = 0.05 + 2.0 * unit(rng);
        s.tour_mode = planner::TourMode::Heuristic;
        const auto report = mission::simulate_mission(s);

        for (const auto& n : report.nodes) {
            o.require(n.tx_energy_j <= n.harvested_energy_j,
                      fmt::format("scenario {} node {}: spent > harvested", trial, n.node));
        }
        double service = 0.0;
        for (const auto& g : report.groups) {
            ++groups;
            service += g.service_time_s();
            const auto& slots = g.schedule.slots;
            for (std::size_t k = 1; k < slots.size(); ++k) {
                o.require(slots[k].start_s >= slots[k - 1].start_s + slots[k - 1].duration_s,
                          fmt::format("scenario {} group {}: overlapping slots", trial, g.group));
            }
        }
        o.require(report.service_time_s == service && report.total_time_s == report.flight_time_s + service,
                  fmt::format("scenario {}: time decomposition", trial));
        const auto again = mission::simulate_mission(s);
        o.require(cli::report_csv(report, s.field) == cli::report_csv(again, s.field),
                  fmt::format("scenario {}: report differs on rerun", trial));
    }
    if (o.pass) {
        o.detail = fmt::format("50 scenarios, {} groups", groups);
    }
    return o;
}

Outcome reproduce_outputs() {
    Outcome o;
    const auto root = fs::temp_directory_path() / "uewpiot_acceptance_reproduce";
    fs::remove_all(root);
    cli::RunConfig a;
    a.out_dir = root / "a";
    cli::RunConfig b;
    b.out_dir = root / "b";
    cli::run_reproduce(a);
    cli::run_reproduce(b);
    for (auto name : {cli::kEhSweepFile, cli::kRateSweepFile, cli::kTourFile, cli::kReportFile,
                      cli::kMonteCarloFile}) {
        const std::string file(name);
        const bool exists = fs::exists(a.out_dir / file) && fs::file_size(a.out_dir / file) > 0;
        o.require(exists, file + " missing");
        o.require(exists && slurp(a.out_dir / file) == slurp(b.out_dir / file), file + " differs between runs");
    }
    if (o.pass) {
        o.detail = "5 CSVs, byte-identical across two runs";
    }
    fs::remove_all(root);
    return o;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "UPA physical size", 1.0, upa_sizing},
        {2, "coverage radii", 1.0, coverage_radii},
        {3, "calibration targets", 1.0, calibration_targets},
        {4, "link-budget properties", 10.0, link_properties},
        {5, "Monte-Carlo strategy ordering", 60.0, monte_carlo_ordering},
        {6, "exact-solver subset dominance", 60.0, subset_dominance},
        {7, "optimizer vs grid search", 300.0, optimizer_equivalence},
        {8, "mission invariants", 300.0, mission_invariants},
        {9, "reproduce outputs", 300.0, reproduce_outputs},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.body();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.pass && elapsed > c.budget_s) {
            outcome = {false, fmt::format("runtime {:.2f} s over {:.0f} s budget", elapsed, c.budget_s)};
        }
        failed += outcome.pass ? 0 : 1;
        std::cout << fmt::format("{} criterion {}: {} [{:.3f} s] {}\n", outcome.pass ? "PASS" : "FAIL", c.id,
                                 c.name, elapsed, outcome.detail);
    }
    std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                             criteria.size());
    return failed == 0 ? 0 : 1;
}
