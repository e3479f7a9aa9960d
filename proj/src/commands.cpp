// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/cli.hpp"
#include "uewpiot/error.hpp"
#include "uewpiot/parallel.hpp"

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <ostream>

namespace uewpiot::cli {

namespace lb = linkbudget;

namespace {

int element_count(double v) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e6) {
        throw ConfigError(fmt::format("element count must be a positive integer, got {}", v));
    }
    return static_cast<int>(v);
}

// Fixed-point output keeps reruns byte-identical.
std::string f6(double v) { return fmt::format("{:.6f}", v); }

struct SeriesPoint {
    double freq;
    int elements;
    double distance;
};

std::vector<SeriesPoint> sweep_grid(const Axis& freqs, const Axis& elements, const Axis& distances) {
    std::vector<SeriesPoint> grid;
    grid.reserve(freqs.values.size() * elements.values.size() * distances.values.size());
    for (double f : freqs.values) {
        for (double n : elements.values) {
            const int count = element_count(n);
            for (double d : distances.values) {
                grid.push_back({f, count, d});
            }
        }
    }
    return grid;
}

lb::LinkGeometry sweep_geometry(const RunConfig& config, double distance) {
    if (!(config.sweep.height_m >= 0.0)) {
        throw ConfigError(fmt::format("sweep.height_m must be >= 0, got {}", config.sweep.height_m));
    }
    if (!(distance > 0.0)) {
        throw ConfigError(fmt::format("sweep distances must be positive, got {}", distance));
    }
    return lb::LinkGeometry::from_slant(std::min(config.sweep.height_m, distance), distance);
}

std::string height_text(const std::optional<double>& h) { return h ? f6(*h) : std::string(); }

} // namespace

std::vector<EhSweepRow> sweep_eh_rows(const RunConfig& config) {
    const auto grid =
        sweep_grid(config.sweep.eh_frequencies_hz, config.sweep.eh_elements, config.sweep.distances_m);
    // Validate configuration up front so errors are reported deterministically.
    for (double f : config.sweep.eh_frequencies_hz.values) {
        lb::eh_input_threshold_dbm(config.circuit(f));
        config.environment(f);
    }
    std::vector<EhSweepRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto& p = grid[i];
        const auto env = config.environment(p.freq);
        const auto circuit = config.circuit(p.freq);
        const auto array = lb::AntennaArray::linear(p.elements);
        const auto geom = sweep_geometry(config, p.distance);
        rows[i] = {p.distance,
                   p.freq,
                   p.elements,
                   lb::received_power_dbm(config.link.tx_power_w, array, env, geom),
                   lb::harvested_power_dbm(config.link.tx_power_w, array, circuit, env, geom),
                   lb::eh_input_threshold_dbm(circuit)};
    });
    return rows;
}

std::vector<RateSweepRow> sweep_rate_rows(const RunConfig& config) {
    const auto grid = sweep_grid(config.sweep.rate_frequencies_hz, config.sweep.rate_elements,
                                 config.sweep.distances_m);
    for (double f : config.sweep.rate_frequencies_hz.values) {
        config.environment(f);
        config.circuit(f);
    }
    std::vector<RateSweepRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const auto& p = grid[i];
        const auto geom = sweep_geometry(config, p.distance);
        rows[i] = {p.distance, p.freq, p.elements,
                   lb::achievable_data_rate(geom, config.environment(p.freq),
                                            lb::AntennaArray::linear(p.elements),
                                            config.circuit(p.freq), config.link.tx_power_w,
                                            config.link.bandwidth_hz, config.link.noise_figure_db)};
    });
    return rows;
}

std::vector<MonteCarloRow> monte_carlo_rows(const RunConfig& config) {
    const auto& heights = config.plan.heights_m.values;
    // Surface infeasible heights before fanning out.
    for (double h : heights) {
        planner::coverage_radius(h, config.plan.eh_distance_m);
    }
    const std::size_t n = config.montecarlo.seeds;
    std::vector<planner::StrategyComparison> results(n);
    parallel_for(n, [&](std::size_t k) {
        const auto field = config.node_field(config.montecarlo.first_seed + k);
        results[k] =
            planner::compare_strategies(field, config.plan.eh_distance_m, heights, config.plan.solver);
    });

    std::vector<MonteCarloRow> rows;
    rows.reserve(n * (heights.size() + 1));
    for (std::size_t k = 0; k < n; ++k) {
        const auto& cmp = results[k];
        for (std::size_t s = 0; s < cmp.strategies.size(); ++s) {
            const auto& st = cmp.strategies[s];
            rows.push_back({config.montecarlo.first_seed + k, st.label, st.uav_height_m, st.radius_m,
                            st.groups.size(), st.length(), cmp.saving(s)});
        }
    }
    return rows;
}

std::string eh_sweep_csv(const std::vector<EhSweepRow>& rows) {
    std::string out(kEhSweepHeader);
    out += '\n';
    for (const auto& r : rows) {
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", f6(r.distance_m),
                       f6(r.freq_hz), r.elements, f6(r.received_dbm), f6(r.harvested_dbm),
                       f6(r.threshold_dbm));
    }
    return out;
}

std::string rate_sweep_csv(const std::vector<RateSweepRow>& rows) {
    std::string out(kRateSweepHeader);
    out += '\n';
    for (const auto& r : rows) {
        fmt::format_to(std::back_inserter(out), "{},{},{},{}\n", f6(r.distance_m), f6(r.freq_hz),
                       r.elements, f6(r.rate_bps));
    }
    return out;
}

std::string tour_csv(const planner::StrategyComparison& comparison) {
    std::string out(kTourHeader);
    out += '\n';
    for (const auto& st : comparison.strategies) {
        for (std::size_t k = 0; k < st.tour.order.size(); ++k) {
            const std::size_t gid = st.tour.order[k];
            const auto& p = st.tour.ordered_points[k];
            fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{}\n", st.label, k, f6(p.x),
                           f6(p.y), gid, st.groups[gid].member_indices.size());
        }
    }
    return out;
}

std::string report_csv(const mission::MissionReport& report, const planner::NodeField& field) {
    std::string out(kReportHeader);
    out += '\n';
    for (const auto& n : report.nodes) {
        const auto& p = field.positions.at(n.node);
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{:.12f},{:.12f},{:.12f},{},{:.12f},{:.12f},{},{}\n",
                       n.node, n.group, f6(p.x), f6(p.y), f6(n.slant_m), n.activated ? 1 : 0,
                       n.harvested_power_w, n.harvested_energy_j, n.tx_power_w, f6(n.rate_bps),
                       n.tx_time_s, n.tx_energy_j, f6(n.slot_start_s), f6(n.bits_delivered));
    }
    return out;
}

std::string montecarlo_csv(const std::vector<MonteCarloRow>& rows) {
    std::string out(kMonteCarloHeader);
    out += '\n';
    for (const auto& r : rows) {
        fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{}\n", r.seed, r.strategy,
                       height_text(r.height_m), f6(r.radius_m), r.groups, f6(r.length_m),
                       f6(100.0 * r.saving));
    }
    return out;
}

std::string summary_text(const planner::StrategyComparison& comparison,
                         const mission::MissionReport* report,
                         const std::vector<MonteCarloRow>* monte_carlo) {
    std::string out;
    auto line = [&out](const std::string& text) {
        out += text;
        out += '\n';
    };

    line("strategy,height_m,radius_m,groups,length_m,saving_pct");
    for (std::size_t s = 0; s < comparison.strategies.size(); ++s) {
        const auto& st = comparison.strategies[s];
        line(fmt::format("{},{},{},{},{},{}", st.label, height_text(st.uav_height_m), f6(st.radius_m),
             st.groups.size(), f6(st.length()), f6(100.0 * comparison.saving(s))));
    }

    if (report != nullptr) {
        line("");
        line(fmt::format("mission.hover_height_m = {}", f6(report->hover_height_m)));
        line(fmt::format("mission.radius_m = {}", f6(report->radius_m)));
        line(fmt::format("mission.groups = {}", report->groups.size()));
        line(fmt::format("mission.infeasible_groups = {}", report->infeasible_groups));
        line(fmt::format("mission.tour_length_m = {}", f6(report->tour.length)));
        line(fmt::format("mission.flight_time_s = {}", f6(report->flight_time_s)));
        line(fmt::format("mission.service_time_s = {}", f6(report->service_time_s)));
        line(fmt::format("mission.total_time_s = {}", f6(report->total_time_s)));
        line(fmt::format("mission.uav_energy_j = {}", f6(report->uav_energy_j)));
        line(fmt::format("mission.total_cost = {}", f6(report->total_cost)));
        line(fmt::format("mission.bits_delivered = {}", f6(report->bits_delivered)));
        for (const auto& g : report->groups) {
            if (!g.feasible) {
                line(fmt::format("mission.diagnostic group {}: {}", g.group, g.diagnostic));
            }
        }
    }

    if (monte_carlo != nullptr && !monte_carlo->empty()) {
        line("");
        line("montecarlo: strategy,mean_length_m,mean_saving_pct,mean_groups");
        std::vector<std::string> order;
        for (const auto& r : *monte_carlo) {
            if (std::find(order.begin(), order.end(), r.strategy) == order.end()) {
                order.push_back(r.strategy);
            }
        }
        for (const auto& label : order) {
            double length = 0.0;
            double saving = 0.0;
            double groups = 0.0;
            std::size_t n = 0;
            for (const auto& r : *monte_carlo) {
                if (r.strategy == label) {
                    length += r.length_m;
                    saving += r.saving;
                    groups += static_cast<double>(r.groups);
                    ++n;
                }
            }
            const double inv = 1.0 / static_cast<double>(n);
            line(fmt::format("montecarlo: {},{},{},{}", label, f6(length * inv), f6(100.0 * saving * inv),
                 f6(groups * inv)));
        }
    }
    return out;
}

std::filesystem::path write_file(const std::filesystem::path& dir, std::string_view name,
                                 const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
    }
    const auto path = dir / std::string(name);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
        throw IoError(fmt::format("write to '{}' failed", path.string()));
    }
    return path;
}

std::vector<std::filesystem::path> run_sweep_eh(const RunConfig& config) {
    return {write_file(config.out_dir, kEhSweepFile, eh_sweep_csv(sweep_eh_rows(config)))};
}

std::vector<std::filesystem::path> run_sweep_rate(const RunConfig& config) {
    return {write_file(config.out_dir, kRateSweepFile, rate_sweep_csv(sweep_rate_rows(config)))};
}

namespace {

planner::StrategyComparison plan_for(const RunConfig& config) {
    const auto field = config.node_field(config.seed);
    return planner::compare_strategies(field, config.plan.eh_distance_m,
                                       config.plan.heights_m.values, config.plan.solver);
}

} // namespace

std::vector<std::filesystem::path> run_plan(const RunConfig& config) {
    const auto comparison = plan_for(config);
    return {write_file(config.out_dir, kTourFile, tour_csv(comparison)),
            write_file(config.out_dir, kSummaryFile, summary_text(comparison, nullptr, nullptr))};
}

std::vector<std::filesystem::path> run_simulate(const RunConfig& config) {
    const auto comparison = plan_for(config);
    const auto scenario = config.scenario(config.seed);
    const auto report = mission::simulate_mission(scenario);
    return {write_file(config.out_dir, kTourFile, tour_csv(comparison)),
            write_file(config.out_dir, kReportFile, report_csv(report, scenario.field)),
            write_file(config.out_dir, kSummaryFile, summary_text(comparison, &report, nullptr))};
}

std::vector<std::filesystem::path> run_reproduce(const RunConfig& config) {
    std::vector<std::filesystem::path> written;
    auto append = [&written](std::vector<std::filesystem::path> more) {
        written.insert(written.end(), more.begin(), more.end());
    };
    append(run_sweep_eh(config));
    append(run_sweep_rate(config));

    const auto comparison = plan_for(config);
    const auto scenario = config.scenario(config.seed);
    const auto report = mission::simulate_mission(scenario);
    const auto mc = monte_carlo_rows(config);
    written.push_back(write_file(config.out_dir, kTourFile, tour_csv(comparison)));
    written.push_back(write_file(config.out_dir, kReportFile, report_csv(report, scenario.field)));
    written.push_back(write_file(config.out_dir, kMonteCarloFile, montecarlo_csv(mc)));
    written.push_back(write_file(config.out_dir, kSummaryFile, summary_text(comparison, &report, &mc)));
    return written;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"UAV wireless-powered IoT link budget, tour planner and mission simulator"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", seed, "node field seed (overrides run.seed)");
    app.add_option("--out", out_dir, "output directory (overrides run.out_dir)");

    auto* eh = app.add_subcommand("sweep-eh", "harvested power versus distance");
    auto* rate = app.add_subcommand("sweep-rate", "achievable data rate versus distance");
    auto* plan = app.add_subcommand("plan", "compare one-by-one and grouped tours");
    auto* sim = app.add_subcommand("simulate", "plan and run the full mission");
    auto* repro = app.add_subcommand("reproduce", "regenerate every figure data file");
    auto* defaults = app.add_subcommand("defaults", "print every configuration key and its default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (seed) {
            config.seed = *seed;
        }
        if (!out_dir.empty()) {
            config.out_dir = out_dir;
        }

        if (*defaults) {
            out << describe_config(RunConfig{});
            return kExitOk;
        }

        std::vector<std::filesystem::path> written;
        if (*eh) {
            written = run_sweep_eh(config);
        } else if (*rate) {
            written = run_sweep_rate(config);
        } else if (*plan) {
            written = run_plan(config);
        } else if (*sim) {
            written = run_simulate(config);
        } else if (*repro) {
            written = run_reproduce(config);
        }
        for (const auto& p : written) {
            out << p.string() << '\n';
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CapabilityError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const GeometryError& e) {
        err << "infeasible geometry: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
}

} // namespace uewpiot::cli
