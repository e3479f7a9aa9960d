// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#ifndef UEWPIOT_CLI_HPP
#define UEWPIOT_CLI_HPP

#include "uewpiot/linkbudget.hpp"
#include "uewpiot/mission.hpp"
#include "uewpiot/planner.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uewpiot::cli {

/// A numeric axis written either as a comma list or as start:stop:step.
struct Axis {
    std::string text;
    std::vector<double> values;

    static Axis parse(std::string_view text);
};

/// Every tunable of a run. Keys are `section.name`; see `describe_defaults`.
struct RunConfig {
    struct Link {
        double frequency_hz = 400e6;
        double los_a = linkbudget::kSuburbanLos.a;
        double los_b = linkbudget::kSuburbanLos.b;
        double excess_los_db = linkbudget::kCalibratedExcess.los_db;
        double excess_nlos_db = linkbudget::kCalibratedExcess.nlos_db;
        int rows = 4;
        int cols = 8;
        double spacing = 0.5;
        double tx_power_w = 10.0;
        double efficiency = linkbudget::kDefaultEfficiency;
        std::optional<double> threshold_dbm; ///< empty = band default
        double bandwidth_hz = 15e6;
        double noise_figure_db = linkbudget::kDefaultNoiseFigureDb;
    } link;

    struct Sweep {
        Axis distances_m = Axis::parse("1:50:1");
        /// UAV height during sweeps; flies at min(height, d) for shorter links.
        double height_m = 10.0;
        Axis eh_frequencies_hz = Axis::parse("400e6");
        Axis eh_elements = Axis::parse("1,16,32");
        Axis rate_frequencies_hz = Axis::parse("400e6,900e6,2.4e9");
        Axis rate_elements = Axis::parse("1,16,32");
    } sweep;

    struct Field {
        double width_m = 100.0;
        double height_m = 100.0;
        double density = 0.25;
        std::size_t node_count = 0; ///< 0 = use density
    } field;

    struct Plan {
        double eh_distance_m = 13.0;
        Axis heights_m = Axis::parse("10,5");
        planner::TourMode solver = planner::TourMode::Heuristic;
    } plan;

    struct Mission {
        double hover_height_m = 5.0;
        double wur_power_w = 1.0;
        double wake_threshold_dbm = -50.0;
        double wake_duration_s = 0.1;
        double payload_bits = 1e6;
        double latency_cap_s = 1.0;
        double weight_energy = 1.0;
        double weight_time = 1.0;
        double hover_power_w = 150.0;
        double cruise_power_w = 150.0;
        double cruise_speed_mps = 10.0;
    } mission;

    struct MonteCarlo {
        std::size_t seeds = 100;
        std::uint64_t first_seed = 1;
    } montecarlo;

    std::uint64_t seed = 1;
    std::filesystem::path out_dir = "out";

    /// Applies one `key = value` assignment. Throws ConfigError on unknown
    /// keys or malformed values.
    void set(std::string_view key, std::string_view value);
    std::string get(std::string_view key) const;

    linkbudget::RadioEnvironment environment(double frequency_hz) const;
    linkbudget::EhCircuit circuit(double frequency_hz) const;
    linkbudget::AntennaArray array() const;
    planner::NodeField node_field(std::uint64_t field_seed) const;
    mission::MissionScenario scenario(std::uint64_t field_seed) const;
};

/// All recognised keys, in output order.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines; `#` starts a comment.
RunConfig parse_config(std::istream& in, const RunConfig& base = {});
RunConfig load_config(const std::filesystem::path& path);

/// Round-trippable listing of every key with its current value.
std::string describe_config(const RunConfig& config);

// CSV headers, fixed column order.
inline constexpr std::string_view kEhSweepHeader =
    "distance_m,freq_hz,elements,received_dbm,harvested_dbm,threshold_dbm";
inline constexpr std::string_view kRateSweepHeader = "distance_m,freq_hz,elements,rate_bps";
inline constexpr std::string_view kTourHeader =
    "strategy,visit_order,x_m,y_m,group_id,group_size";
inline constexpr std::string_view kReportHeader =
    "node_id,group_id,x_m,y_m,slant_m,activated,harvested_power_w,harvested_energy_j,"
    "tx_power_w,rate_bps,tx_time_s,tx_energy_j,slot_start_s,bits_delivered";
inline constexpr std::string_view kMonteCarloHeader =
    "seed,strategy,height_m,radius_m,groups,length_m,saving_pct";

inline constexpr std::string_view kEhSweepFile = "eh_sweep.csv";
inline constexpr std::string_view kRateSweepFile = "rate_sweep.csv";
inline constexpr std::string_view kTourFile = "tour.csv";
inline constexpr std::string_view kReportFile = "report.csv";
inline constexpr std::string_view kMonteCarloFile = "montecarlo.csv";
inline constexpr std::string_view kSummaryFile = "summary.txt";

struct EhSweepRow {
    double distance_m;
    double freq_hz;
    int elements;
    double received_dbm;
    double harvested_dbm;
    double threshold_dbm;
};

struct RateSweepRow {
    double distance_m;
    double freq_hz;
    int elements;
    double rate_bps;
};

struct MonteCarloRow {
    std::uint64_t seed;
    std::string strategy;
    std::optional<double> height_m;
    double radius_m;
    std::size_t groups;
    double length_m;
    double saving;
};

/// Rows ordered by frequency, then elements, then distance.
std::vector<EhSweepRow> sweep_eh_rows(const RunConfig& config);
std::vector<RateSweepRow> sweep_rate_rows(const RunConfig& config);
std::vector<MonteCarloRow> monte_carlo_rows(const RunConfig& config);

std::string eh_sweep_csv(const std::vector<EhSweepRow>& rows);
std::string rate_sweep_csv(const std::vector<RateSweepRow>& rows);
std::string tour_csv(const planner::StrategyComparison& comparison);
std::string report_csv(const mission::MissionReport& report, const planner::NodeField& field);
std::string montecarlo_csv(const std::vector<MonteCarloRow>& rows);
std::string summary_text(const planner::StrategyComparison& comparison,
                         const mission::MissionReport* report,
                         const std::vector<MonteCarloRow>* monte_carlo);

/// Writes `content` to dir/name, creating dir. Throws IoError.
std::filesystem::path write_file(const std::filesystem::path& dir, std::string_view name,
                                 const std::string& content);

// Subcommands. Each returns the files written.
std::vector<std::filesystem::path> run_sweep_eh(const RunConfig& config);
std::vector<std::filesystem::path> run_sweep_rate(const RunConfig& config);
std::vector<std::filesystem::path> run_plan(const RunConfig& config);
std::vector<std::filesystem::path> run_simulate(const RunConfig& config);
std::vector<std::filesystem::path> run_reproduce(const RunConfig& config);

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitInfeasible = 3,
    kExitIo = 4,
};

/// Entry point shared by the executable and tests.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace uewpiot::cli

#endif
