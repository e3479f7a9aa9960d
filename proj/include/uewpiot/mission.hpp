// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#ifndef UEWPIOT_MISSION_HPP
#define UEWPIOT_MISSION_HPP

#include "uewpiot/linkbudget.hpp"
#include "uewpiot/planner.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace uewpiot::mission {

struct CostWeights {
    double energy_per_joule = 1.0;
    double time_per_second = 1.0;
};

/// Everything a mission run needs. Defaults are the calibrated 400 MHz,
/// 4x8 UPA configuration.
struct MissionScenario {
    planner::NodeField field;
    linkbudget::RadioEnvironment env = linkbudget::RadioEnvironment::calibrated(400e6);
    linkbudget::AntennaArray array{4, 8};
    linkbudget::EhCircuit circuit{400e6};
    double wpt_power_w = 10.0;
    double wur_power_w = 1.0;
    double wur_wake_threshold_dbm = -50.0;
    /// Wake-up signalling plus position feedback.
    double wake_duration_s = 0.1;
    double payload_bits = 1e6;
    double bandwidth_hz = 15e6;
    double noise_figure_db = linkbudget::kDefaultNoiseFigureDb;
    /// Cap on powering + data time per group.
    double latency_cap_s = 1.0;
    CostWeights weights;
    double hover_power_w = 150.0;
    double cruise_power_w = 150.0;
    double cruise_speed_mps = 10.0;
    double hover_height_m = 5.0;
    /// Slant range used for grouping; <= 0 derives it from the link budget.
    double eh_distance_m = 13.0;
    planner::TourMode tour_mode = planner::TourMode::Heuristic;

    /// Throws ConfigError on non-positive powers, speeds or caps, or on
    /// weights that are negative or both zero.
    void validate() const;
};

/// Hover point of the UAV: above `ground` at `height_m`.
struct HoverSite {
    planner::Point ground;
    double height_m = 0.0;
};

struct TdmaSlot {
    std::size_t node = 0;
    double start_s = 0.0;
    double duration_s = 0.0;
};

/// Group timeline measured from arrival at the hover point: wake-up, then
/// powering, then back-to-back TDMA slots.
struct PhaseSchedule {
    double wake_duration_s = 0.0;
    double powering_duration_s = 0.0;
    std::vector<TdmaSlot> slots;

    double data_duration_s() const;
};

struct TxRequirement {
    double time_s = 0.0;
    double energy_j = 0.0;
};

/// Per-node link quantities while the UAV hovers at a site.
struct NodeLink {
    std::size_t node = 0;
    double slant_m = 0.0;
    double harvested_power_w = 0.0;
    /// Energy-neutral: the node transmits with its harvested power.
    double tx_power_w = 0.0;
    double rate_bps = 0.0;
    TxRequirement tx;
};

struct PoweringPlan {
    double powering_s = 0.0;
    double data_s = 0.0;
    double cost = 0.0;
    std::vector<NodeLink> links;
    PhaseSchedule schedule;
};

/// Effective EH distance: the configured one, or derived at the hover height.
double effective_eh_distance(const MissionScenario& scenario);

linkbudget::LinkGeometry node_geometry(const MissionScenario& scenario, const HoverSite& site,
                                       std::size_t node);

double wur_received_dbm(const MissionScenario& scenario, const HoverSite& site, std::size_t node);

/// Members whose omnidirectional wake-up signal power is >= the wake threshold.
std::vector<std::size_t> wake_up(const MissionScenario& scenario, const HoverSite& site,
                                 std::span<const std::size_t> members);

NodeLink evaluate_link(const MissionScenario& scenario, const HoverSite& site, std::size_t node);

/// E_i = P_harvested,i * tau for each node, in input order.
std::vector<double> powering_phase(const MissionScenario& scenario, const HoverSite& site,
                                   std::span<const std::size_t> nodes, double tau_s);

/// Throws InfeasibleError when bits > 0 and the rate is zero.
TxRequirement required_tx(double payload_bits, double rate_bps, double tx_power_w);

/// Slots in ascending node order starting at `start_s`.
std::vector<TdmaSlot> tdma_schedule(std::span<const std::size_t> nodes,
                                    std::span<const double> tx_times_s, double start_s = 0.0);

/// w_E (P_wpt tau + P_hover (tau + T_data)) + w_T (tau + T_data)
double group_cost(const MissionScenario& scenario, double tau_s, double data_s);

/// Smallest powering time that lets every node fund its transmission; cost is
/// nondecreasing in tau so this is the optimum. Throws InfeasibleError naming
/// the binding node when tau + T_data exceeds the latency cap.
PoweringPlan optimize_powering(const MissionScenario& scenario, const HoverSite& site,
                               std::span<const std::size_t> activated);

struct NodeOutcome {
    std::size_t node = 0;
    std::size_t group = 0;
    bool activated = false;
    double slant_m = 0.0;
    double harvested_power_w = 0.0;
    double harvested_energy_j = 0.0;
    double tx_power_w = 0.0;
    double rate_bps = 0.0;
    double tx_time_s = 0.0;
    double tx_energy_j = 0.0;
    double slot_start_s = 0.0;
    double bits_delivered = 0.0;
};

struct GroupOutcome {
    std::size_t group = 0;
    std::size_t traversal_index = 0;
    std::vector<std::size_t> members;
    std::vector<std::size_t> activated;
    bool feasible = false;
    std::string diagnostic;
    PhaseSchedule schedule;
    double latency_s = 0.0;         ///< powering + data
    double supplied_energy_j = 0.0; ///< WPT energy radiated
    double wur_energy_j = 0.0;
    double hover_energy_j = 0.0;
    double cost = 0.0;

    double service_time_s() const;
};

struct MissionReport {
    double hover_height_m = 0.0;
    double eh_distance_m = 0.0;
    double radius_m = 0.0;
    planner::TourPlan tour;
    /// In visit order; `tour.order[k]` is groups[k].group.
    std::vector<GroupOutcome> groups;
    std::vector<NodeOutcome> nodes; ///< indexed by node id
    double flight_time_s = 0.0;
    double cruise_energy_j = 0.0;
    double service_time_s = 0.0;
    double total_time_s = 0.0;
    double uav_energy_j = 0.0;
    double total_cost = 0.0;
    double bits_delivered = 0.0;
    std::size_t infeasible_groups = 0;
};

/// Plans the grouped tour at the scenario's hover height and runs
/// wake-up / powering / TDMA at every traversal point in visit order.
/// Infeasible groups are reported and skipped.
MissionReport simulate_mission(const MissionScenario& scenario);

} // namespace uewpiot::mission

#endif
