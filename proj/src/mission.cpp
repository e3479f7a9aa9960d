// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/mission.hpp"

#include "uewpiot/error.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace uewpiot::mission {

namespace lb = linkbudget;

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(fmt::format("{} must be positive, got {}", what, value));
    }
}

} // namespace

void MissionScenario::validate() const {
    require_positive(wpt_power_w, "WPT power");
    require_positive(wur_power_w, "wake-up radio power");
    require_positive(hover_power_w, "hover power");
    require_positive(cruise_power_w, "cruise power");
    require_positive(cruise_speed_mps, "cruise speed");
    require_positive(latency_cap_s, "latency cap");
    require_positive(bandwidth_hz, "bandwidth");
    require_positive(hover_height_m, "hover height");
    if (!(wake_duration_s >= 0.0)) {
        throw ConfigError(fmt::format("wake duration must be >= 0, got {}", wake_duration_s));
    }
    if (!(payload_bits >= 0.0)) {
        throw ConfigError(fmt::format("payload must be >= 0 bits, got {}", payload_bits));
    }
    if (!(weights.energy_per_joule >= 0.0) || !(weights.time_per_second >= 0.0) ||
        (weights.energy_per_joule == 0.0 && weights.time_per_second == 0.0)) {
        throw ConfigError("cost weights must be >= 0 and not both zero");
    }
}

double PhaseSchedule::data_duration_s() const {
    double total = 0.0;
    for (const auto& s : slots) {
        total += s.duration_s;
    }
    return total;
}

double GroupOutcome::service_time_s() const { return schedule.wake_duration_s + latency_s; }

double effective_eh_distance(const MissionScenario& scenario) {
    if (scenario.eh_distance_m > 0.0) {
        return scenario.eh_distance_m;
    }
    const auto d = lb::achievable_eh_distance(scenario.wpt_power_w, scenario.array, scenario.circuit,
                                              scenario.env, scenario.hover_height_m);
    if (!d) {
        throw InfeasibleError(fmt::format("no node can reach the harvester threshold from {} m",
                                          scenario.hover_height_m));
    }
    return *d;
}

lb::LinkGeometry node_geometry(const MissionScenario& scenario, const HoverSite& site,
                               std::size_t node) {
    const auto& p = scenario.field.positions.at(node);
    return lb::LinkGeometry::from_ground(site.height_m, planner::distance(site.ground, p));
}

double wur_received_dbm(const MissionScenario& scenario, const HoverSite& site, std::size_t node) {
    return lb::received_power_dbm(scenario.wur_power_w, lb::AntennaArray::omni(), scenario.env,
                                  node_geometry(scenario, site, node));
}

std::vector<std::size_t> wake_up(const MissionScenario& scenario, const HoverSite& site,
                                 std::span<const std::size_t> members) {
    std::vector<std::size_t> active;
    for (std::size_t node : members) {
        if (wur_received_dbm(scenario, site, node) >= scenario.wur_wake_threshold_dbm) {
            active.push_back(node);
        }
    }
    return active;
}

NodeLink evaluate_link(const MissionScenario& scenario, const HoverSite& site, std::size_t node) {
    const auto geom = node_geometry(scenario, site, node);
    NodeLink link;
    link.node = node;
    link.slant_m = geom.slant_distance_m();
    link.harvested_power_w = lb::dbm_to_watts(lb::harvested_power_dbm(
        scenario.wpt_power_w, scenario.array, scenario.circuit, scenario.env, geom));
    link.tx_power_w = link.harvested_power_w;
    link.rate_bps = lb::achievable_data_rate(geom, scenario.env, scenario.array, scenario.circuit,
                                             scenario.wpt_power_w, scenario.bandwidth_hz,
                                             scenario.noise_figure_db);
    link.tx = required_tx(scenario.payload_bits, link.rate_bps, link.tx_power_w);
    return link;
}

std::vector<double> powering_phase(const MissionScenario& scenario, const HoverSite& site,
                                   std::span<const std::size_t> nodes, double tau_s) {
    if (!(tau_s >= 0.0)) {
        throw ConfigError(fmt::format("powering time must be >= 0, got {}", tau_s));
    }
    std::vector<double> energy;
    energy.reserve(nodes.size());
    for (std::size_t node : nodes) {
        const auto geom = node_geometry(scenario, site, node);
        const double p = lb::dbm_to_watts(lb::harvested_power_dbm(
            scenario.wpt_power_w, scenario.array, scenario.circuit, scenario.env, geom));
        energy.push_back(p * tau_s);
    }
    return energy;
}

TxRequirement required_tx(double payload_bits, double rate_bps, double tx_power_w) {
    if (payload_bits <= 0.0) {
        return {};
    }
    if (!(rate_bps > 0.0)) {
        throw InfeasibleError(
            fmt::format("link rate is zero; {} bits cannot be delivered", payload_bits));
    }
    const double t = payload_bits / rate_bps;
    return {t, tx_power_w * t};
}

std::vector<TdmaSlot> tdma_schedule(std::span<const std::size_t> nodes,
                                    std::span<const double> tx_times_s, double start_s) {
    if (nodes.size() != tx_times_s.size()) {
        throw ConfigError("tdma_schedule: node and time lists differ in length");
    }
    std::vector<std::size_t> idx(nodes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return nodes[a] < nodes[b]; });

    std::vector<TdmaSlot> slots;
    slots.reserve(nodes.size());
    double t = start_s;
    for (std::size_t k : idx) {
        if (!(tx_times_s[k] >= 0.0)) {
            throw ConfigError(fmt::format("negative transmit time for node {}", nodes[k]));
        }
        slots.push_back({nodes[k], t, tx_times_s[k]});
        t += tx_times_s[k];
    }
    return slots;
}

double group_cost(const MissionScenario& scenario, double tau_s, double data_s) {
    const double busy = tau_s + data_s;
    const double energy = scenario.wpt_power_w * tau_s + scenario.hover_power_w * busy;
    return scenario.weights.energy_per_joule * energy + scenario.weights.time_per_second * busy;
}

PoweringPlan optimize_powering(const MissionScenario& scenario, const HoverSite& site,
                               std::span<const std::size_t> activated) {
    if (activated.empty()) {
        throw InfeasibleError("no activated node in group");
    }
    PoweringPlan plan;
    plan.links.reserve(activated.size());
    std::size_t binding = activated.front();
    double tau = 0.0;
    for (std::size_t node : activated) {
        auto link = evaluate_link(scenario, site, node);
        if (link.tx.energy_j > 0.0) {
            const double need = link.tx.energy_j / link.harvested_power_w;
            if (need > tau) {
                tau = need;
                binding = node;
            }
        }
        plan.links.push_back(link);
    }
    // Division can land one ulp short of the requirement.
    for (const auto& link : plan.links) {
        while (link.harvested_power_w * tau < link.tx.energy_j) {
            tau = std::nextafter(tau, std::numeric_limits<double>::infinity());
        }
    }
    std::vector<double> times;
    times.reserve(plan.links.size());
    for (const auto& link : plan.links) {
        times.push_back(link.tx.time_s);
    }
    plan.schedule.wake_duration_s = scenario.wake_duration_s;
    plan.schedule.powering_duration_s = tau;
    plan.schedule.slots = tdma_schedule(activated, times, scenario.wake_duration_s + tau);
    plan.data_s = plan.schedule.data_duration_s();
    if (tau + plan.data_s > scenario.latency_cap_s) {
        throw InfeasibleError(fmt::format(
            "group needs {:.6f} s powering + {:.6f} s data, above the {:.6f} s latency cap "
            "(binding node {})",
            tau, plan.data_s, scenario.latency_cap_s, binding));
    }
    plan.powering_s = tau;
    plan.cost = group_cost(scenario, tau, plan.data_s);
    return plan;
}

MissionReport simulate_mission(const MissionScenario& scenario) {
    scenario.validate();
    const auto& field = scenario.field;

    MissionReport report;
    report.hover_height_m = scenario.hover_height_m;
    report.eh_distance_m = effective_eh_distance(scenario);
    report.radius_m = planner::coverage_radius(scenario.hover_height_m, report.eh_distance_m);

    const auto groups = planner::form_wpc_groups(field, report.radius_m);
    const auto points = planner::traversal_points(field, groups);
    report.tour = planner::plan_tour(points, scenario.tour_mode);

    report.nodes.resize(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
        report.nodes[i].node = i;
    }

    for (std::size_t gid : report.tour.order) {
        const auto& group = groups[gid];
        const HoverSite site{field.positions[group.traversal_index], scenario.hover_height_m};

        GroupOutcome out;
        out.group = gid;
        out.traversal_index = group.traversal_index;
        out.members = group.member_indices;
        out.schedule.wake_duration_s = scenario.wake_duration_s;
        out.wur_energy_j = scenario.wur_power_w * scenario.wake_duration_s;

        for (std::size_t node : group.member_indices) {
            auto& n = report.nodes[node];
            n.group = gid;
            n.slant_m = node_geometry(scenario, site, node).slant_distance_m();
        }

        out.activated = wake_up(scenario, site, group.member_indices);
        for (std::size_t node : out.activated) {
            report.nodes[node].activated = true;
        }

        try {
            const auto plan = optimize_powering(scenario, site, out.activated);
            const auto energy = powering_phase(scenario, site, out.activated, plan.powering_s);
            out.feasible = true;
            out.schedule = plan.schedule;
            out.latency_s = plan.powering_s + plan.data_s;
            out.supplied_energy_j = scenario.wpt_power_w * plan.powering_s;
            out.cost = plan.cost;
            for (std::size_t k = 0; k < plan.links.size(); ++k) {
                const auto& link = plan.links[k];
                auto& n = report.nodes[link.node];
                n.harvested_power_w = link.harvested_power_w;
                n.harvested_energy_j = energy[k];
                n.tx_power_w = link.tx_power_w;
                n.rate_bps = link.rate_bps;
                n.tx_time_s = link.tx.time_s;
                n.tx_energy_j = link.tx.energy_j;
                n.bits_delivered = scenario.payload_bits;
            }
            for (const auto& slot : plan.schedule.slots) {
                report.nodes[slot.node].slot_start_s = slot.start_s;
            }
        } catch (const InfeasibleError& e) {
            out.feasible = false;
            out.diagnostic = e.what();
            ++report.infeasible_groups;
        }
        out.hover_energy_j = scenario.hover_power_w * out.service_time_s();
        report.groups.push_back(std::move(out));
    }

    report.flight_time_s = report.tour.length / scenario.cruise_speed_mps;
    report.cruise_energy_j = scenario.cruise_power_w * report.flight_time_s;
    report.uav_energy_j = report.cruise_energy_j;
    for (const auto& g : report.groups) {
        report.service_time_s += g.service_time_s();
        report.uav_energy_j += g.wur_energy_j + g.supplied_energy_j + g.hover_energy_j;
        report.total_cost += g.cost;
    }
    report.total_time_s = report.flight_time_s + report.service_time_s;
    for (const auto& n : report.nodes) {
        report.bits_delivered += n.bits_delivered;
    }
    return report;
}

} // namespace uewpiot::mission
