// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/cli.hpp"
#include "uewpiot/error.hpp"
#include "uewpiot/linkbudget.hpp"
#include "uewpiot/mission.hpp"
#include "uewpiot/planner.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace uewpiot;
namespace lb = uewpiot::linkbudget;

namespace {

using XY = std::pair<double, double>;

std::vector<planner::Point> to_points(const std::vector<XY>& xy) {
    std::vector<planner::Point> pts;
    pts.reserve(xy.size());
    for (const auto& [x, y] : xy) {
        pts.push_back({x, y});
    }
    return pts;
}

std::vector<XY> to_xy(const std::vector<planner::Point>& pts) {
    std::vector<XY> xy;
    xy.reserve(pts.size());
    for (const auto& p : pts) {
        xy.emplace_back(p.x, p.y);
    }
    return xy;
}

py::dict tour_dict(const planner::TourPlan& t) {
    py::dict d;
    d["order"] = t.order;
    d["points"] = to_xy(t.ordered_points);
    d["length"] = t.length;
    return d;
}

py::list groups_list(const std::vector<planner::WpcGroup>& groups) {
    py::list out;
    for (const auto& g : groups) {
        py::dict d;
        d["traversal_index"] = g.traversal_index;
        d["members"] = g.member_indices;
        out.append(d);
    }
    return out;
}

py::dict report_dict(const mission::MissionReport& r) {
    py::list groups;
    for (const auto& g : r.groups) {
        py::dict d;
        d["group"] = g.group;
        d["traversal_index"] = g.traversal_index;
        d["members"] = g.members;
        d["activated"] = g.activated;
        d["feasible"] = g.feasible;
        d["diagnostic"] = g.diagnostic;
        d["powering_s"] = g.schedule.powering_duration_s;
        d["latency_s"] = g.latency_s;
        d["service_time_s"] = g.service_time_s();
        d["supplied_energy_j"] = g.supplied_energy_j;
        d["hover_energy_j"] = g.hover_energy_j;
        d["cost"] = g.cost;
        groups.append(d);
    }
    py::list nodes;
    for (const auto& n : r.nodes) {
        py::dict d;
        d["node"] = n.node;
        d["group"] = n.group;
        d["activated"] = n.activated;
        d["slant_m"] = n.slant_m;
        d["harvested_power_w"] = n.harvested_power_w;
        d["harvested_energy_j"] = n.harvested_energy_j;
        d["tx_power_w"] = n.tx_power_w;
        d["rate_bps"] = n.rate_bps;
        d["tx_time_s"] = n.tx_time_s;
        d["tx_energy_j"] = n.tx_energy_j;
        d["slot_start_s"] = n.slot_start_s;
        d["bits_delivered"] = n.bits_delivered;
        nodes.append(d);
    }
    py::dict d;
    d["hover_height_m"] = r.hover_height_m;
    d["eh_distance_m"] = r.eh_distance_m;
    d["radius_m"] = r.radius_m;
    d["tour"] = tour_dict(r.tour);
    d["groups"] = groups;
    d["nodes"] = nodes;
    d["flight_time_s"] = r.flight_time_s;
    d["service_time_s"] = r.service_time_s;
    d["total_time_s"] = r.total_time_s;
    d["uav_energy_j"] = r.uav_energy_j;
    d["total_cost"] = r.total_cost;
    d["bits_delivered"] = r.bits_delivered;
    d["infeasible_groups"] = r.infeasible_groups;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Link budget, WPC group planning and mission simulation for UAV-powered IoT.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<GeometryError>(m, "GeometryError", base.ptr());
    py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());
    py::register_exception<CapabilityError>(m, "CapabilityError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<lb::RadioEnvironment>(m, "RadioEnvironment")
        .def(py::init([](double f, double a, double b, double los_db, double nlos_db) {
                 return lb::RadioEnvironment(f, {a, b}, {los_db, nlos_db});
             }),
             py::arg("frequency_hz"), py::arg("los_a") = lb::kSuburbanLos.a, py::arg("los_b") = lb::kSuburbanLos.b,
             py::arg("excess_los_db") = lb::kCalibratedExcess.los_db,
             py::arg("excess_nlos_db") = lb::kCalibratedExcess.nlos_db)
        .def_static("suburban", &lb::RadioEnvironment::suburban)
        .def_static("calibrated", &lb::RadioEnvironment::calibrated)
        .def_static("free_space", &lb::RadioEnvironment::free_space)
        .def_property_readonly("frequency_hz", &lb::RadioEnvironment::carrier_frequency_hz)
        .def_property_readonly("excess_los_db", [](const lb::RadioEnvironment& e) { return e.excess().los_db; })
        .def_property_readonly("excess_nlos_db", [](const lb::RadioEnvironment& e) { return e.excess().nlos_db; });

    py::class_<lb::AntennaArray>(m, "AntennaArray")
        .def(py::init<int, int, double>(), py::arg("rows"), py::arg("cols"), py::arg("spacing") = 0.5)
        .def_static("linear", &lb::AntennaArray::linear)
        .def_static("omni", &lb::AntennaArray::omni)
        .def_property_readonly("rows", &lb::AntennaArray::rows)
        .def_property_readonly("cols", &lb::AntennaArray::cols)
        .def_property_readonly("elements", &lb::AntennaArray::elements);

    py::class_<lb::EhCircuit>(m, "EhCircuit")
        .def(py::init<double, double, std::optional<double>>(), py::arg("band_hz"),
             py::arg("efficiency") = lb::kDefaultEfficiency, py::arg("threshold_dbm") = py::none())
        .def_property_readonly("threshold_dbm", &lb::eh_input_threshold_dbm)
        .def_property_readonly("efficiency", &lb::EhCircuit::conversion_efficiency);

    py::class_<lb::LinkGeometry>(m, "LinkGeometry")
        .def_static("from_slant", &lb::LinkGeometry::from_slant, py::arg("uav_height_m"), py::arg("slant_m"))
        .def_static("from_ground", &lb::LinkGeometry::from_ground, py::arg("uav_height_m"), py::arg("ground_m"))
        .def_property_readonly("slant_m", &lb::LinkGeometry::slant_distance_m)
        .def_property_readonly("ground_m", &lb::LinkGeometry::ground_distance_m)
        .def_property_readonly("elevation_deg", &lb::LinkGeometry::elevation_deg);

    m.def("upa_physical_size", [](const lb::RadioEnvironment& env, int rows, int cols, double spacing) {
        const auto s = lb::upa_physical_size(env, rows, cols, spacing);
        return std::make_pair(s.width_m, s.height_m);
    }, py::arg("env"), py::arg("rows"), py::arg("cols"), py::arg("spacing") = 0.5);
    m.def("array_gain_db", &lb::array_gain_db);
    m.def("los_probability", &lb::los_probability);
    m.def("free_space_path_loss_db", &lb::free_space_path_loss_db);
    m.def("expected_path_loss_db", &lb::expected_path_loss_db);
    m.def("received_power_dbm", &lb::received_power_dbm, py::arg("tx_power_w"), py::arg("array"), py::arg("env"),
          py::arg("geometry"));
    m.def("harvested_power_dbm", &lb::harvested_power_dbm, py::arg("tx_power_w"), py::arg("array"),
          py::arg("circuit"), py::arg("env"), py::arg("geometry"));
    m.def("achievable_eh_distance",
          [](double tx, const lb::AntennaArray& a, const lb::EhCircuit& c, const lb::RadioEnvironment& e, double h) {
              return lb::achievable_eh_distance(tx, a, c, e, h);
          },
          py::arg("tx_power_w"), py::arg("array"), py::arg("circuit"), py::arg("env"), py::arg("uav_height_m"));
    m.def("achievable_data_rate", &lb::achievable_data_rate, py::arg("geometry"), py::arg("env"), py::arg("array"),
          py::arg("circuit"), py::arg("tx_power_w"), py::arg("bandwidth_hz"),
          py::arg("noise_figure_db") = lb::kDefaultNoiseFigureDb);
    m.def("calibrate", [] {
        const auto r = lb::calibrate();
        py::dict d;
        d["excess_los_db"] = r.excess.los_db;
        d["excess_nlos_db"] = r.excess.nlos_db;
        d["noise_figure_db"] = r.noise_figure_db;
        d["eh_distance_m"] = r.eh_distance_m;
        d["rate_bps"] = r.rate_bps;
        return d;
    });

    py::enum_<planner::TourMode>(m, "TourMode")
        .value("HEURISTIC", planner::TourMode::Heuristic)
        .value("EXACT", planner::TourMode::Exact);

    py::class_<planner::NodeField>(m, "NodeField")
        .def(py::init([](double w, double h, const std::vector<XY>& xy) {
                 return planner::NodeField{w, h, 0, to_points(xy)};
             }),
             py::arg("width_m"), py::arg("height_m"), py::arg("positions"))
        .def_readonly("seed", &planner::NodeField::seed)
        .def_property_readonly("positions", [](const planner::NodeField& f) { return to_xy(f.positions); })
        .def("__len__", &planner::NodeField::size);

    m.def("generate_nodes",
          [](double w, double h, double density, std::uint64_t seed, std::optional<std::size_t> count) {
              return planner::generate_nodes(w, h, density, seed, count);
          },
          py::arg("width_m") = 100.0, py::arg("height_m") = 100.0, py::arg("density") = 0.25, py::arg("seed") = 1,
          py::arg("count") = py::none());
    m.def("coverage_radius", &planner::coverage_radius, py::arg("uav_height_m"), py::arg("eh_distance_m"));
    m.def("form_wpc_groups", [](const planner::NodeField& f, double r) {
        return groups_list(planner::form_wpc_groups(f, r));
    }, py::arg("field"), py::arg("radius_m"));
    m.def("plan_tour", [](const std::vector<XY>& xy, planner::TourMode mode) {
        const auto pts = to_points(xy);
        return tour_dict(planner::plan_tour(pts, mode));
    }, py::arg("points"), py::arg("mode") = planner::TourMode::Heuristic);
    m.def("compare_strategies",
          [](const planner::NodeField& f, double d_eh, const std::vector<double>& heights, planner::TourMode mode) {
              const auto cmp = planner::compare_strategies(f, d_eh, heights, mode);
              py::list out;
              for (std::size_t s = 0; s < cmp.strategies.size(); ++s) {
                  const auto& st = cmp.strategies[s];
                  py::dict d;
                  d["label"] = st.label;
                  d["uav_height_m"] = st.uav_height_m;
                  d["radius_m"] = st.radius_m;
                  d["groups"] = groups_list(st.groups);
                  d["tour"] = tour_dict(st.tour);
                  d["length"] = st.length();
                  d["saving"] = cmp.saving(s);
                  out.append(d);
              }
              return out;
          },
          py::arg("field"), py::arg("eh_distance_m"), py::arg("heights_m"),
          py::arg("mode") = planner::TourMode::Heuristic);

    py::class_<mission::MissionScenario>(m, "MissionScenario")
        .def(py::init<>())
        .def_readwrite("field", &mission::MissionScenario::field)
        .def_readwrite("wpt_power_w", &mission::MissionScenario::wpt_power_w)
        .def_readwrite("wur_power_w", &mission::MissionScenario::wur_power_w)
        .def_readwrite("wur_wake_threshold_dbm", &mission::MissionScenario::wur_wake_threshold_dbm)
        .def_readwrite("wake_duration_s", &mission::MissionScenario::wake_duration_s)
        .def_readwrite("payload_bits", &mission::MissionScenario::payload_bits)
        .def_readwrite("bandwidth_hz", &mission::MissionScenario::bandwidth_hz)
        .def_readwrite("noise_figure_db", &mission::MissionScenario::noise_figure_db)
        .def_readwrite("latency_cap_s", &mission::MissionScenario::latency_cap_s)
        .def_readwrite("hover_power_w", &mission::MissionScenario::hover_power_w)
        .def_readwrite("cruise_power_w", &mission::MissionScenario::cruise_power_w)
        .def_readwrite("cruise_speed_mps", &mission::MissionScenario::cruise_speed_mps)
        .def_readwrite("hover_height_m", &mission::MissionScenario::hover_height_m)
        .def_readwrite("eh_distance_m", &mission::MissionScenario::eh_distance_m)
        .def_readwrite("tour_mode", &mission::MissionScenario::tour_mode)
        .def_property("energy_weight", [](const mission::MissionScenario& s) { return s.weights.energy_per_joule; },
                      [](mission::MissionScenario& s, double v) { s.weights.energy_per_joule = v; })
        .def_property("time_weight", [](const mission::MissionScenario& s) { return s.weights.time_per_second; },
                      [](mission::MissionScenario& s, double v) { s.weights.time_per_second = v; });

    m.def("simulate_mission", [](const mission::MissionScenario& s) {
        return report_dict(mission::simulate_mission(s));
    }, py::arg("scenario"));

    m.def("describe_config", [](const std::map<std::string, std::string>& overrides) {
        cli::RunConfig c;
        for (const auto& [k, v] : overrides) {
            c.set(k, v);
        }
        return cli::describe_config(c);
    }, py::arg("overrides") = std::map<std::string, std::string>{});

    m.def("run_cli", [](std::vector<std::string> args) {
        args.insert(args.begin(), "uewpiot");
        std::vector<char*> argv;
        for (auto& a : args) {
            argv.push_back(a.data());
        }
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
