// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/cli.hpp"
#include "uewpiot/error.hpp"

#include <fmt/core.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

namespace uewpiot::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    }
    return v;
}

std::uint64_t parse_u64(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(fmt::format("{}: '{}' is not an unsigned integer", key, text));
    }
    return v;
}

int parse_int(std::string_view key, std::string_view text) {
    const auto v = parse_u64(key, text);
    if (v > 1'000'000) {
        throw ConfigError(fmt::format("{}: {} is out of range", key, v));
    }
    return static_cast<int>(v);
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

struct Binding {
    std::string key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
};

template <typename Member>
Binding number(std::string key, Member member) {
    return {key,
            [key, member](RunConfig& c, std::string_view v) { member(c) = parse_double(key, v); },
            [member](const RunConfig& c) { return fmt_double(member(c)); }};
}

template <typename Member>
Binding integer(std::string key, Member member) {
    return {key, [key, member](RunConfig& c, std::string_view v) { member(c) = parse_int(key, v); },
            [member](const RunConfig& c) {
                return fmt::format("{}", member(c));
            }};
}

template <typename Member>
Binding count(std::string key, Member member) {
    return {key,
            [key, member](RunConfig& c, std::string_view v) {
                member(c) = static_cast<std::remove_reference_t<decltype(member(c))>>(
                    parse_u64(key, v));
            },
            [member](const RunConfig& c) {
                return fmt::format("{}", member(c));
            }};
}

template <typename Member>
Binding axis(std::string key, Member member) {
    return {key,
            [key, member](RunConfig& c, std::string_view v) {
                try {
                    member(c) = Axis::parse(v);
                } catch (const ConfigError& e) {
                    throw ConfigError(fmt::format("{}: {}", key, e.what()));
                }
            },
            [member](const RunConfig& c) { return member(c).text; }};
}

const std::vector<Binding>& bindings() {
    static const std::vector<Binding> table = [] {
        std::vector<Binding> b;
        b.push_back(number("link.frequency_hz", [](auto& c) -> auto& { return c.link.frequency_hz; }));
        b.push_back(number("link.los_a", [](auto& c) -> auto& { return c.link.los_a; }));
        b.push_back(number("link.los_b", [](auto& c) -> auto& { return c.link.los_b; }));
        b.push_back(number("link.excess_los_db", [](auto& c) -> auto& { return c.link.excess_los_db; }));
        b.push_back(number("link.excess_nlos_db", [](auto& c) -> auto& { return c.link.excess_nlos_db; }));
        b.push_back(integer("link.rows", [](auto& c) -> auto& { return c.link.rows; }));
        b.push_back(integer("link.cols", [](auto& c) -> auto& { return c.link.cols; }));
        b.push_back(number("link.spacing", [](auto& c) -> auto& { return c.link.spacing; }));
        b.push_back(number("link.tx_power_w", [](auto& c) -> auto& { return c.link.tx_power_w; }));
        b.push_back(number("link.efficiency", [](auto& c) -> auto& { return c.link.efficiency; }));
        b.push_back({"link.threshold_dbm",
                     [](RunConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "auto") {
                             c.link.threshold_dbm.reset();
                         } else {
                             c.link.threshold_dbm = parse_double("link.threshold_dbm", v);
                         }
                     },
                     [](const RunConfig& c) {
                         return c.link.threshold_dbm ? fmt_double(*c.link.threshold_dbm)
                                                     : std::string("auto");
                     }});
        b.push_back(number("link.bandwidth_hz", [](auto& c) -> auto& { return c.link.bandwidth_hz; }));
        b.push_back(number("link.noise_figure_db", [](auto& c) -> auto& { return c.link.noise_figure_db; }));

        b.push_back(axis("sweep.distances_m", [](auto& c) -> auto& { return c.sweep.distances_m; }));
        b.push_back(number("sweep.height_m", [](auto& c) -> auto& { return c.sweep.height_m; }));
        b.push_back(axis("sweep.eh_frequencies_hz", [](auto& c) -> auto& { return c.sweep.eh_frequencies_hz; }));
        b.push_back(axis("sweep.eh_elements", [](auto& c) -> auto& { return c.sweep.eh_elements; }));
        b.push_back(axis("sweep.rate_frequencies_hz", [](auto& c) -> auto& { return c.sweep.rate_frequencies_hz; }));
        b.push_back(axis("sweep.rate_elements", [](auto& c) -> auto& { return c.sweep.rate_elements; }));

        b.push_back(number("field.width_m", [](auto& c) -> auto& { return c.field.width_m; }));
        b.push_back(number("field.height_m", [](auto& c) -> auto& { return c.field.height_m; }));
        b.push_back(number("field.density", [](auto& c) -> auto& { return c.field.density; }));
        b.push_back(count("field.node_count", [](auto& c) -> auto& { return c.field.node_count; }));

        b.push_back(number("plan.eh_distance_m", [](auto& c) -> auto& { return c.plan.eh_distance_m; }));
        b.push_back(axis("plan.heights_m", [](auto& c) -> auto& { return c.plan.heights_m; }));
        b.push_back({"plan.solver",
                     [](RunConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "heuristic") {
                             c.plan.solver = planner::TourMode::Heuristic;
                         } else if (v == "exact") {
                             c.plan.solver = planner::TourMode::Exact;
                         } else {
                             throw ConfigError(fmt::format(
                                 "plan.solver: expected 'heuristic' or 'exact', got '{}'", v));
                         }
                     },
                     [](const RunConfig& c) {
                         return std::string(c.plan.solver == planner::TourMode::Exact ? "exact"
                                                                                      : "heuristic");
                     }});

        b.push_back(number("mission.hover_height_m", [](auto& c) -> auto& { return c.mission.hover_height_m; }));
        b.push_back(number("mission.wur_power_w", [](auto& c) -> auto& { return c.mission.wur_power_w; }));
        b.push_back(number("mission.wake_threshold_dbm", [](auto& c) -> auto& { return c.mission.wake_threshold_dbm; }));
        b.push_back(number("mission.wake_duration_s", [](auto& c) -> auto& { return c.mission.wake_duration_s; }));
        b.push_back(number("mission.payload_bits", [](auto& c) -> auto& { return c.mission.payload_bits; }));
        b.push_back(number("mission.latency_cap_s", [](auto& c) -> auto& { return c.mission.latency_cap_s; }));
        b.push_back(number("mission.weight_energy", [](auto& c) -> auto& { return c.mission.weight_energy; }));
        b.push_back(number("mission.weight_time", [](auto& c) -> auto& { return c.mission.weight_time; }));
        b.push_back(number("mission.hover_power_w", [](auto& c) -> auto& { return c.mission.hover_power_w; }));
        b.push_back(number("mission.cruise_power_w", [](auto& c) -> auto& { return c.mission.cruise_power_w; }));
        b.push_back(number("mission.cruise_speed_mps", [](auto& c) -> auto& { return c.mission.cruise_speed_mps; }));

        b.push_back(count("montecarlo.seeds", [](auto& c) -> auto& { return c.montecarlo.seeds; }));
        b.push_back(count("montecarlo.first_seed", [](auto& c) -> auto& { return c.montecarlo.first_seed; }));

        b.push_back(count("run.seed", [](auto& c) -> auto& { return c.seed; }));
        b.push_back({"run.out_dir",
                     [](RunConfig& c, std::string_view v) { c.out_dir = std::string(trim(v)); },
                     [](const RunConfig& c) { return c.out_dir.string(); }});
        return b;
    }();
    return table;
}

const Binding& find_binding(std::string_view key) {
    for (const auto& b : bindings()) {
        if (b.key == key) {
            return b;
        }
    }
    throw ConfigError(fmt::format("unknown configuration key '{}'", key));
}

} // namespace

Axis Axis::parse(std::string_view text) {
    text = trim(text);
    Axis axis{std::string(text), {}};
    if (text.empty()) {
        throw ConfigError("empty axis");
    }
    if (text.find(':') != std::string_view::npos) {
        std::vector<double> parts;
        std::string_view rest = text;
        while (true) {
            const auto pos = rest.find(':');
            parts.push_back(parse_double("axis", rest.substr(0, pos)));
            if (pos == std::string_view::npos) {
                break;
            }
            rest = rest.substr(pos + 1);
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw ConfigError(fmt::format("axis '{}' must be start:stop:step with step > 0", text));
        }
        // Integer stepping avoids drift from repeated addition.
        const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        if (steps > 1'000'000) {
            throw ConfigError(fmt::format("axis '{}' has too many points", text));
        }
        for (long k = 0; k <= steps; ++k) {
            axis.values.push_back(parts[0] + static_cast<double>(k) * parts[2]);
        }
        return axis;
    }
    std::string_view rest = text;
    while (true) {
        const auto pos = rest.find(',');
        axis.values.push_back(parse_double("axis", rest.substr(0, pos)));
        if (pos == std::string_view::npos) {
            break;
        }
        rest = rest.substr(pos + 1);
    }
    return axis;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    find_binding(trim(key)).set(*this, value);
}

std::string RunConfig::get(std::string_view key) const { return find_binding(key).get(*this); }

linkbudget::RadioEnvironment RunConfig::environment(double frequency_hz) const {
    return linkbudget::RadioEnvironment(frequency_hz, {link.los_a, link.los_b},
                                        {link.excess_los_db, link.excess_nlos_db});
}

linkbudget::EhCircuit RunConfig::circuit(double frequency_hz) const {
    return linkbudget::EhCircuit(frequency_hz, link.efficiency, link.threshold_dbm);
}

linkbudget::AntennaArray RunConfig::array() const {
    return linkbudget::AntennaArray(link.rows, link.cols, link.spacing);
}

planner::NodeField RunConfig::node_field(std::uint64_t field_seed) const {
    std::optional<std::size_t> n;
    if (field.node_count > 0) {
        n = field.node_count;
    }
    return planner::generate_nodes(field.width_m, field.height_m, field.density, field_seed, n);
}

mission::MissionScenario RunConfig::scenario(std::uint64_t field_seed) const {
    mission::MissionScenario s;
    s.field = node_field(field_seed);
    s.env = environment(link.frequency_hz);
    s.array = array();
    s.circuit = circuit(link.frequency_hz);
    s.wpt_power_w = link.tx_power_w;
    s.wur_power_w = mission.wur_power_w;
    s.wur_wake_threshold_dbm = mission.wake_threshold_dbm;
    s.wake_duration_s = mission.wake_duration_s;
    s.payload_bits = mission.payload_bits;
    s.bandwidth_hz = link.bandwidth_hz;
    s.noise_figure_db = link.noise_figure_db;
    s.latency_cap_s = mission.latency_cap_s;
    s.weights = {mission.weight_energy, mission.weight_time};
    s.hover_power_w = mission.hover_power_w;
    s.cruise_power_w = mission.cruise_power_w;
    s.cruise_speed_mps = mission.cruise_speed_mps;
    s.hover_height_m = mission.hover_height_m;
    s.eh_distance_m = plan.eh_distance_m;
    s.tour_mode = plan.solver;
    s.validate();
    return s;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& b : bindings()) {
            k.push_back(b.key);
        }
        return k;
    }();
    return keys;
}

RunConfig parse_config(std::istream& in, const RunConfig& base) {
    RunConfig config = base;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
        }
        try {
            config.set(trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(fmt::format("line {}: {}", line_no, e.what()));
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    }
    return parse_config(in);
}

std::string describe_config(const RunConfig& config) {
    std::ostringstream out;
    std::string section;
    for (const auto& b : bindings()) {
        const auto dot = b.key.find('.');
        const std::string this_section = b.key.substr(0, dot);
        if (this_section != section) {
            if (!section.empty()) {
                out << '\n';
            }
            out << "# " << this_section << '\n';
            section = this_section;
        }
        out << b.key << " = " << b.get(config) << '\n';
    }
    return out.str();
}

} // namespace uewpiot::cli
