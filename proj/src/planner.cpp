// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/planner.hpp"

#include "uewpiot/error.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace uewpiot::planner {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double coverage_radius(double uav_height_m, double eh_distance_m) {
    if (!(uav_height_m >= 0.0)) {
        throw InfeasibleError(fmt::format("UAV height must be >= 0, got {}", uav_height_m));
    }
    if (uav_height_m > eh_distance_m) {
        throw InfeasibleError(fmt::format(
            "UAV height {} m exceeds the EH distance {} m: no ground coverage", uav_height_m,
            eh_distance_m));
    }
    return std::sqrt(eh_distance_m * eh_distance_m - uav_height_m * uav_height_m);
}

NodeField generate_nodes(double width_m, double height_m, double density, std::uint64_t seed,
                         std::optional<std::size_t> count) {
    if (!(width_m > 0.0) || !(height_m > 0.0)) {
        throw ConfigError(fmt::format("node field {} x {} m has zero area", width_m, height_m));
    }
    std::size_t n = 0;
    if (count) {
        n = *count;
    } else {
        if (!(density > 0.0)) {
            throw ConfigError(fmt::format("node density must be positive, got {}", density));
        }
        n = static_cast<std::size_t>(std::llround(density * width_m * height_m / 100.0));
    }

    // mt19937_64 output is fixed by the standard; the 53-bit mapping keeps the
    // doubles identical across standard libraries.
    std::mt19937_64 rng(seed);
    auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    NodeField field{width_m, height_m, seed, {}};
    field.positions.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = unit() * width_m;
        const double y = unit() * height_m;
        field.positions.push_back({x, y});
    }
    return field;
}

std::vector<WpcGroup> form_wpc_groups(const NodeField& field, double radius_m) {
    if (!(radius_m >= 0.0)) {
        throw ConfigError(fmt::format("coverage radius must be >= 0, got {}", radius_m));
    }
    const auto& pts = field.positions;
    const std::size_t n = pts.size();
    const double reach = radius_m + kCoverageSlack;

    std::vector<std::vector<std::size_t>> neighbours(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (distance(pts[i], pts[j]) <= reach) {
                neighbours[i].push_back(j);
            }
        }
    }

    std::vector<bool> covered(n, false);
    std::size_t remaining = n;
    std::vector<WpcGroup> groups;
    while (remaining > 0) {
        std::size_t best = n;
        std::size_t best_gain = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (covered[i]) {
                continue;
            }
            const auto gain = static_cast<std::size_t>(std::count_if(
                neighbours[i].begin(), neighbours[i].end(), [&](std::size_t j) { return !covered[j]; }));
            if (gain > best_gain) {
                best = i;
                best_gain = gain;
            }
        }
        WpcGroup group{best, {}};
        for (std::size_t j : neighbours[best]) {
            if (!covered[j]) {
                covered[j] = true;
                group.member_indices.push_back(j);
            }
        }
        remaining -= group.member_indices.size();
        groups.push_back(std::move(group));
    }

    std::sort(groups.begin(), groups.end(), [](const WpcGroup& a, const WpcGroup& b) {
        return a.member_indices.front() < b.member_indices.front();
    });
    return groups;
}

std::vector<Point> traversal_points(const NodeField& field, const std::vector<WpcGroup>& groups) {
    std::vector<Point> out;
    out.reserve(groups.size());
    for (const auto& g : groups) {
        out.push_back(field.positions.at(g.traversal_index));
    }
    return out;
}

double StrategyComparison::saving(std::size_t index) const {
    const double base = baseline().length();
    if (base <= 0.0) {
        return 0.0;
    }
    return 1.0 - strategies.at(index).length() / base;
}

StrategyComparison compare_strategies(const NodeField& field, double eh_distance_m,
                                      std::span<const double> heights_m, TourMode mode) {
    // Validate every height before doing any work.
    std::vector<double> radii;
    radii.reserve(heights_m.size());
    for (double h : heights_m) {
        radii.push_back(coverage_radius(h, eh_distance_m));
    }

    auto run = [&](std::string label, std::optional<double> h, double radius) {
        StrategyResult r;
        r.label = std::move(label);
        r.uav_height_m = h;
        r.radius_m = radius;
        r.groups = form_wpc_groups(field, radius);
        const auto pts = traversal_points(field, r.groups);
        r.tour = plan_tour(pts, mode);
        return r;
    };

    StrategyComparison out;
    out.strategies.push_back(run("one-by-one", std::nullopt, 0.0));
    for (std::size_t k = 0; k < heights_m.size(); ++k) {
        out.strategies.push_back(run(fmt::format("H={:g}", heights_m[k]), heights_m[k], radii[k]));
    }
    return out;
}

} // namespace uewpiot::planner
