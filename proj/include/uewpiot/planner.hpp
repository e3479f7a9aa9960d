// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#ifndef UEWPIOT_PLANNER_HPP
#define UEWPIOT_PLANNER_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace uewpiot::planner {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

/// Uniformly placed IoT nodes on a width x height rectangle.
struct NodeField {
    double width_m = 0.0;
    double height_m = 0.0;
    std::uint64_t seed = 0;
    std::vector<Point> positions;

    std::size_t size() const { return positions.size(); }
};

/// Nodes served from one hover point. The traversal node is a member.
struct WpcGroup {
    std::size_t traversal_index = 0;
    std::vector<std::size_t> member_indices;
};

enum class TourMode { Heuristic, Exact };

/// Visit order over a point list. `order[k]` indexes the input points.
struct TourPlan {
    std::vector<Point> ordered_points;
    std::vector<std::size_t> order;
    bool closed = true;
    double length = 0.0;
};

/// Largest instance the dynamic-programming solver accepts.
inline constexpr std::size_t kMaxExactPoints = 12;

/// Membership slack for points lying on the coverage circle.
inline constexpr double kCoverageSlack = 1e-9;

/// Ground radius of the hover disk: sqrt(d_EH^2 - H^2).
double coverage_radius(double uav_height_m, double eh_distance_m);

/// Node count is round(density * area / 100): density counts nodes per
/// 10 m x 10 m cell. `count` overrides the density when set.
NodeField generate_nodes(double width_m, double height_m, double density, std::uint64_t seed,
                         std::optional<std::size_t> count = std::nullopt);

/// Greedy max-coverage. Each round picks the uncovered node whose radius-R
/// disk holds the most uncovered nodes (lowest index on ties) and makes it a
/// traversal point. Groups come back sorted by smallest member index, with
/// members ascending, so the group holding node 0 is first.
std::vector<WpcGroup> form_wpc_groups(const NodeField& field, double radius_m);

/// Closed tour starting at points[0]. Heuristic = nearest neighbour + 2-opt;
/// exact = Held-Karp, limited to kMaxExactPoints.
TourPlan plan_tour(std::span<const Point> points, TourMode mode = TourMode::Heuristic);

/// Nearest-neighbour construction only, exposed for comparisons.
TourPlan nearest_neighbor_tour(std::span<const Point> points);

/// Runs 2-opt on an existing plan until a full pass makes no improvement.
TourPlan two_opt(TourPlan plan);

double tour_length(const TourPlan& plan);
double tour_length(std::span<const Point> ordered, bool closed);

struct StrategyResult {
    std::string label;
    std::optional<double> uav_height_m; ///< empty for one-by-one
    double radius_m = 0.0;
    std::vector<WpcGroup> groups;
    TourPlan tour;
    double length() const { return tour.length; }
};

struct StrategyComparison {
    std::vector<StrategyResult> strategies; ///< one-by-one first, then per height

    const StrategyResult& baseline() const { return strategies.front(); }
    /// 1 - L / L_one_by_one
    double saving(std::size_t index) const;
};

/// Traversal points of `groups`, in group order.
std::vector<Point> traversal_points(const NodeField& field, const std::vector<WpcGroup>& groups);

/// One-by-one tour over every node plus one grouped tour per height.
StrategyComparison compare_strategies(const NodeField& field, double eh_distance_m,
                                      std::span<const double> heights_m,
                                      TourMode mode = TourMode::Heuristic);

} // namespace uewpiot::planner

#endif
