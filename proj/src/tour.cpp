// Copyright (c) 2026 The uewpiot authors
// SPDX-License-Identifier: Apache-2.0

#include "uewpiot/error.hpp"
#include "uewpiot/planner.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <limits>
#include <numeric>

namespace uewpiot::planner {

namespace {

constexpr int kMaxTwoOptPasses = 10000;

// Exchanges must beat this to count; stops 2-opt cycling on rounding noise.
constexpr double kImprovementEps = 1e-10;

TourPlan make_plan(std::span<const Point> points, std::vector<std::size_t> order) {
    TourPlan plan;
    plan.closed = true;
    plan.ordered_points.reserve(order.size());
    for (std::size_t idx : order) {
        plan.ordered_points.push_back(points[idx]);
    }
    plan.order = std::move(order);
    plan.length = tour_length(plan);
    return plan;
}

std::vector<std::size_t> held_karp(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n <= 3) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        return order;
    }
    // State: subset of {1..n-1} visited, ending at city j; city 0 is the depot.
    const std::size_t m = n - 1;
    const std::size_t full = (std::size_t{1} << m);
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(full * m, inf);
    std::vector<std::uint8_t> parent(full * m, 0xff);

    for (std::size_t j = 0; j < m; ++j) {
        cost[(std::size_t{1} << j) * m + j] = distance(points[0], points[j + 1]);
    }
    for (std::size_t mask = 1; mask < full; ++mask) {
        for (std::size_t j = 0; j < m; ++j) {
            if (!(mask & (std::size_t{1} << j))) {
                continue;
            }
            const double here = cost[mask * m + j];
            if (here == inf) {
                continue;
            }
            for (std::size_t k = 0; k < m; ++k) {
                if (mask & (std::size_t{1} << k)) {
                    continue;
                }
                const std::size_t next = mask | (std::size_t{1} << k);
                const double c = here + distance(points[j + 1], points[k + 1]);
                if (c < cost[next * m + k]) {
                    cost[next * m + k] = c;
                    parent[next * m + k] = static_cast<std::uint8_t>(j);
                }
            }
        }
    }

    const std::size_t all = full - 1;
    std::size_t last = 0;
    double best = inf;
    for (std::size_t j = 0; j < m; ++j) {
        const double c = cost[all * m + j] + distance(points[j + 1], points[0]);
        if (c < best) {
            best = c;
            last = j;
        }
    }

    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t mask = all;
    std::size_t j = last;
    while (true) {
        order.push_back(j + 1);
        const std::uint8_t p = parent[mask * m + j];
        mask &= ~(std::size_t{1} << j);
        if (p == 0xff) {
            break;
        }
        j = p;
    }
    order.push_back(0);
    std::reverse(order.begin(), order.end());
    return order;
}

} // namespace

double tour_length(std::span<const Point> ordered, bool closed) {
    double total = 0.0;
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        total += distance(ordered[i - 1], ordered[i]);
    }
    if (closed && ordered.size() > 1) {
        total += distance(ordered.back(), ordered.front());
    }
    return total;
}

double tour_length(const TourPlan& plan) { return tour_length(plan.ordered_points, plan.closed); }

TourPlan nearest_neighbor_tour(std::span<const Point> points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    if (n == 0) {
        return make_plan(points, std::move(order));
    }
    std::vector<bool> used(n, false);
    std::size_t current = 0;
    used[0] = true;
    order.push_back(0);
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) {
                continue;
            }
            const double d = distance(points[current], points[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        used[best] = true;
        order.push_back(best);
        current = best;
    }
    return make_plan(points, std::move(order));
}

TourPlan two_opt(TourPlan plan) {
    auto& pts = plan.ordered_points;
    auto& order = plan.order;
    const std::size_t n = pts.size();
    if (n < 4) {
        plan.length = tour_length(plan);
        return plan;
    }
    // Reversing pts[i..j] replaces edges (i-1, i) and (j, j+1) by (i-1, j) and
    // (i, j+1). The depot at position 0 never moves.
    for (int pass = 0; pass < kMaxTwoOptPasses; ++pass) {
        bool improved = false;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const Point& a = pts[i - 1];
                const Point& b = pts[i];
                const Point& c = pts[j];
                const Point& d = pts[(j + 1) % n];
                const double delta = distance(a, c) + distance(b, d) - distance(a, b) - distance(c, d);
                if (delta < -kImprovementEps) {
                    std::reverse(pts.begin() + static_cast<std::ptrdiff_t>(i),
                                 pts.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                                 order.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                    improved = true;
                }
            }
        }
        if (!improved) {
            break;
        }
    }
    plan.length = tour_length(plan);
    return plan;
}

TourPlan plan_tour(std::span<const Point> points, TourMode mode) {
    if (mode == TourMode::Exact) {
        if (points.size() > kMaxExactPoints) {
            throw CapabilityError(fmt::format("exact tour solver handles at most {} points, got {}",
                                              kMaxExactPoints, points.size()));
        }
        return make_plan(points, held_karp(points));
    }
    return two_opt(nearest_neighbor_tour(points));
}

} // namespace uewpiot::planner
