// Copyright 2026 The xtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Multi-start coordinate-wise golden-section maximization for smooth,
// bounded, low-dimensional objectives (angles).

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "xtele/rng.hpp"

namespace xtele {

struct SearchSchedule {
    double initial_step = std::numbers::pi;  // half-width of the first line windows
    double final_step = 1e-9;                // stop once the half-width drops below this
    int max_sweeps = 200;
    double line_resolution = 1e-3;  // golden-section stops at this fraction of the window
};

struct SearchResult {
    std::vector<double> x;
    double value = -INFINITY;
    int start_index = -1;
};

using Objective = std::function<double(std::span<const double>)>;

namespace detail {

/// Golden-section maximization of g on [lo, hi]; returns (argmax, max).
template <typename G>
std::pair<double, double> golden_maximize(G &&g, double lo, double hi, double resolution) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = g(x1);
    double g2 = g(x2);
    while (hi - lo > resolution) {
        if (g1 >= g2) {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        }
    }
    return g1 >= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

}  // namespace detail

/// Sweeps the coordinates in order, replacing each by the golden-section
/// maximum over [x_i - h, x_i + h] when that improves the objective. After a
/// sweep that moved, a pattern move line-searches along the sweep's net
/// displacement, which keeps coordinate ascent from zigzagging along narrow
/// ridges. The half-width h halves whenever a full sweep gains less than 1e-14
/// or moves no coordinate by more than h/4.
inline SearchResult maximize_coordinatewise(const Objective &f, std::vector<double> x,
                                            const SearchSchedule &schedule = {}) {
    double value = f(x);
    double h = schedule.initial_step;
    std::vector<double> trial = x;
    for (int sweep = 0; sweep < schedule.max_sweeps && h >= schedule.final_step; ++sweep) {
        const double before = value;
        const std::vector<double> start = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            trial = x;
            auto line = [&](double t) {
                trial[i] = t;
                return f(trial);
            };
            const auto [t, g] = detail::golden_maximize(line, x[i] - h, x[i] + h, 2 * h * schedule.line_resolution);
            if (g > value) {
                x[i] = t;
                value = g;
            }
        }
        if (value > before) {
            std::vector<double> step(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                step[i] = x[i] - start[i];
            }
            auto along = [&](double t) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    trial[i] = x[i] + t * step[i];
                }
                return f(trial);
            };
            const auto [t, g] = detail::golden_maximize(along, 0.0, 4.0, 4.0 * schedule.line_resolution);
            if (g > value) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    x[i] += t * step[i];
                }
                value = g;
            }
        }
        double moved = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            moved = std::max(moved, std::abs(x[i] - start[i]));
        }
        if (value - before < 1e-14 || moved < 0.25 * h) {
            h *= 0.5;
        }
    }
    return SearchResult{std::move(x), value, 0};
}

/// Runs `restarts` local searches. Start 0 is `first_start` when given; the
/// others are drawn uniformly from the box [lower, upper] with a stream derived
/// from (seed, start index). Ties keep the lowest start index.
inline SearchResult multi_start_maximize(const Objective &f, std::span<const double> lower,
                                         std::span<const double> upper, int restarts, std::uint64_t seed,
                                         const SearchSchedule &schedule = {},
                                         std::optional<std::vector<double>> first_start = std::nullopt) {
    SearchResult best;
    for (int s = 0; s < restarts; ++s) {
        std::vector<double> x0(lower.size());
        if (s == 0 && first_start) {
            x0 = *first_start;
        } else {
            RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(s));
            for (std::size_t i = 0; i < x0.size(); ++i) {
                x0[i] = lower[i] + (upper[i] - lower[i]) * rng.uniform();
            }
        }
        SearchResult r = maximize_coordinatewise(f, std::move(x0), schedule);
        if (r.value > best.value) {
            best = std::move(r);
            best.start_index = s;
        }
    }
    return best;
}

}  // namespace xtele
