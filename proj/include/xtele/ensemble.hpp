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

// Monte Carlo campaigns over random X states: the entangled / teleportation-
// useful / CHSH-violating fractions, and counterexample searches for the
// fidelity and nonlocality properties.
//
// Sampling is split into fixed-size blocks; block k of stratum s draws from
// RngStream::derive(seed, s << 48 | k). Results are reduced in block order,
// so every report is a pure function of the spec regardless of worker count.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xtele/metrics.hpp"
#include "xtele/parallel.hpp"
#include "xtele/rng.hpp"
#include "xtele/states.hpp"

namespace xtele {

inline constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 14;
inline constexpr std::size_t kMaxStoredCounterexamples = 100;
inline constexpr double kMaxGap = 1.0 / 9.0;
inline constexpr double kGapSlack = 1e-10;
inline constexpr double kRefineTarget = 1e-6;
inline constexpr double kBoundSlack = 1e-9;
inline constexpr double kTsirelsonSlack = 1e-10;

/// uniform: the plain dirichlet-disk measure.
/// saturated: coherence radii drawn in [0.95, 1] of their bound.
/// face: as saturated, with one population pushed towards zero.
enum class Stratum : std::uint64_t { uniform = 0, saturated = 1, face = 2 };

inline XState sample_stratum(RngStream &rng, Stratum stratum) {
    if (stratum == Stratum::uniform) {
        return sample_x_state(rng);
    }
    auto p = sample_simplex(rng);
    if (stratum == Stratum::face) {
        const std::size_t k = rng.next_u64() % 4;
        p[k] *= 1e-3 * rng.uniform();
        const double sum = p[0] + p[1] + p[2] + p[3];
        for (auto &x : p) {
            x /= sum;
        }
    }
    const cplx w = sample_disk(rng, std::sqrt(p[0] * p[3]), 0.95);
    const cplx z = sample_disk(rng, std::sqrt(p[1] * p[2]), 0.95);
    return XState::validate(p[0], p[1], p[2], p[3], w, z);
}

/// Everything the campaigns look at for one state.
struct Quantities {
    double m_value = 0;
    double b_max = 0;
    double concurrence = 0;
    double f1 = 0;
    double f2 = 0;
    double gap = 0;
};

inline Quantities analyze_quantities(const XState &x) {
    const auto corr = correlation_report(x);
    const auto fid = fidelity_report(x);
    return {corr.m_value, corr.b_max, fid.concurrence, fid.f1, fid.f2, fid.gap};
}

struct Counterexample {
    XState state;
    Quantities quantities;
    std::string reason;
};

struct FractionEstimate {
    double p_e = 0;
    double p_t = 0;
    double p_b = 0;
    double ci_halfwidth = 0;  // largest 95% normal-approximation half-width of the three
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    std::string measure_id;
    bool low_sample_warning = false;  // sample_count < 1000
};

struct VerificationReport {
    std::string proposition_id;  // "prop1", "prop2" or "vw-bound"
    std::uint64_t samples_tested = 0;
    std::vector<Counterexample> counterexamples;  // first kMaxStoredCounterexamples, in sample order
    std::uint64_t counterexample_count = 0;
    // prop1: smallest f2 among CHSH-violating states; prop2: largest gap;
    // vw-bound: smallest slack to either bound.
    double extremal_value = 0;
    std::optional<XState> extremal_state;
    std::vector<std::string> failed_checks;  // aggregate checks that are not per-state
    std::uint64_t seed = 0;
    std::string measure_id;

    bool passed() const {
        return counterexample_count == 0 && failed_checks.empty();
    }
};

namespace detail {

struct Job {
    Stratum stratum = Stratum::uniform;
    std::uint64_t block = 0;
    std::uint64_t count = 0;
};

inline std::vector<Job> plan_jobs(const std::vector<std::pair<Stratum, std::uint64_t>> &strata) {
    std::vector<Job> jobs;
    for (const auto &[stratum, total] : strata) {
        for (std::uint64_t start = 0, block = 0; start < total; start += kBlockSize, ++block) {
            jobs.push_back({stratum, block, std::min(kBlockSize, total - start)});
        }
    }
    return jobs;
}

inline std::uint64_t boundary_stratum_size(std::uint64_t sample_count) {
    return std::max<std::uint64_t>(1, sample_count / 4);
}

/// visit(acc, state) over every sample of every job; one accumulator per job.
template <typename Acc, typename Visit>
std::vector<Acc> run_jobs(const std::vector<Job> &jobs, std::uint64_t seed, unsigned threads, Visit visit) {
    return parallel_map<Acc>(jobs.size(), threads, [&](std::size_t j) {
        const Job &job = jobs[j];
        RngStream rng = RngStream::derive(seed, (static_cast<std::uint64_t>(job.stratum) << 48) | job.block);
        Acc acc;
        for (std::uint64_t n = 0; n < job.count; ++n) {
            visit(acc, sample_stratum(rng, job.stratum));
        }
        return acc;
    });
}

struct CounterexampleSink {
    std::vector<Counterexample> stored;
    std::uint64_t count = 0;

    void add(const XState &x, const Quantities &q, std::string reason) {
        ++count;
        if (stored.size() < kMaxStoredCounterexamples) {
            stored.push_back({x, q, std::move(reason)});
        }
    }

    void merge_into(VerificationReport &report) const {
        report.counterexample_count += count;
        for (const auto &c : stored) {
            if (report.counterexamples.size() < kMaxStoredCounterexamples) {
                report.counterexamples.push_back(c);
            }
        }
    }
};

/// a > b with ties broken by the state's parameter tuple.
inline bool ranks_above(double a, const XState &sa, double b, const XState &sb) {
    if (a != b) {
        return a > b;
    }
    return sa.key() > sb.key();
}

inline VerificationReport make_report(const EnsembleSpec &spec, std::string id) {
    VerificationReport r;
    r.proposition_id = std::move(id);
    r.seed = spec.seed;
    r.measure_id = std::string(measure_id(spec.measure));
    return r;
}

}  // namespace detail

inline FractionEstimate estimate_fractions(const EnsembleSpec &spec, unsigned threads = 0) {
    spec.check();
    struct Counts {
        std::uint64_t e = 0, t = 0, b = 0;
    };
    const auto jobs = detail::plan_jobs({{Stratum::uniform, spec.sample_count}});
    const auto parts = detail::run_jobs<Counts>(jobs, spec.seed, threads, [](Counts &acc, const XState &x) {
        const auto flags = classify(x);
        acc.e += flags.entangled;
        acc.t += flags.nonclassical_teleport;
        acc.b += flags.violates_chsh;
    });
    Counts total;
    for (const auto &p : parts) {
        total.e += p.e;
        total.t += p.t;
        total.b += p.b;
    }
    const double n = static_cast<double>(spec.sample_count);
    FractionEstimate est;
    est.p_e = static_cast<double>(total.e) / n;
    est.p_t = static_cast<double>(total.t) / n;
    est.p_b = static_cast<double>(total.b) / n;
    for (double p : {est.p_e, est.p_t, est.p_b}) {
        est.ci_halfwidth = std::max(est.ci_halfwidth, 1.96 * std::sqrt(p * (1 - p) / n));
    }
    est.sample_count = spec.sample_count;
    est.seed = spec.seed;
    est.measure_id = std::string(measure_id(spec.measure));
    est.low_sample_warning = spec.sample_count < 1000;
    return est;
}

/// Every state with M > 1 must have F2 > 2/3.
inline VerificationReport verify_prop1(const EnsembleSpec &spec, unsigned threads = 0) {
    spec.check();
    struct Acc {
        detail::CounterexampleSink sink;
        std::uint64_t tested = 0;
        double min_f2 = INFINITY;
        std::optional<XState> argmin;
    };
    const std::uint64_t extra = detail::boundary_stratum_size(spec.sample_count);
    const auto jobs = detail::plan_jobs(
        {{Stratum::uniform, spec.sample_count}, {Stratum::saturated, extra}, {Stratum::face, extra}});
    const auto parts = detail::run_jobs<Acc>(jobs, spec.seed, threads, [](Acc &acc, const XState &x) {
        ++acc.tested;
        const Quantities q = analyze_quantities(x);
        if (q.m_value > 1) {
            if (!acc.argmin || detail::ranks_above(acc.min_f2, *acc.argmin, q.f2, x)) {
                acc.min_f2 = q.f2;
                acc.argmin = x;
            }
            if (!(q.f2 > kClassicalFidelity)) {
                acc.sink.add(x, q, "M > 1 but f2 <= 2/3");
            }
        }
    });
    auto report = detail::make_report(spec, "prop1");
    report.extremal_value = INFINITY;
    for (const auto &p : parts) {
        report.samples_tested += p.tested;
        p.sink.merge_into(report);
        if (p.argmin && (!report.extremal_state ||
                         detail::ranks_above(report.extremal_value, *report.extremal_state, p.min_f2, *p.argmin))) {
            report.extremal_value = p.min_f2;
            report.extremal_state = p.argmin;
        }
    }
    if (!report.extremal_state) {
        report.extremal_value = NAN;
    }
    return report;
}

struct GapClimbResult {
    XState state;
    double gap = 0;
};

/// Projected local search maximizing F1 - F2 over X states. Coordinates are
/// the four populations (single moves renormalize the diagonal; pair moves
/// transfer weight between two populations) and the coherence magnitudes
/// relative to their bounds, clamped to [0, 1]. Phases are kept. Steps halve
/// from 1e-2 to 1e-8. Moves that tie on the gap are accepted if they increase
/// |w| + |z|, which lets the search slide along the ridge where both
/// maximizing branches of the fully entangled fraction coincide.
inline GapClimbResult hill_climb_gap(const XState &start) {
    struct Point {
        std::array<double, 4> p;
        double rel_w, rel_z;
    };
    const double phase_w = start.alpha();
    const double phase_z = start.beta();
    auto build = [&](const Point &pt) {
        return XState::validate(pt.p[0], pt.p[1], pt.p[2], pt.p[3],
                                std::polar(pt.rel_w * std::sqrt(pt.p[0] * pt.p[3]), phase_w),
                                std::polar(pt.rel_z * std::sqrt(pt.p[1] * pt.p[2]), phase_z));
    };
    auto relative = [](double magnitude, double bound) {
        return bound > 0 ? std::clamp(magnitude / bound, 0.0, 1.0) : 0.0;
    };
    Point cur{{start.a(), start.b(), start.c(), start.d()},
              relative(start.abs_w(), std::sqrt(start.a() * start.d())),
              relative(start.abs_z(), std::sqrt(start.b() * start.c()))};
    XState cur_state = build(cur);
    double cur_gap = fidelity_report(cur_state).gap;
    double cur_sec = cur_state.abs_w() + cur_state.abs_z();

    auto normalize = [](std::array<double, 4> &p) {
        double sum = 0;
        for (auto &x : p) {
            x = std::max(0.0, x);
            sum += x;
        }
        for (auto &x : p) {
            x /= sum;
        }
    };
    constexpr double kTie = 1e-15;
    constexpr long kMaxEvaluations = 2'000'000;
    long evaluations = 0;
    auto try_move = [&](const Point &cand) {
        ++evaluations;
        const XState s = build(cand);
        const double g = fidelity_report(s).gap;
        const double sec = s.abs_w() + s.abs_z();
        if (g > cur_gap + kTie || (g >= cur_gap - kTie && sec > cur_sec + kTie)) {
            cur = cand;
            cur_state = s;
            cur_gap = g;
            cur_sec = sec;
            return true;
        }
        return false;
    };

    for (double h = 1e-2; h >= 1e-8 && evaluations < kMaxEvaluations;) {
        bool improved = false;
        for (int sign : {+1, -1}) {
            for (std::size_t k = 0; k < 4; ++k) {
                Point cand = cur;
                cand.p[k] += sign * h;
                normalize(cand.p);
                improved |= try_move(cand);
            }
            Point cw = cur;
            cw.rel_w = std::clamp(cw.rel_w + sign * h, 0.0, 1.0);
            improved |= try_move(cw);
            Point cz = cur;
            cz.rel_z = std::clamp(cz.rel_z + sign * h, 0.0, 1.0);
            improved |= try_move(cz);
        }
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t k = 0; k < 4; ++k) {
                if (j == k) {
                    continue;
                }
                Point cand = cur;
                const double amount = std::min(h, cand.p[j]);
                cand.p[j] -= amount;
                cand.p[k] += amount;
                normalize(cand.p);
                improved |= try_move(cand);
            }
        }
        if (!improved) {
            h *= 0.5;
        }
    }
    return {cur_state, cur_gap};
}

/// F1 - F2 <= 1/9 everywhere, and < 1/9 whenever M > 1. With `refine`, the
/// 100 largest sampled gaps and both extremal states seed hill_climb_gap, and
/// the best value reached must be within 1e-6 of 1/9.
inline VerificationReport verify_prop2(const EnsembleSpec &spec, bool refine, unsigned threads = 0) {
    spec.check();
    constexpr std::size_t kKeep = 100;
    struct Ranked {
        double gap;
        XState state;
    };
    auto by_rank = [](const Ranked &x, const Ranked &y) { return detail::ranks_above(x.gap, x.state, y.gap, y.state); };
    struct Acc {
        detail::CounterexampleSink sink;
        std::uint64_t tested = 0;
        std::vector<Ranked> top;
    };
    auto check = [](detail::CounterexampleSink &sink, const XState &x, const Quantities &q) {
        if (!(q.gap <= kMaxGap + kGapSlack)) {
            sink.add(x, q, "gap exceeds 1/9");
        }
        if (q.m_value > 1 && !(q.gap < kMaxGap)) {
            sink.add(x, q, "M > 1 but gap >= 1/9");
        }
    };
    const std::uint64_t extra = detail::boundary_stratum_size(spec.sample_count);
    const auto jobs = detail::plan_jobs(
        {{Stratum::uniform, spec.sample_count}, {Stratum::saturated, extra}, {Stratum::face, extra}});
    const auto parts = detail::run_jobs<Acc>(jobs, spec.seed, threads, [&](Acc &acc, const XState &x) {
        ++acc.tested;
        const Quantities q = analyze_quantities(x);
        check(acc.sink, x, q);
        acc.top.push_back({q.gap, x});
        if (acc.top.size() >= 4 * kKeep) {
            std::sort(acc.top.begin(), acc.top.end(), by_rank);
            acc.top.erase(acc.top.begin() + kKeep, acc.top.end());
        }
    });
    auto report = detail::make_report(spec, "prop2");
    std::vector<Ranked> top;
    for (const auto &p : parts) {
        report.samples_tested += p.tested;
        p.sink.merge_into(report);
        top.insert(top.end(), p.top.begin(), p.top.end());
    }
    std::sort(top.begin(), top.end(), by_rank);
    if (top.size() > kKeep) {
        top.erase(top.begin() + kKeep, top.end());
    }
    std::optional<Ranked> best;
    if (!top.empty()) {
        best = top.front();
    }
    if (refine) {
        std::vector<XState> seeds;
        for (const auto &r : top) {
            seeds.push_back(r.state);
        }
        seeds.push_back(extremal_gap_state(GapVariant::w_side));
        seeds.push_back(extremal_gap_state(GapVariant::z_side));
        const auto climbed =
            parallel_map<GapClimbResult>(seeds.size(), threads, [&](std::size_t i) { return hill_climb_gap(seeds[i]); });
        detail::CounterexampleSink sink;
        for (const auto &c : climbed) {
            ++report.samples_tested;
            check(sink, c.state, analyze_quantities(c.state));
            if (!best || by_rank(Ranked{c.gap, c.state}, *best)) {
                best = Ranked{c.gap, c.state};
            }
        }
        sink.merge_into(report);
    }
    if (best) {
        report.extremal_value = best->gap;
        report.extremal_state = best->state;
    }
    if (refine && !(report.extremal_value >= kMaxGap - kRefineTarget)) {
        report.failed_checks.push_back("refined maximum gap below 1/9 - 1e-6");
    }
    return report;
}

/// 2 sqrt2 C <= B_max <= 2 sqrt(1 + C^2) and B_max <= 2 sqrt2, each with the
/// stated slack; states with C > 1/sqrt2 must violate CHSH.
inline VerificationReport verify_vw_bound(const EnsembleSpec &spec, unsigned threads = 0) {
    spec.check();
    struct Acc {
        detail::CounterexampleSink sink;
        std::uint64_t tested = 0;
        double min_slack = INFINITY;
        std::optional<XState> argmin;
    };
    const std::uint64_t extra = detail::boundary_stratum_size(spec.sample_count);
    const auto jobs = detail::plan_jobs(
        {{Stratum::uniform, spec.sample_count}, {Stratum::saturated, extra}, {Stratum::face, extra}});
    const auto parts = detail::run_jobs<Acc>(jobs, spec.seed, threads, [](Acc &acc, const XState &x) {
        ++acc.tested;
        const Quantities q = analyze_quantities(x);
        const double lower = 2 * std::numbers::sqrt2 * q.concurrence;
        const double upper = 2 * std::sqrt(1 + q.concurrence * q.concurrence);
        if (q.b_max < lower - kBoundSlack) {
            acc.sink.add(x, q, "B_max below 2 sqrt2 C");
        }
        if (q.b_max > upper + kBoundSlack) {
            acc.sink.add(x, q, "B_max above 2 sqrt(1 + C^2)");
        }
        if (q.b_max > 2 * std::numbers::sqrt2 + kTsirelsonSlack) {
            acc.sink.add(x, q, "B_max above 2 sqrt2");
        }
        if (q.concurrence > 1 / std::numbers::sqrt2 && !(q.b_max > 2)) {
            acc.sink.add(x, q, "C > 1/sqrt2 without CHSH violation");
        }
        const double slack = std::min(q.b_max - lower, upper - q.b_max);
        if (!acc.argmin || detail::ranks_above(acc.min_slack, *acc.argmin, slack, x)) {
            acc.min_slack = slack;
            acc.argmin = x;
        }
    });
    auto report = detail::make_report(spec, "vw-bound");
    report.extremal_value = INFINITY;
    for (const auto &p : parts) {
        report.samples_tested += p.tested;
        p.sink.merge_into(report);
        if (p.argmin && (!report.extremal_state ||
                         detail::ranks_above(report.extremal_value, *report.extremal_state, p.min_slack, *p.argmin))) {
            report.extremal_value = p.min_slack;
            report.extremal_state = p.argmin;
        }
    }
    return report;
}

}  // namespace xtele
