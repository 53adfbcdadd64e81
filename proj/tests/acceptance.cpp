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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "test_util.hpp"
#include "xtele/ensemble.hpp"
#include "xtele/metrics.hpp"
#include "xtele/oracles.hpp"

using namespace xtele;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, a, b, c, d);
    return buf;
}

Outcome werner_fixtures() {
    double worst = 0;
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        const XState x = werner(p);
        const auto f = fidelity_report(x);
        worst = std::max({worst, std::abs(m_closed_form(x) - 2 * p * p), std::abs(f.f1 - (1 + p) / 2),
                          std::abs(f.f2 - (1 + p) / 2), std::abs(f.concurrence - std::max(0.0, (3 * p - 1) / 2))});
    }
    return {worst <= 1e-12, fmt("max error %.2e (tol 1e-12)", worst)};
}

/// Smallest p in [0, 1] where flag(werner(p)) turns on.
double bisect(const std::function<bool(const Classification &)> &flag) {
    double lo = 0;
    double hi = 1;
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        (flag(classify(werner(mid))) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

Outcome thresholds() {
    const double t = bisect([](const Classification &c) { return c.nonclassical_teleport; });
    const double b = bisect([](const Classification &c) { return c.violates_chsh; });
    const double et = std::abs(t - 1.0 / 3);
    const double eb = std::abs(b - 1 / std::numbers::sqrt2);
    return {et <= 1e-10 && eb <= 1e-10,
            fmt("teleport flips at %.12f (err %.1e), chsh at %.12f (err %.1e)", t, et, b, eb)};
}

Outcome hadamard_rotated() {
    const DenseState h = hadamard_rotated_bell();
    const double u = best_unitary_fidelity(h, {}, 32, 1e-4).fidelity;
    const double p = best_pauli_fidelity(h, {}).fidelity;
    return {std::abs(u - 1) <= 1e-4 && std::abs(p - 2.0 / 3) <= 1e-9,
            fmt("unitary %.9f (tol 1e-4 from 1), pauli %.12f (tol 1e-9 from 2/3)", u, p)};
}

Outcome extremal_gap() {
    const double gw = fidelity_report(extremal_gap_state(GapVariant::w_side)).gap;
    const double gz = fidelity_report(extremal_gap_state(GapVariant::z_side)).gap;
    const auto r = verify_prop2(EnsembleSpec{.sample_count = 100000, .seed = 1}, true);
    const bool closed = std::abs(gw - 1.0 / 9) <= 1e-15 && std::abs(gz - 1.0 / 9) <= 1e-15;
    const bool refined = r.extremal_value >= 1.0 / 9 - 1e-6 && r.extremal_value <= 1.0 / 9 + 1e-10;
    return {closed && refined && r.passed(),
            fmt("gap(w) - 1/9 = %.1e, gap(z) - 1/9 = %.1e, refined max %.15f over %.0f samples", gw - 1.0 / 9,
                gz - 1.0 / 9, r.extremal_value, static_cast<double>(r.samples_tested))};
}

Outcome prop1_campaign() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = verify_prop1(EnsembleSpec{.sample_count = 1000000, .seed = 1});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {r.counterexample_count == 0 && r.passed() && secs <= 60,
            fmt("%.0f states, %.0f counterexamples, min f2 among violators %.6f, %.2f s (limit 60)",
                static_cast<double>(r.samples_tested), static_cast<double>(r.counterexample_count), r.extremal_value,
                secs)};
}

Outcome oracle_equivalence() {
    RngStream rng(2);
    double pauli_err = 0, conc_err = 0, n_err = 0, m_err = 0, chsh_low = 0, chsh_high = -1;
    for (int i = 0; i < 10000; ++i) {
        const XState x = sample_x_state(rng);
        const DenseState d = DenseState::from(x);
        const auto f = fidelity_report(x);
        const auto dense = correlation_report(d);
        pauli_err = std::max(pauli_err, std::abs(best_pauli_fidelity(d, pauli_matched_basis(x)).fidelity - f.f2));
        conc_err = std::max(conc_err, std::abs(wootters_concurrence(d) - concurrence_x(x)));
        n_err = std::max(n_err, std::abs(n_closed_form(x) - dense.n_value));
        m_err = std::max(m_err, std::abs(m_closed_form(x) - dense.m_value));
        const double target = 2 * std::sqrt(m_closed_form(x));
        const double v = chsh_maximize(d, 8, 0xc45 + i).value;
        chsh_low = std::max(chsh_low, target - v);
        chsh_high = std::max(chsh_high, v - target);
    }
    const bool ok = pauli_err <= 1e-9 && conc_err <= 1e-10 && n_err <= 1e-10 && m_err <= 1e-10 &&
                    chsh_low <= 1e-3 && chsh_high <= 1e-6;
    return {ok, fmt("pauli %.1e, concurrence %.1e, N %.1e, M %.1e", pauli_err, conc_err, n_err, m_err) +
                    fmt(", chsh shortfall %.1e excess %.1e", chsh_low, chsh_high)};
}

Outcome vw_tsirelson() {
    const auto r = verify_vw_bound(EnsembleSpec{.sample_count = 1000000, .seed = 1});
    return {r.passed(), fmt("%.0f states, %.0f violations, min slack %.3e", static_cast<double>(r.samples_tested),
                            static_cast<double>(r.counterexample_count), r.extremal_value)};
}

Outcome fraction_ordering() {
    const auto e = estimate_fractions(EnsembleSpec{.sample_count = 1000000, .seed = 1});
    const bool ok = e.p_e - e.p_t >= 5 * e.ci_halfwidth && e.p_t - e.p_b >= 5 * e.ci_halfwidth;
    return {ok, fmt("p_e %.6f > p_t %.6f > p_b %.6f, half-width %.2e", e.p_e, e.p_t, e.p_b, e.ci_halfwidth)};
}

Outcome quadrature() {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const DenseState channel = DenseState::validate(test_util::random_density(gen));
        const BellBasis basis{u(gen), u(gen)};
        std::array<EulerAngles, 4> angles;
        for (auto &a : angles) {
            a = {u(gen), u(gen) / 2, u(gen)};
        }
        const TeleportationMap map(channel, basis);
        const auto scheme = CorrectionScheme::unitaries(angles);
        const auto exact = average_fidelity(map, scheme, Octahedral6{});
        const auto mc = average_fidelity(map, scheme, MonteCarloQuadrature{100000, static_cast<std::uint64_t>(i)});
        worst = std::max(worst, std::abs(exact.mean - mc.mean) / mc.std_error);
    }
    return {worst <= 4, fmt("100 channels, worst deviation %.2f standard errors (limit 4)", worst)};
}

Outcome determinism() {
    auto run = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + out.str();
    };
    bool ok = true;
    int compared = 0;
    for (const auto &base : std::vector<std::vector<std::string>>{
             {"ensemble", "--samples", "200000", "--seed", "5"},
             {"verify", "--prop", "1", "--samples", "200000", "--seed", "5"},
             {"verify", "--prop", "2", "--samples", "200000", "--seed", "5", "--refine"},
             {"verify", "--prop", "vw", "--samples", "200000", "--seed", "5"}}) {
        std::string first;
        for (const char *threads : {"1", "2", "5"}) {
            auto args = base;
            args.insert(args.end(), {"--threads", threads});
            const std::string text = run(args);
            if (first.empty()) {
                first = text;
            }
            ok = ok && text == first && text[0] == '0';
            ++compared;
        }
    }
    return {ok, fmt("%.0f runs over thread counts 1, 2, 5 byte-identical per command", compared)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"werner closed forms", werner_fixtures},
        {"werner thresholds", thresholds},
        {"hadamard-rotated bell", hadamard_rotated},
        {"extremal gap", extremal_gap},
        {"proposition 1 campaign", prop1_campaign},
        {"oracle equivalence", oracle_equivalence},
        {"verstraete-wolf and tsirelson", vw_tsirelson},
        {"fraction ordering", fraction_ordering},
        {"quadrature exactness", quadrature},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("criterion %zu %-30s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
