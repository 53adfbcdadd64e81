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


#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "xtele/ensemble.hpp"
#include "xtele/json_io.hpp"
#include "xtele/metrics.hpp"
#include "xtele/oracles.hpp"

namespace xtele::cli {

namespace {

// Distance from a threshold below which a value is reported as a tie.
constexpr double kTieTol = 1e-12;

void emit(std::ostream &out, const json &j) {
    out << j.dump(2) << '\n';
}

/// X states pass through; dense inputs in X form are converted.
std::optional<XState> as_x_state(const AnyState &s) {
    if (const auto *x = std::get_if<XState>(&s)) {
        return *x;
    }
    try {
        return XState::from_dense(std::get<DenseState>(s).rho());
    } catch (const Error &e) {
        if (e.code() == ErrorCode::NotXState) {
            return std::nullopt;
        }
        throw;
    }
}

DenseState as_dense(const AnyState &s) {
    if (const auto *x = std::get_if<XState>(&s)) {
        return DenseState::from(*x);
    }
    return std::get<DenseState>(s);
}

BellBasis choose_basis(const std::string &name, const std::optional<XState> &x) {
    if (name == "standard") {
        return {};
    }
    if (name == "coherence") {
        return x ? coherence_basis(*x) : BellBasis{};
    }
    if (name == "auto") {
        return x ? pauli_matched_basis(*x) : BellBasis{};
    }
    throw Error(ErrorCode::ParseError, "unknown basis '" + name + "'");
}

json basis_json(const BellBasis &b) {
    return json{{"alpha", b.alpha}, {"beta", b.beta}};
}

json boundary_ties(const XState &x, const FidelityReport &f, double m_value) {
    json ties = json::array();
    if (std::abs(m_value - 1.0) <= kTieTol) {
        ties.push_back("violates_chsh");
    }
    const double margin = std::max(x.abs_w() - std::sqrt(x.b() * x.c()), x.abs_z() - std::sqrt(x.a() * x.d()));
    if (std::abs(margin) <= kTieTol) {
        ties.push_back("entangled");
    }
    if (std::abs(f.f2 - kClassicalFidelity) <= kTieTol) {
        ties.push_back("nonclassical_teleport");
    }
    return ties;
}

unsigned threads_from_env() {
    const char *env = std::getenv("XTELE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char *end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0') {
        throw Error(ErrorCode::ParseError, "XTELE_THREADS must be a non-negative integer");
    }
    return static_cast<unsigned>(v);
}

std::string format_g12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

XState sweep_state(const std::string &family, double v) {
    if (family == "werner") {
        return werner(v);
    }
    if (family == "bell") {
        return bell(0, v);
    }
    // Family through the w-side extremal state (s = 1/3).
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::ParamOutOfRange, "extremal-gap parameter s must lie in [0, 1]");
    }
    return XState::validate(v / 2, (1 - v) / 2, (1 - v) / 2, v / 2, v / 2, 0.0);
}

std::string default_param(const std::string &family) {
    if (family == "werner") {
        return "p";
    }
    if (family == "bell") {
        return "alpha";
    }
    if (family == "extremal-gap") {
        return "s";
    }
    throw Error(ErrorCode::ParseError, "unknown family '" + family + "'");
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return kExitParse;
        case ErrorCode::IoError: return kExitIo;
        default: return kExitValidation;
    }
}

}  // namespace

int cmd_analyze(const AnalyzeOptions &opts, std::ostream &out) {
    const AnyState state = load_state_file(opts.state_file);
    const auto x = as_x_state(state);
    const BellBasis basis = choose_basis(opts.basis, x);
    const DenseState dense = as_dense(state);

    json report;
    report["state"] = state_to_json(state);
    report["x_form"] = x.has_value();
    if (x) {
        const auto corr = correlation_report(*x);
        const auto fid = fidelity_report(*x);
        report["correlation"] = to_json(corr);
        report["fidelity"] = to_json(fid);
        report["classification"] = to_json(classify(*x));
        report["boundary_ties"] = boundary_ties(*x, fid, corr.m_value);
    } else {
        // No closed forms off the X family: eigensolver and oracle values only.
        const auto corr = correlation_report(dense);
        const double c = wootters_concurrence(dense);
        report["correlation"] = to_json(corr);
        report["fidelity"] = json{{"concurrence", c}};
        report["classification"] = json{{"entangled", c > 0}, {"violates_chsh", corr.m_value > 1}};
    }
    const auto pauli = best_pauli_fidelity(dense, basis);
    report["oracle"] = json{{"basis", basis_json(basis)}, {"best_pauli_fidelity", pauli.fidelity},
                            {"scheme", to_json(pauli.scheme)}};
    emit(out, report);
    return kExitOk;
}

std::string sweep_csv(const SweepOptions &opts) {
    const std::string expected = default_param(opts.family);
    if (!opts.param.empty() && opts.param != expected) {
        throw Error(ErrorCode::ParseError, "family '" + opts.family + "' takes parameter '" + expected + "'");
    }
    if (opts.steps < 2) {
        throw Error(ErrorCode::ParamOutOfRange, "steps must be >= 2");
    }
    if (!(opts.from <= opts.to)) {
        throw Error(ErrorCode::ParamOutOfRange, "from must not exceed to");
    }
    std::string csv =
        "family,param,n_value,m_value,b_max,concurrence,f1,f2,gap,entangled,violates_chsh,nonclassical_teleport\n";
    for (int i = 0; i < opts.steps; ++i) {
        const double v = i == opts.steps - 1
                             ? opts.to
                             : opts.from + (opts.to - opts.from) * static_cast<double>(i) / (opts.steps - 1);
        const XState x = sweep_state(opts.family, v);
        const auto corr = correlation_report(x);
        const auto fid = fidelity_report(x);
        const auto cls = classify(x);
        csv += opts.family;
        for (double q : {v, corr.n_value, corr.m_value, corr.b_max, fid.concurrence, fid.f1, fid.f2, fid.gap}) {
            csv += ',' + format_g12(q);
        }
        for (bool b : {cls.entangled, cls.violates_chsh, cls.nonclassical_teleport}) {
            csv += b ? ",1" : ",0";
        }
        csv += '\n';
    }
    return csv;
}

int cmd_sweep(const SweepOptions &opts, std::ostream &out) {
    const std::string csv = sweep_csv(opts);
    if (opts.output.empty() || opts.output == "-") {
        out << csv;
        return kExitOk;
    }
    std::ofstream file(opts.output, std::ios::binary);
    if (!file || !(file << csv) || !file.flush()) {
        throw Error(ErrorCode::IoError, "cannot write '" + opts.output + "'");
    }
    return kExitOk;
}

int cmd_ensemble(const EnsembleOptions &opts, std::ostream &out) {
    EnsembleSpec spec{.sample_count = opts.samples, .seed = opts.seed};
    emit(out, to_json(estimate_fractions(spec, opts.threads)));
    return kExitOk;
}

int cmd_verify(const VerifyOptions &opts, std::ostream &out) {
    EnsembleSpec spec{.sample_count = opts.samples, .seed = opts.seed};
    VerificationReport report;
    if (opts.prop == "1") {
        report = verify_prop1(spec, opts.threads);
    } else if (opts.prop == "2") {
        report = verify_prop2(spec, opts.refine, opts.threads);
    } else if (opts.prop == "vw") {
        report = verify_vw_bound(spec, opts.threads);
    } else {
        throw Error(ErrorCode::ParseError, "--prop must be 1, 2 or vw");
    }
    emit(out, to_json(report));
    return report.passed() ? kExitOk : kExitPropositionFailed;
}

int cmd_teleport(const TeleportOptions &opts, std::ostream &out) {
    if (opts.corrections != "pauli" && opts.corrections != "optimal") {
        throw Error(ErrorCode::ParseError, "--corrections must be pauli or optimal");
    }
    Quadrature quadrature = Octahedral6{};
    if (opts.quadrature == "mc") {
        quadrature = MonteCarloQuadrature{opts.mc_n, opts.seed};
    } else if (opts.quadrature != "octa") {
        throw Error(ErrorCode::ParseError, "--quadrature must be octa or mc");
    }
    const AnyState state = load_state_file(opts.state_file);
    const auto x = as_x_state(state);
    const BellBasis basis = choose_basis(opts.basis, x);
    const DenseState dense = as_dense(state);
    const bool pauli = opts.corrections == "pauli";

    // The scheme search always uses the exact octahedral rule; the requested
    // quadrature then evaluates the winner.
    const SchemeSearchResult best = pauli ? best_pauli_fidelity(dense, basis)
                                          : best_unitary_fidelity(dense, basis, opts.restarts, 1e-4, opts.seed);
    const FidelityEstimate est = average_fidelity(dense, basis, best.scheme, quadrature);

    json report{{"corrections", opts.corrections},
                {"quadrature", opts.quadrature},
                {"basis", basis_json(basis)},
                {"oracle_fidelity", est.mean},
                {"std_error", est.std_error},
                {"scheme", to_json(best.scheme)}};
    if (x) {
        const auto fid = fidelity_report(*x);
        const double closed = pauli ? fid.f2 : fid.f1;
        report["closed_form_fidelity"] = closed;
        report["abs_diff"] = std::abs(est.mean - closed);
    } else {
        report["closed_form_fidelity"] = nullptr;
        report["abs_diff"] = nullptr;
    }
    emit(out, report);
    return kExitOk;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Entanglement, CHSH and teleportation quantities for two-qubit X states", "xtele"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    auto *c_analyze = app.add_subcommand("analyze", "Report correlation, fidelity and flags for one state");
    c_analyze->add_option("state_file", analyze.state_file, "State JSON file")->required();
    c_analyze->add_option("--basis", analyze.basis, "Bell basis for the Pauli oracle")
        ->check(CLI::IsMember({"auto", "standard", "coherence"}));

    SweepOptions sweep;
    auto *c_sweep = app.add_subcommand("sweep", "Tabulate a one-parameter family as CSV");
    c_sweep->add_option("--family", sweep.family)->check(CLI::IsMember({"werner", "bell", "extremal-gap"}));
    c_sweep->add_option("--param", sweep.param);
    c_sweep->add_option("--from", sweep.from);
    c_sweep->add_option("--to", sweep.to);
    c_sweep->add_option("--steps", sweep.steps);
    c_sweep->add_option("--output,-o", sweep.output, "CSV path, '-' for stdout");

    std::optional<unsigned> threads;
    EnsembleOptions ensemble;
    auto *c_ensemble = app.add_subcommand("ensemble", "Estimate entangled/teleporting/violating fractions");
    c_ensemble->add_option("--samples", ensemble.samples);
    c_ensemble->add_option("--seed", ensemble.seed);
    c_ensemble->add_option("--threads", threads, "Worker cap (default XTELE_THREADS or all cores)");

    VerifyOptions verify;
    auto *c_verify = app.add_subcommand("verify", "Run a proposition campaign");
    c_verify->add_option("--prop", verify.prop)->required()->check(CLI::IsMember({"1", "2", "vw"}));
    c_verify->add_option("--samples", verify.samples);
    c_verify->add_option("--seed", verify.seed);
    c_verify->add_flag("--refine", verify.refine, "Hill-climb the gap (prop 2)");
    c_verify->add_option("--threads", threads, "Worker cap (default XTELE_THREADS or all cores)");

    TeleportOptions teleport;
    auto *c_teleport = app.add_subcommand("teleport", "Simulate the protocol and compare to closed forms");
    c_teleport->add_option("state_file", teleport.state_file, "State JSON file")->required();
    c_teleport->add_option("--corrections", teleport.corrections)->check(CLI::IsMember({"pauli", "optimal"}));
    c_teleport->add_option("--quadrature", teleport.quadrature)->check(CLI::IsMember({"octa", "mc"}));
    c_teleport->add_option("--mc-n", teleport.mc_n);
    c_teleport->add_option("--seed", teleport.seed);
    c_teleport->add_option("--basis", teleport.basis)->check(CLI::IsMember({"auto", "standard", "coherence"}));
    c_teleport->add_option("--restarts", teleport.restarts);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error ParseError: " << e.what() << '\n';
        return kExitParse;
    }

    try {
        const unsigned workers = threads ? *threads : threads_from_env();
        if (c_analyze->parsed()) {
            return cmd_analyze(analyze, out);
        }
        if (c_sweep->parsed()) {
            return cmd_sweep(sweep, out);
        }
        if (c_ensemble->parsed()) {
            ensemble.threads = workers;
            return cmd_ensemble(ensemble, out);
        }
        if (c_verify->parsed()) {
            verify.threads = workers;
            return cmd_verify(verify, out);
        }
        return cmd_teleport(teleport, out);
    } catch (const Error &e) {
        err << "error " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

}  // namespace xtele::cli
