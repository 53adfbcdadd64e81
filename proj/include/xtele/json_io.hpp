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

// JSON encodings of states and reports.
//
// State files:
//   {"type":"x","a":..,"b":..,"c":..,"d":..,"w":{"re":..,"im":..},"z":{"re":..,"im":..}}
//   {"type":"dense","re":[[4x4]],"im":[[4x4]]}
// Doubles are written in shortest round-trip form, so re-reading a file
// reproduces every value bit for bit.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "xtele/ensemble.hpp"
#include "xtele/metrics.hpp"
#include "xtele/oracles.hpp"
#include "xtele/states.hpp"

namespace xtele {

using json = nlohmann::json;
using AnyState = std::variant<XState, DenseState>;

inline json complex_to_json(cplx v) {
    return json{{"re", v.real()}, {"im", v.imag()}};
}

inline json state_to_json(const XState &x) {
    return json{{"type", "x"}, {"a", x.a()}, {"b", x.b()}, {"c", x.c()}, {"d", x.d()},
                {"w", complex_to_json(x.w())}, {"z", complex_to_json(x.z())}};
}

inline json state_to_json(const DenseState &s) {
    json re = json::array();
    json im = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        json rr = json::array();
        json ii = json::array();
        for (std::size_t j = 0; j < 4; ++j) {
            rr.push_back(s.rho()(i, j).real());
            ii.push_back(s.rho()(i, j).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return json{{"type", "dense"}, {"re", re}, {"im", im}};
}

inline json state_to_json(const AnyState &s) {
    return std::visit([](const auto &v) { return state_to_json(v); }, s);
}

namespace detail {

inline double number_field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
        throw Error(ErrorCode::ParseError, std::string("missing or non-numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

inline cplx complex_field(const json &j, const char *key) {
    if (!j.contains(key)) {
        throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    }
    const json &v = j.at(key);
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    return {number_field(v, "re"), number_field(v, "im")};
}

inline CMatrix matrix_field(const json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 4) {
        throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a 4x4 array");
    }
    CMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        const json &row = j.at(key).at(i);
        if (!row.is_array() || row.size() != 4) {
            throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a 4x4 array");
        }
        for (std::size_t k = 0; k < 4; ++k) {
            if (!row.at(k).is_number()) {
                throw Error(ErrorCode::ParseError, std::string("field '") + key + "' has a non-numeric entry");
            }
            m(i, k) = row.at(k).get<double>();
        }
    }
    return m;
}

}  // namespace detail

/// Schema problems raise ParseError; physically invalid values raise the
/// validation error of the corresponding state type.
inline AnyState state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
        throw Error(ErrorCode::ParseError, "state must be an object with a string 'type'");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "x") {
        return XState::validate(detail::number_field(j, "a"), detail::number_field(j, "b"),
                                detail::number_field(j, "c"), detail::number_field(j, "d"),
                                detail::complex_field(j, "w"), detail::complex_field(j, "z"));
    }
    if (type == "dense") {
        const CMatrix re = detail::matrix_field(j, "re");
        const CMatrix im = detail::matrix_field(j, "im");
        return DenseState::validate(re + im * cplx(0, 1));
    }
    throw Error(ErrorCode::ParseError, "unknown state type '" + type + "'");
}

inline AnyState parse_state(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return state_from_json(j);
}

inline AnyState load_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_state(buffer.str());
}

inline json to_json(const Matrix3 &t) {
    json out = json::array();
    for (const auto &row : t) {
        // Adding +0.0 turns -0.0 into 0.0.
        out.push_back(json{row[0] + 0.0, row[1] + 0.0, row[2] + 0.0});
    }
    return out;
}

inline json to_json(const CorrelationReport &r) {
    return json{{"t", to_json(r.t)},         {"u", r.u},         {"n_value", r.n_value},
                {"m_value", r.m_value},      {"b_max", r.b_max}};
}

inline json to_json(const FidelityReport &r) {
    return json{{"chi", r.chi}, {"fef", r.fef}, {"f1", r.f1},
                {"f2", r.f2},   {"gap", r.gap}, {"concurrence", r.concurrence}};
}

inline json to_json(const Classification &c) {
    return json{{"entangled", c.entangled},
                {"violates_chsh", c.violates_chsh},
                {"nonclassical_teleport", c.nonclassical_teleport}};
}

inline json to_json(const Quantities &q) {
    return json{{"m_value", q.m_value}, {"b_max", q.b_max}, {"concurrence", q.concurrence},
                {"f1", q.f1},           {"f2", q.f2},       {"gap", q.gap}};
}

inline json to_json(const Counterexample &c) {
    return json{{"state", state_to_json(c.state)}, {"quantities", to_json(c.quantities)}, {"reason", c.reason}};
}

inline json to_json(const FractionEstimate &e) {
    return json{{"p_e", e.p_e},
                {"p_t", e.p_t},
                {"p_b", e.p_b},
                {"ci_halfwidth", e.ci_halfwidth},
                {"sample_count", e.sample_count},
                {"seed", e.seed},
                {"measure_id", e.measure_id},
                {"low_sample_warning", e.low_sample_warning}};
}

inline json to_json(const VerificationReport &r) {
    json ces = json::array();
    for (const auto &c : r.counterexamples) {
        ces.push_back(to_json(c));
    }
    json out{{"proposition_id", r.proposition_id},
             {"passed", r.passed()},
             {"samples_tested", r.samples_tested},
             {"counterexample_count", r.counterexample_count},
             {"counterexamples", ces},
             {"extremal_value", r.extremal_value},
             {"failed_checks", r.failed_checks},
             {"seed", r.seed},
             {"measure_id", r.measure_id}};
    out["extremal_state"] = r.extremal_state ? state_to_json(*r.extremal_state) : json(nullptr);
    return out;
}

inline json to_json(const CorrectionScheme &s) {
    json out;
    if (s.mode() == CorrectionScheme::Mode::pauli) {
        static constexpr const char *kNames[] = {"I", "X", "Y", "Z"};
        json labels = json::array();
        for (int l : s.pauli_labels()) {
            labels.push_back(kNames[l]);
        }
        out["mode"] = "pauli";
        out["corrections"] = labels;
    } else {
        out["mode"] = "unitary";
        if (s.angles()) {
            json angles = json::array();
            for (const auto &a : *s.angles()) {
                angles.push_back(json(a));
            }
            out["euler_zyz"] = angles;
        }
    }
    return out;
}

}  // namespace xtele
