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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xtele {

enum class ErrorCode {
    NotHermitian,
    InvalidDensity,
    BadSubsystemSpec,
    NonUnitTrace,
    NegativePopulation,
    CoherenceBoundViolated,
    ParamOutOfRange,
    NotXState,
    NonUnitaryCorrection,
    ParseError,
    IoError,
};

/// Stable machine-readable token for an error code. These strings are part of
/// the CLI contract and must not change.
constexpr std::string_view error_token(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::InvalidDensity: return "InvalidDensity";
        case ErrorCode::BadSubsystemSpec: return "BadSubsystemSpec";
        case ErrorCode::NonUnitTrace: return "NonUnitTrace";
        case ErrorCode::NegativePopulation: return "NegativePopulation";
        case ErrorCode::CoherenceBoundViolated: return "CoherenceBoundViolated";
        case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
        case ErrorCode::NotXState: return "NotXState";
        case ErrorCode::NonUnitaryCorrection: return "NonUnitaryCorrection";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &detail)
        : std::runtime_error(std::string(error_token(code)) + ": " + detail), code_(code) {
    }

    ErrorCode code() const noexcept {
        return code_;
    }

private:
    ErrorCode code_;
};

}  // namespace xtele
