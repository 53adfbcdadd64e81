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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xtele::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitPropositionFailed = 1,
    kExitParse = 2,
    kExitValidation = 3,
    kExitIo = 4,
};

struct AnalyzeOptions {
    std::string state_file;
    std::string basis = "auto";  // auto, standard, coherence
};

struct SweepOptions {
    std::string family = "werner";  // werner, bell, extremal-gap
    std::string param;              // defaults to the family's parameter
    double from = 0;
    double to = 1;
    int steps = 101;
    std::string output = "-";
};

struct EnsembleOptions {
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

struct VerifyOptions {
    std::string prop;  // 1, 2, vw
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    bool refine = false;
    unsigned threads = 0;
};

struct TeleportOptions {
    std::string state_file;
    std::string corrections = "pauli";  // pauli, optimal
    std::string quadrature = "octa";    // octa, mc
    std::uint64_t mc_n = 100000;
    std::uint64_t seed = 1;
    std::string basis = "auto";
    int restarts = 32;
};

// Each command writes its report to `out` and returns the exit code. Library
// errors propagate as xtele::Error; run() maps them to exit codes.
int cmd_analyze(const AnalyzeOptions &opts, std::ostream &out);
int cmd_sweep(const SweepOptions &opts, std::ostream &out);
int cmd_ensemble(const EnsembleOptions &opts, std::ostream &out);
int cmd_verify(const VerifyOptions &opts, std::ostream &out);
int cmd_teleport(const TeleportOptions &opts, std::ostream &out);

/// The CSV text a sweep would write.
std::string sweep_csv(const SweepOptions &opts);

/// Full entry point: argument parsing, dispatch and error mapping.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace xtele::cli
