// Copyright 2026 The bosonwalk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "bosonwalk/serial.hpp"
#include "bosonwalk/virtual_walk.hpp"
#include "bosonwalk/walk.hpp"

namespace bosonwalk {

/// One basis term of an explicit initial state: one mode per walker.
struct InitialTermSpec {
    std::vector<Mode> modes;
    Complex amplitude{1.0, 0.0};
};

/// Initial state: either per-walker positions with a named coin, or explicit
/// basis terms. A non-empty `terms` wins.
struct InitialSpec {
    std::vector<VertexId> positions;
    std::string coin = "symmetric";  // symmetric | left | right
    std::vector<InitialTermSpec> terms;
};

struct CPhaseSpec {
    Mode m1, m2;
    double phase = 0.0;
};
struct PositionPhaseSpec {
    std::vector<VertexId> positions;
    double phase = 0.0;
};
struct KerrSpec {
    VertexId position = 0;
    double coefficient = 0.0;
};
using DefectSpec = std::variant<CPhaseSpec, PositionPhaseSpec, KerrSpec>;

/// Coin selection: a named preset, explicit per-vertex matrices, or one spec
/// per step.
struct CoinSpec {
    std::string preset;  // "hadamard", "identity", "dft"; empty for explicit
    std::vector<Eigen::MatrixXcd> matrices;
    std::vector<CoinSpec> per_step;
};

enum class OutputKind {
    position,
    coincidence,
    spread,
    virtual_compare,
};

struct RunConfig {
    int schema = kSchemaVersion;
    GraphSpec graph;
    int walkers = 1;
    int steps = 0;
    InitialSpec initial;
    CoinSpec coin;
    std::vector<DefectSpec> defects;
    std::vector<OutputKind> outputs;
    DefectTiming timing = DefectTiming::post_step;
    uint64_t seed = 0;  // reserved for randomized utilities; echoed in reports
};

RunConfig run_config_from_json(const nlohmann::json &j);
nlohmann::json run_config_to_json(const RunConfig &config);

struct RunReport {
    std::vector<std::string> files;  // file names written into the output directory
    nlohmann::json summary;          // contents of run_report.json
};

/// Validates the config, runs the requested simulation, and writes the
/// requested distribution files plus run_report.json into `out_dir`.
/// Identical configs produce byte-identical files. Caps are checked before
/// any state is built; `max_walkers` can restrict below the engine cap but
/// never above it.
RunReport run(const RunConfig &config, const std::filesystem::path &out_dir, int max_walkers = kMaxWalkers);

struct CompileReport {
    double verification_distance = 0.0;
    bool verified = false;  // distance within 1e-9
    std::string output_file;
    std::string report_file;
};

/// Reads a walk document, compiles it to a network, writes the network and a
/// verification report (mode-map distance of the linear part).
CompileReport compile_walk_to_net_file(const std::filesystem::path &in, const std::filesystem::path &out);

/// Reads a network, compiles it to a walk on the complete-with-loops host
/// graph, writes the walk document and a verification report.
CompileReport compile_net_to_walk_file(const std::filesystem::path &in, const std::filesystem::path &out);

}  // namespace bosonwalk
