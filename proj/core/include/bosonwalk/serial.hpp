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
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosonwalk/graph.hpp"
#include "bosonwalk/optics.hpp"
#include "bosonwalk/walk.hpp"

namespace bosonwalk {

/// Version stamped into every document this library reads or writes.
inline constexpr int kSchemaVersion = 1;

/// A graph description as it appears in config and walk files: either a
/// named preset with a size, or an explicit edge list.
struct GraphSpec {
    std::string preset;  // "line", "cycle", "complete-with-loops"; empty for edge lists
    int size = 0;
    int vertices = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;

    friend bool operator==(const GraphSpec &, const GraphSpec &) = default;
};

Graph build_graph(const GraphSpec &spec);

GraphSpec graph_spec_from_json(const nlohmann::json &j, const std::string &path);
nlohmann::json graph_spec_to_json(const GraphSpec &spec);

/// Complex numbers serialize as [re, im] pairs throughout.
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json &j, const std::string &path);

nlohmann::json matrix_to_json(const Eigen::MatrixXcd &m);
Eigen::MatrixXcd matrix_from_json(const nlohmann::json &j, const std::string &path);

/// Network document:
///   {"schema": 1, "modes": M, "elements": [
///      {"bs": [i, j, [[re,im],[re,im],[re,im],[re,im]]]},   // 2x2 row-major
///      {"ph": [i, theta]},
///      {"cp": [i, j, theta]} ]}
nlohmann::json network_to_json(const OpticalNetwork &net);
OpticalNetwork network_from_json(const nlohmann::json &j);

/// A graph plus a schedule (plus, for compiled networks, how many leading
/// walk modes carry the embedded network).
struct WalkDocument {
    Graph graph;
    WalkSchedule schedule;
    int embedded_modes = -1;  // -1: not an embedding
};

nlohmann::json walk_document_to_json(const WalkDocument &doc);
WalkDocument walk_document_from_json(const nlohmann::json &j);

nlohmann::json defect_to_json(const Graph &g, const DefectOp &defect);
DefectOp defect_from_json(const Graph &g, const nlohmann::json &j, const std::string &path);

/// Parses JSON text; parse failures become ConfigError with line/column.
nlohmann::json parse_json_text(const std::string &text);

nlohmann::json load_json_file(const std::filesystem::path &path);
void save_json_file(const std::filesystem::path &path, const nlohmann::json &j);

/// Deterministic %.17g rendering used by all CSV emitters.
std::string format_double(double value);

}  // namespace bosonwalk
