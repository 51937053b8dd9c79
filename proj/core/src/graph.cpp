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

#include "bosonwalk/graph.hpp"

#include <algorithm>
#include <set>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

Graph::Graph(std::vector<std::vector<VertexId>> adjacency) : adjacency_(std::move(adjacency)) {
    const int v_count = vertex_count();
    for (VertexId v = 0; v < v_count; ++v) {
        const auto &nbrs = adjacency_[v];
        for (size_t k = 0; k < nbrs.size(); ++k) {
            VertexId u = nbrs[k];
            if (u < 0 || u >= v_count) {
                throw ValidationError(
                    "neighbor " + std::to_string(u) + " of vertex " + std::to_string(v) + " is out of range");
            }
            if (k > 0 && nbrs[k - 1] >= u) {
                throw ValidationError("neighbor list of vertex " + std::to_string(v) + " is not sorted ascending and duplicate-free");
            }
        }
    }
    for (VertexId v = 0; v < v_count; ++v) {
        for (VertexId u : adjacency_[v]) {
            const auto &back = adjacency_[u];
            if (!std::binary_search(back.begin(), back.end(), v)) {
                throw ValidationError(
                    "graph is not undirected: edge " + std::to_string(v) + "->" + std::to_string(u) + " has no reverse");
            }
        }
    }
    bundle_offset_.resize(v_count + 1, 0);
    for (VertexId v = 0; v < v_count; ++v) {
        bundle_offset_[v + 1] = bundle_offset_[v] + static_cast<ModeIndex>(adjacency_[v].size());
    }
    mode_count_ = bundle_offset_[v_count];
}

Graph Graph::from_adjacency(std::vector<std::vector<VertexId>> adjacency) {
    return Graph(std::move(adjacency));
}

Graph Graph::from_edges(int vertex_count, std::span<const std::pair<VertexId, VertexId>> edges) {
    if (vertex_count < 1) {
        throw ValidationError("graph needs at least one vertex");
    }
    std::vector<std::set<VertexId>> nbrs(vertex_count);
    for (const auto &[a, b] : edges) {
        if (a < 0 || a >= vertex_count || b < 0 || b >= vertex_count) {
            throw ValidationError(
                "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") references a vertex out of range");
        }
        nbrs[a].insert(b);
        nbrs[b].insert(a);
    }
    std::vector<std::vector<VertexId>> adjacency(vertex_count);
    for (VertexId v = 0; v < vertex_count; ++v) {
        adjacency[v].assign(nbrs[v].begin(), nbrs[v].end());
    }
    return Graph(std::move(adjacency));
}

Graph Graph::line(int vertex_count) {
    if (vertex_count < 2) {
        throw ValidationError("line graph needs at least 2 vertices, got " + std::to_string(vertex_count));
    }
    std::vector<std::vector<VertexId>> adjacency(vertex_count);
    for (VertexId v = 0; v < vertex_count; ++v) {
        if (v > 0) {
            adjacency[v].push_back(v - 1);
        }
        if (v + 1 < vertex_count) {
            adjacency[v].push_back(v + 1);
        }
    }
    return Graph(std::move(adjacency));
}

Graph Graph::cycle(int vertex_count) {
    if (vertex_count < 3) {
        throw ValidationError("cycle graph needs at least 3 vertices, got " + std::to_string(vertex_count));
    }
    std::vector<std::vector<VertexId>> adjacency(vertex_count);
    for (VertexId v = 0; v < vertex_count; ++v) {
        VertexId prev = (v + vertex_count - 1) % vertex_count;
        VertexId next = (v + 1) % vertex_count;
        adjacency[v] = {prev, next};
        std::sort(adjacency[v].begin(), adjacency[v].end());
        adjacency[v].erase(std::unique(adjacency[v].begin(), adjacency[v].end()), adjacency[v].end());
    }
    return Graph(std::move(adjacency));
}

Graph Graph::complete_with_loops(int vertex_count) {
    if (vertex_count < 1) {
        throw ValidationError("complete-with-loops graph needs at least 1 vertex");
    }
    std::vector<std::vector<VertexId>> adjacency(vertex_count);
    for (VertexId v = 0; v < vertex_count; ++v) {
        adjacency[v].resize(vertex_count);
        for (VertexId u = 0; u < vertex_count; ++u) {
            adjacency[v][u] = u;
        }
    }
    return Graph(std::move(adjacency));
}

const std::vector<VertexId> &Graph::neighbors(VertexId v) const {
    if (!has_vertex(v)) {
        throw LookupError("vertex " + std::to_string(v) + " is out of range");
    }
    return adjacency_[v];
}

bool Graph::has_edge(VertexId a, VertexId b) const {
    if (!has_vertex(a) || !has_vertex(b)) {
        return false;
    }
    const auto &nbrs = adjacency_[a];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

ModeIndex Graph::mode_index(Mode m) const {
    const auto &nbrs = neighbors(m.position);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), m.coin);
    if (it == nbrs.end() || *it != m.coin) {
        throw LookupError(
            "no mode (" + std::to_string(m.position) + ", " + std::to_string(m.coin) + "): " + std::to_string(m.coin) +
            " is not a neighbor of " + std::to_string(m.position));
    }
    return bundle_offset_[m.position] + static_cast<ModeIndex>(it - nbrs.begin());
}

Mode Graph::mode_at(ModeIndex index) const {
    if (index < 0 || index >= mode_count_) {
        throw LookupError("mode index " + std::to_string(index) + " is out of range");
    }
    auto it = std::upper_bound(bundle_offset_.begin(), bundle_offset_.end(), index);
    VertexId position = static_cast<VertexId>(it - bundle_offset_.begin()) - 1;
    return Mode{position, adjacency_[position][index - bundle_offset_[position]]};
}

ModeIndex Graph::bundle_begin(VertexId v) const {
    if (!has_vertex(v)) {
        throw LookupError("vertex " + std::to_string(v) + " is out of range");
    }
    return bundle_offset_[v];
}

std::vector<ModeIndex> Graph::bundle_modes(VertexId v) const {
    std::vector<ModeIndex> modes(degree(v));
    ModeIndex begin = bundle_begin(v);
    for (size_t k = 0; k < modes.size(); ++k) {
        modes[k] = begin + static_cast<ModeIndex>(k);
    }
    return modes;
}

std::vector<ModeIndex> Graph::step_permutation() const {
    std::vector<ModeIndex> perm(mode_count_);
    for (ModeIndex m = 0; m < mode_count_; ++m) {
        Mode mode = mode_at(m);
        perm[m] = mode_index(Mode{mode.coin, mode.position});
    }
    return perm;
}

}  // namespace bosonwalk
