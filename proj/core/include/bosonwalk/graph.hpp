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

#include <span>
#include <utility>
#include <vector>

namespace bosonwalk {

using VertexId = int;
using ModeIndex = int;

/// A directed edge of the walk graph: a walker sitting at `position` whose
/// coin points towards the neighbour `coin`. The modes of a graph are exactly
/// its directed edges; they carry both the walker's location and the direction
/// it is about to move in.
struct Mode {
    VertexId position = 0;
    VertexId coin = 0;

    friend bool operator==(const Mode &, const Mode &) = default;
    friend auto operator<=>(const Mode &, const Mode &) = default;
};

/// Finite undirected graph with ordered neighbourhoods.
///
/// Vertices are dense integers `0..V-1`. Each neighbour list is sorted
/// ascending and duplicate-free, and adjacency is symmetric (`j` appears in
/// the neighbourhood of `i` iff `i` appears in the neighbourhood of `j`), so
/// that the step map (position, coin) -> (coin, position) always lands on a
/// valid mode. Self-loops are permitted and contribute a single mode.
///
/// Modes are indexed densely in lexicographic (position, coin) order; the
/// modes of one position form a contiguous "bundle".
///
/// Graphs are immutable after construction and safe to share across threads.
class Graph {
  public:
    /// Validates and takes ownership of an adjacency structure.
    static Graph from_adjacency(std::vector<std::vector<VertexId>> adjacency);

    /// Builds a graph from an undirected edge list. Duplicate edges collapse.
    static Graph from_edges(int vertex_count, std::span<const std::pair<VertexId, VertexId>> edges);

    /// Path graph 0-1-...-(V-1). Requires V >= 2.
    static Graph line(int vertex_count);

    /// Cycle graph on V >= 3 vertices.
    static Graph cycle(int vertex_count);

    /// Complete graph where every vertex additionally carries a self-loop, so
    /// every neighbourhood is {0, ..., V-1}. This is the target topology for
    /// embedding optical networks.
    static Graph complete_with_loops(int vertex_count);

    int vertex_count() const {
        return static_cast<int>(adjacency_.size());
    }

    const std::vector<VertexId> &neighbors(VertexId v) const;

    int degree(VertexId v) const {
        return static_cast<int>(neighbors(v).size());
    }

    bool has_vertex(VertexId v) const {
        return v >= 0 && v < vertex_count();
    }

    bool has_edge(VertexId a, VertexId b) const;

    /// Total number of modes (= directed edges), summed over all bundles.
    int mode_count() const {
        return mode_count_;
    }

    /// Dense index of a mode. Throws LookupError if `coin` is not a
    /// neighbour of `position`.
    ModeIndex mode_index(Mode m) const;
    ModeIndex mode_index(VertexId position, VertexId coin) const {
        return mode_index(Mode{position, coin});
    }

    /// Inverse of mode_index.
    Mode mode_at(ModeIndex index) const;

    /// First mode index of the bundle at `v`; the bundle occupies
    /// [bundle_begin(v), bundle_begin(v) + degree(v)).
    ModeIndex bundle_begin(VertexId v) const;

    std::vector<ModeIndex> bundle_modes(VertexId v) const;

    /// The step permutation on mode indices: (x, j) -> (j, x). It is an
    /// involution; self-loop modes are fixed points.
    std::vector<ModeIndex> step_permutation() const;

    friend bool operator==(const Graph &a, const Graph &b) {
        return a.adjacency_ == b.adjacency_;
    }

  private:
    explicit Graph(std::vector<std::vector<VertexId>> adjacency);

    std::vector<std::vector<VertexId>> adjacency_;
    std::vector<ModeIndex> bundle_offset_;  // size V+1, prefix sums of degrees
    int mode_count_ = 0;
};

}  // namespace bosonwalk
