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

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bosonwalk/graph.hpp"

namespace bosonwalk {

/// A size-n multiset of vertex ids, stored as a sorted ascending tuple.
/// Multisets are the canonical labels for joint walker positions: (i, j) and
/// (j, i) are the same multiset because the walkers are indistinguishable.
using PosMultiset = std::vector<VertexId>;

/// Returns the sorted canonical form of an arbitrary vertex tuple.
PosMultiset canonical_multiset(std::span<const VertexId> tuple);

/// The graph whose vertices are size-n position multisets of a base graph.
///
/// One walker on the virtual graph has the same allowed transitions as n
/// walkers on the base graph: multiset {x_1..x_n} is adjacent to {y_1..y_n}
/// iff the components can be paired so that every pair is a base edge.
/// Equivalently, the neighbours of {x_1..x_n} are the distinct multisets
/// {j_1..j_n} obtainable by choosing one j_i from each neighbourhood n_{x_i}.
///
/// When all components are distinct and no two share two or more common
/// neighbours, the degree is the product of the base degrees prod |n_{x_i}|.
/// Where different neighbour choices collide on the same multiset (always at
/// repeated components, but also e.g. at {1,3} on a 4-cycle) the duplicates
/// merge and the degree is the number of distinct neighbour multisets.
class VirtualGraph {
  public:
    VirtualGraph(Graph base, int walkers);

    const Graph &base() const {
        return base_;
    }

    int walkers() const {
        return walkers_;
    }

    int vertex_count() const {
        return static_cast<int>(vertices_.size());
    }

    /// All vertices in lexicographic order of their sorted tuples.
    const std::vector<PosMultiset> &vertices() const {
        return vertices_;
    }

    /// Dense index of a vertex (input is canonicalized). Throws LookupError
    /// for unknown multisets.
    int vertex_index(std::span<const VertexId> vertex) const;

    bool contains(std::span<const VertexId> vertex) const;

    const PosMultiset &vertex_at(int index) const {
        return vertices_[index];
    }

    /// Distinct neighbour multisets of a vertex, sorted.
    const std::vector<int> &neighbor_indices(int vertex_index) const {
        return adjacency_[vertex_index];
    }

    std::vector<PosMultiset> neighbors(std::span<const VertexId> vertex) const;

    /// Size of the adjacency list at a vertex (see class comment for how this
    /// relates to the base degree product).
    int degree(std::span<const VertexId> vertex) const;

  private:
    Graph base_;
    int walkers_;
    std::vector<PosMultiset> vertices_;
    std::vector<std::vector<int>> adjacency_;
};

/// Convenience wrapper mirroring the construction entry point.
VirtualGraph build_virtual_graph(const Graph &base, int walkers);

int virtual_degree(const VirtualGraph &vg, std::span<const VertexId> vertex);

/// A symmetric pattern of phase defects on virtual-graph vertices. Keys are
/// canonical multisets, so the pattern is symmetric about the diagonal by
/// construction.
class DefectPattern {
  public:
    DefectPattern() = default;

    explicit DefectPattern(std::map<PosMultiset, double> entries) : entries_(std::move(entries)) {}

    const std::map<PosMultiset, double> &entries() const {
        return entries_;
    }

    bool empty() const {
        return entries_.empty();
    }

    /// Phase at a vertex, 0 if the vertex carries no defect.
    double phase_at(std::span<const VertexId> vertex) const;

  private:
    std::map<PosMultiset, double> entries_;
};

/// Canonicalizes and validates a list of requested (vertex tuple, phase)
/// defects against a virtual graph. Tuples that map to the same canonical
/// multiset must agree on the phase; otherwise a SymmetryConflictError is
/// thrown. Unknown vertices throw LookupError.
DefectPattern etch_defects(
    const VirtualGraph &vg, std::span<const std::pair<std::vector<VertexId>, double>> requested);

}  // namespace bosonwalk
