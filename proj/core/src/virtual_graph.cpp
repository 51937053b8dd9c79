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

#include "bosonwalk/virtual_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

namespace {

std::string multiset_to_string(std::span<const VertexId> vertex) {
    std::ostringstream out;
    out << "{";
    for (size_t k = 0; k < vertex.size(); ++k) {
        out << (k ? ", " : "") << vertex[k];
    }
    out << "}";
    return out.str();
}

// Enumerates all sorted size-n multisets over 0..V-1 in lexicographic order.
std::vector<PosMultiset> enumerate_multisets(int vertex_count, int n) {
    std::vector<PosMultiset> result;
    PosMultiset current(n, 0);
    while (true) {
        result.push_back(current);
        int k = n - 1;
        while (k >= 0 && current[k] == vertex_count - 1) {
            --k;
        }
        if (k < 0) {
            break;
        }
        VertexId next = current[k] + 1;
        for (int j = k; j < n; ++j) {
            current[j] = next;
        }
    }
    return result;
}

}  // namespace

PosMultiset canonical_multiset(std::span<const VertexId> tuple) {
    PosMultiset result(tuple.begin(), tuple.end());
    std::sort(result.begin(), result.end());
    return result;
}

VirtualGraph::VirtualGraph(Graph base, int walkers) : base_(std::move(base)), walkers_(walkers) {
    if (walkers_ < 1) {
        throw ValidationError("virtual graph needs at least one walker, got " + std::to_string(walkers_));
    }
    vertices_ = enumerate_multisets(base_.vertex_count(), walkers_);
    adjacency_.resize(vertices_.size());

    // Neighbours of {x_1..x_n}: one neighbour choice per component, merged as
    // a multiset, duplicates collapsed.
    std::vector<size_t> choice(walkers_, 0);
    for (size_t vi = 0; vi < vertices_.size(); ++vi) {
        const PosMultiset &vertex = vertices_[vi];
        std::set<PosMultiset> seen;
        bool has_isolated = false;
        for (VertexId x : vertex) {
            if (base_.degree(x) == 0) {
                has_isolated = true;
            }
        }
        if (!has_isolated) {
            std::fill(choice.begin(), choice.end(), 0);
            PosMultiset image(walkers_);
            while (true) {
                for (int k = 0; k < walkers_; ++k) {
                    image[k] = base_.neighbors(vertex[k])[choice[k]];
                }
                std::sort(image.begin(), image.end());
                seen.insert(image);
                int k = walkers_ - 1;
                while (k >= 0 && choice[k] + 1 == base_.neighbors(vertex[k]).size()) {
                    choice[k] = 0;
                    --k;
                }
                if (k < 0) {
                    break;
                }
                ++choice[k];
            }
        }
        adjacency_[vi].reserve(seen.size());
        for (const PosMultiset &nbr : seen) {
            adjacency_[vi].push_back(vertex_index(nbr));
        }
    }
}

int VirtualGraph::vertex_index(std::span<const VertexId> vertex) const {
    if (static_cast<int>(vertex.size()) != walkers_) {
        throw LookupError(
            "virtual vertex " + multiset_to_string(vertex) + " has arity " + std::to_string(vertex.size()) +
            ", expected " + std::to_string(walkers_));
    }
    PosMultiset key = canonical_multiset(vertex);
    for (VertexId x : key) {
        if (!base_.has_vertex(x)) {
            throw LookupError("virtual vertex " + multiset_to_string(vertex) + " references unknown base vertex " + std::to_string(x));
        }
    }
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), key);
    if (it == vertices_.end() || *it != key) {
        throw LookupError("virtual vertex " + multiset_to_string(vertex) + " not found");
    }
    return static_cast<int>(it - vertices_.begin());
}

bool VirtualGraph::contains(std::span<const VertexId> vertex) const {
    if (static_cast<int>(vertex.size()) != walkers_) {
        return false;
    }
    PosMultiset key = canonical_multiset(vertex);
    return std::binary_search(vertices_.begin(), vertices_.end(), key);
}

std::vector<PosMultiset> VirtualGraph::neighbors(std::span<const VertexId> vertex) const {
    const std::vector<int> &indices = adjacency_[vertex_index(vertex)];
    std::vector<PosMultiset> result;
    result.reserve(indices.size());
    for (int idx : indices) {
        result.push_back(vertices_[idx]);
    }
    return result;
}

int VirtualGraph::degree(std::span<const VertexId> vertex) const {
    return static_cast<int>(adjacency_[vertex_index(vertex)].size());
}

VirtualGraph build_virtual_graph(const Graph &base, int walkers) {
    return VirtualGraph(base, walkers);
}

int virtual_degree(const VirtualGraph &vg, std::span<const VertexId> vertex) {
    return vg.degree(vertex);
}

double DefectPattern::phase_at(std::span<const VertexId> vertex) const {
    auto it = entries_.find(canonical_multiset(vertex));
    return it == entries_.end() ? 0.0 : it->second;
}

DefectPattern etch_defects(
    const VirtualGraph &vg, std::span<const std::pair<std::vector<VertexId>, double>> requested) {
    std::map<PosMultiset, double> entries;
    for (const auto &[tuple, phase] : requested) {
        // Validates arity and base vertices; canonicalizes the key.
        int index = vg.vertex_index(tuple);
        const PosMultiset &key = vg.vertex_at(index);
        auto [it, inserted] = entries.emplace(key, phase);
        if (!inserted && std::abs(it->second - phase) > 1e-12) {
            throw SymmetryConflictError(
                "conflicting phases for virtual vertex " + multiset_to_string(key) + ": " +
                std::to_string(it->second) + " vs " + std::to_string(phase));
        }
    }
    return DefectPattern(std::move(entries));
}

}  // namespace bosonwalk
