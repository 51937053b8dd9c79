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

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bosonwalk/fock.hpp"
#include "bosonwalk/graph.hpp"
#include "bosonwalk/walk.hpp"

namespace bosonwalk {

/// Two-mode element mixing modes (a, b) with a 2x2 unitary block; column 0 of
/// the block is the image of mode a. Stored with a < b.
struct Beamsplitter {
    ModeIndex a = 0;
    ModeIndex b = 0;
    Eigen::Matrix2cd block;
};

/// Single-mode phase shifter exp(i theta n_mode).
struct PhaseShift {
    ModeIndex mode = 0;
    double theta = 0.0;
};

/// Controlled phase: exp(i theta) iff both modes are occupied. Not a linear
/// element; it has no single-particle mode map.
struct ControlledPhase {
    ModeIndex a = 0;
    ModeIndex b = 0;
    double theta = 0.0;
};

using Element = std::variant<Beamsplitter, PhaseShift, ControlledPhase>;

/// Mode indices an element touches, ascending.
std::vector<ModeIndex> element_support(const Element &element);

bool is_linear(const Element &element);

/// An ordered list of optical elements over M labeled modes; elements apply
/// in list order. Validates indices and block unitarity on construction and
/// append.
class OpticalNetwork {
  public:
    explicit OpticalNetwork(int mode_count);
    OpticalNetwork(int mode_count, std::vector<Element> elements);

    int mode_count() const {
        return mode_count_;
    }

    const std::vector<Element> &elements() const {
        return elements_;
    }

    size_t size() const {
        return elements_.size();
    }

    void append(Element element);

    /// Number of ControlledPhase elements.
    int cphase_count() const;

    friend bool operator==(const OpticalNetwork &, const OpticalNetwork &);

  private:
    int mode_count_ = 0;
    std::vector<Element> elements_;
};

/// Composed single-particle mode map. Throws ValidationError if the network
/// contains controlled phases.
Eigen::MatrixXcd network_mode_map(const OpticalNetwork &net);

/// Applies the network to a Fock state, element by element (controlled
/// phases included).
FockState apply_network(const OpticalNetwork &net, const FockState &state);

/// Triangular decomposition of a k x k unitary into at most k(k-1)/2
/// beamsplitters plus at most k phase shifters, recomposing to `u` within
/// 1e-9. Input must be unitary within 1e-10.
OpticalNetwork reck_decompose(const Eigen::MatrixXcd &u);

/// Compiles a walk schedule into a network over the graph's modes: each coin
/// becomes per-bundle triangular decompositions, each step becomes the fixed
/// involution (x, j) <-> (j, x) realized as swap beamsplitters, and
/// controlled-phase defects become cp elements. The composed mode map of the
/// linear part equals the walk's mode unitary.
OpticalNetwork compile_walk_to_network(const Graph &g, const WalkSchedule &schedule);

/// Result of embedding a network into a walk. Network mode i is walk mode i
/// (position i / N, coin i % N) on the complete-with-loops graph; walk modes
/// >= embedded_modes are padding and are left untouched by the schedule.
struct CompiledWalk {
    Graph graph;
    WalkSchedule schedule;
    int embedded_modes = 0;
};

struct CompileOptions {
    /// Merge consecutive routed beamsplitters with pairwise-disjoint vertex
    /// pairs into one coin/step round instead of one round each.
    bool batch_parallel = false;
};

/// Compiles a network of beamsplitter/phase/cphase elements into a quantum
/// walk on the complete graph with self-loops on ceil(sqrt(M)) vertices.
/// Every element becomes a short sandwich of permutation coins, steps, and a
/// coin carrying the element, routed through position 0 / coin slot 0; the
/// composed walk mode unitary restricted to the first M modes equals the
/// network's mode map.
CompiledWalk compile_network_to_walk(const OpticalNetwork &net, const CompileOptions &options = {});

/// Which rewrite justified a commutation.
enum class RewriteRule {
    disjoint_support,  // the groups touch different modes
    diagonal,          // both groups are diagonal in the Fock basis
    phase_pair,        // pi-phases on both beamsplitter modes pass unchanged
    swap_retarget,     // an anti-diagonal (swap-like) block relabels targets
};

const char *rewrite_rule_name(RewriteRule rule);

/// Outcome of trying to move element group `later` in front of element group
/// `earlier`. On success `lead`/`trail` give the rewritten groups with
/// op(trail after lead) == op(later after earlier), verified as operator
/// equality on the 1- and 2-boson Fock spaces within 1e-10; `deviation` is
/// the verified residual. When blocked, `deviation` is the exhibited gap
/// between the two orderings.
struct CommutationResult {
    bool commutes = false;
    RewriteRule rule = RewriteRule::disjoint_support;
    std::vector<Element> lead;
    std::vector<Element> trail;
    double deviation = 0.0;
};

/// Max-norm gap between applying `earlier` then `later` and applying `later`
/// then `earlier`, measured on the 1- and 2-boson sectors over the union
/// support.
double ordering_gap(std::span<const Element> earlier, std::span<const Element> later);

CommutationResult check_commutation(std::span<const Element> later, std::span<const Element> earlier);
CommutationResult check_commutation(const Element &later, const Element &earlier);

/// Result of hoisting all controlled phases to the front of a network.
struct HoistResult {
    bool ok = false;
    OpticalNetwork resource_prefix;  // hoisted controlled phases
    OpticalNetwork linear_suffix;    // remaining elements, original order
    int cphase_count = 0;
    // Set when blocked: the element pair that cannot be commuted and the
    // numerically exhibited gap between the two orderings.
    std::optional<std::pair<Element, Element>> blocked_pair;
    double blocked_deviation = 0.0;
};

/// Moves every controlled phase to the beginning of the circuit using the
/// commutation rules, relabeling targets as swaps are crossed. The count of
/// controlled phases is unchanged by hoisting. If some controlled phase
/// cannot cross a beamsplitter, returns the first blocked pair with a
/// numerical witness instead.
HoistResult hoist_cphases(const OpticalNetwork &net);

}  // namespace bosonwalk
