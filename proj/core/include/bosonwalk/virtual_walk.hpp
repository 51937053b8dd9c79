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
#include <utility>
#include <vector>

#include "bosonwalk/fock.hpp"
#include "bosonwalk/virtual_graph.hpp"
#include "bosonwalk/walk.hpp"

namespace bosonwalk {

/// One walker with an arbitrary coin superposition over its bundle;
/// `coin_amplitudes` is indexed by the sorted neighbour list.
struct WalkerWavelet {
    VertexId position = 0;
    Eigen::VectorXcd coin_amplitudes;
};

/// The symmetric default coin (e_lowest + i e_highest)/sqrt(2) for degree
/// >= 2 (the balanced left/right superposition on a line), e_0 for degree 1.
Eigen::VectorXcd symmetric_coin(int degree);

/// Product of per-walker coin wavelets, expanded into the bosonic Fock basis
/// and normalized. Walkers may share positions (the result bunches).
FockState product_state(const Graph &g, std::span<const WalkerWavelet> walkers);

/// Initial condition of a virtual walk: a starting vertex plus an optional
/// coin superposition. Each coin term lists one base mode per walker; its
/// joint positions must equal `vertex`. An empty term list selects the
/// symmetric default coin per walker.
struct VirtualWalkInput {
    PosMultiset vertex;
    std::vector<std::pair<std::vector<Mode>, Complex>> coin_terms;
};

/// The multi-walker Fock state equivalent to a virtual-walk input, under the
/// canonical bijection between virtual modes and occupation keys. Both
/// engines can be started from literally the same state with this.
FockState virtual_input_to_fock(const Graph &g, const VirtualWalkInput &input);

/// Runs a single walker on the virtual graph.
///
/// The walker's state is one amplitude per virtual mode (a coin multiset at
/// each vertex). Each step applies the per-vertex coin -- the symmetrized
/// product of the base coins, built here from permanents of the base coin
/// blocks -- followed by the induced step permutation of virtual modes, with
/// defect phases applied at the listed vertices per `timing`. Returns the
/// position distribution over virtual vertices.
///
/// This is an independent evolution path from the multi-walker Fock engine;
/// the two agree key-by-key on defect-free and position-defect walks.
std::map<PosMultiset, double> simulate_virtual(
    const VirtualGraph &vg,
    const DefectPattern &defects,
    const VirtualWalkInput &input,
    const CoinAssignment &base_coins,
    int steps,
    DefectTiming timing = DefectTiming::post_step);

/// Convenience overload starting from the symmetric default coin.
std::map<PosMultiset, double> simulate_virtual(
    const VirtualGraph &vg,
    const DefectPattern &defects,
    const PosMultiset &initial_vertex,
    const CoinAssignment &base_coins,
    int steps);

}  // namespace bosonwalk
