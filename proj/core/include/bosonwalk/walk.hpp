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
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bosonwalk/fock.hpp"
#include "bosonwalk/graph.hpp"
#include "bosonwalk/virtual_graph.hpp"

namespace bosonwalk {

/// Hard cap on the walker number accepted by the evolution engine; the state
/// space beyond this exceeds desk scale.
inline constexpr int kMaxWalkers = 4;

/// One unitary per vertex, indexed by the sorted neighbour list of that
/// vertex. Matrix columns are inputs: a walker with coin value c (the k-th
/// neighbour) is mapped to sum_j matrix(j, k) * (j-th neighbour coin).
///
/// For degree-2 vertices the convention puts the lower neighbour first, so
/// the Hadamard coin [[1,1],[1,-1]]/sqrt(2) sends a "towards the higher
/// neighbour" coin to (lower - higher)/sqrt(2).
struct CoinAssignment {
    std::vector<Eigen::MatrixXcd> matrices;
};

/// Hadamard coin on every degree-2 vertex, the trivial 1x1 coin on degree-1
/// vertices. Throws for other degrees (use dft_coins there).
CoinAssignment hadamard_coins(const Graph &g);

CoinAssignment identity_coins(const Graph &g);

/// Fourier coin F(j, k) = exp(2 pi i j k / d) / sqrt(d) per vertex; equals
/// the Hadamard coin at degree 2.
CoinAssignment dft_coins(const Graph &g);

/// Validates per-vertex dimensions and unitarity (within 1e-12); names the
/// offending vertex in the error message.
void validate_coins(const Graph &g, const CoinAssignment &coins);

/// Controlled phase between two modes: multiplies a term by exp(i*phase)
/// iff both modes are occupied. With a == b the phase fires iff the mode
/// holds at least two bosons.
struct CPhaseDefect {
    ModeIndex a = 0;
    ModeIndex b = 0;
    double phase = 0.0;
};

/// Phase on terms whose joint position multiset is exactly `positions`.
struct PositionPhaseDefect {
    PosMultiset positions;
    double phase = 0.0;
};

/// Nonlinear phase coefficient * k(k-1)/2 where k is the boson count at
/// `position`.
struct KerrDefect {
    VertexId position = 0;
    double coefficient = 0.0;
};

using DefectOp = std::variant<CPhaseDefect, PositionPhaseDefect, KerrDefect>;

/// Where defect operators act relative to the coin/step pair of their step.
enum class DefectTiming {
    post_step,  // coin, step, defect (default)
    pre_coin,   // defect, coin, step
};

struct WalkStep {
    CoinAssignment coins;
    std::vector<DefectOp> defects;
};

/// A time-ordered schedule; step k applies its coin assignment, then the
/// fixed step permutation, with defects placed per `timing`.
struct WalkSchedule {
    std::vector<WalkStep> steps;
    DefectTiming timing = DefectTiming::post_step;
};

/// Schedule repeating one coin assignment (and optional static defect list)
/// for `steps` iterations.
WalkSchedule repeat_schedule(CoinAssignment coins, int steps, std::vector<DefectOp> defects = {});

/// The phase a defect applies to one occupation key.
double defect_phase(const Graph &g, const DefectOp &defect, const Occupation &occ);

/// Joint position multiset of a key (one entry per boson).
PosMultiset positions_of(const Graph &g, const Occupation &occ);

/// Expands a position-level defect into mode-level controlled phases: one
/// CPhaseDefect per mode pair across the two bundles (plus same-mode terms on
/// the diagonal). Only defined for two-walker multisets.
std::vector<DefectOp> cphase_realization(const Graph &g, const PosMultiset &positions, double phase);

/// Runs the walk: per step coin -> step -> defects (or per schedule.timing).
/// The initial state must live on g's modes with at most kMaxWalkers bosons.
/// Output norm is checked to within 1e-12.
FockState evolve(const Graph &g, const FockState &initial, const WalkSchedule &schedule);

/// Normalized single-particle marginal: expected boson count per position
/// divided by the walker number. For one walker this is the standard position
/// distribution. Sums to 1.
std::map<VertexId, double> position_distribution(const Graph &g, const FockState &state);

/// Probability of the walkers jointly occupying each position multiset,
/// summed over coins. Requires at least two walkers.
std::map<PosMultiset, double> coincidence_distribution(const Graph &g, const FockState &state);

struct SpreadStats {
    double mean = 0.0;
    double stddev = 0.0;
};

/// First and second moments of a line-graph position distribution about
/// `origin`. Throws ValidationError on an empty distribution.
SpreadStats spread_statistics(const std::map<VertexId, double> &distribution, double origin);

/// Composed single-particle mode map of a defect-free schedule (the walk's
/// action on one boson). Throws ValidationError if any step carries defects.
Eigen::MatrixXcd walk_mode_unitary(const Graph &g, const WalkSchedule &schedule);

}  // namespace bosonwalk
