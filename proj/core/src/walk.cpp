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

#include "bosonwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

namespace {

std::string multiset_to_string(const PosMultiset &p) {
    std::ostringstream out;
    out << "{";
    for (size_t k = 0; k < p.size(); ++k) {
        out << (k ? ", " : "") << p[k];
    }
    out << "}";
    return out.str();
}

void apply_defects_in_place(FockState &state, const Graph &g, const std::vector<DefectOp> &defects) {
    for (const DefectOp &defect : defects) {
        state = apply_diagonal_phase(state, [&](const Occupation &occ) { return defect_phase(g, defect, occ); });
    }
}

}  // namespace

CoinAssignment hadamard_coins(const Graph &g) {
    CoinAssignment coins;
    coins.matrices.reserve(static_cast<size_t>(g.vertex_count()));
    const double s = 1.0 / std::numbers::sqrt2;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        if (d == 0) {
            coins.matrices.emplace_back(Eigen::MatrixXcd::Identity(0, 0));
        } else if (d == 1) {
            coins.matrices.emplace_back(Eigen::MatrixXcd::Identity(1, 1));
        } else if (d == 2) {
            Eigen::MatrixXcd h(2, 2);
            h << s, s, s, -s;
            coins.matrices.push_back(std::move(h));
        } else {
            throw ValidationError(
                "hadamard coins are only defined for degree <= 2; vertex " + std::to_string(v) + " has degree " +
                std::to_string(d) + " (use dft coins)");
        }
    }
    return coins;
}

CoinAssignment identity_coins(const Graph &g) {
    CoinAssignment coins;
    coins.matrices.reserve(static_cast<size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        coins.matrices.emplace_back(Eigen::MatrixXcd::Identity(g.degree(v), g.degree(v)));
    }
    return coins;
}

CoinAssignment dft_coins(const Graph &g) {
    CoinAssignment coins;
    coins.matrices.reserve(static_cast<size_t>(g.vertex_count()));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        int d = g.degree(v);
        Eigen::MatrixXcd f(d, d);
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < d; ++k) {
                double angle = 2.0 * std::numbers::pi * j * k / d;
                f(j, k) = Complex(std::cos(angle), std::sin(angle)) / std::sqrt(static_cast<double>(d));
            }
        }
        coins.matrices.push_back(std::move(f));
    }
    return coins;
}

void validate_coins(const Graph &g, const CoinAssignment &coins) {
    if (static_cast<int>(coins.matrices.size()) != g.vertex_count()) {
        throw ValidationError(
            "coin assignment has " + std::to_string(coins.matrices.size()) + " matrices, expected one per vertex (" +
            std::to_string(g.vertex_count()) + ")");
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const Eigen::MatrixXcd &m = coins.matrices[static_cast<size_t>(v)];
        if (m.rows() != g.degree(v) || m.cols() != g.degree(v)) {
            throw ValidationError(
                "coin at vertex " + std::to_string(v) + " has dimension " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()) + ", expected degree " + std::to_string(g.degree(v)));
        }
        if (g.degree(v) > 0 && unitarity_defect(m) > 1e-12) {
            throw ValidationError("coin at vertex " + std::to_string(v) + " is not unitary");
        }
    }
}

WalkSchedule repeat_schedule(CoinAssignment coins, int steps, std::vector<DefectOp> defects) {
    if (steps < 0) {
        throw ValidationError("step count must be non-negative");
    }
    WalkSchedule schedule;
    schedule.steps.reserve(static_cast<size_t>(steps));
    for (int t = 0; t < steps; ++t) {
        schedule.steps.push_back(WalkStep{coins, defects});
    }
    return schedule;
}

double defect_phase(const Graph &g, const DefectOp &defect, const Occupation &occ) {
    if (const auto *cp = std::get_if<CPhaseDefect>(&defect)) {
        bool fires = cp->a == cp->b ? occ.count(cp->a) >= 2 : occ.count(cp->a) >= 1 && occ.count(cp->b) >= 1;
        return fires ? cp->phase : 0.0;
    }
    if (const auto *pp = std::get_if<PositionPhaseDefect>(&defect)) {
        return positions_of(g, occ) == pp->positions ? pp->phase : 0.0;
    }
    const auto &kerr = std::get<KerrDefect>(defect);
    ModeIndex begin = g.bundle_begin(kerr.position);
    int k = 0;
    for (int j = 0; j < g.degree(kerr.position); ++j) {
        k += occ.count(begin + j);
    }
    return kerr.coefficient * k * (k - 1) / 2.0;
}

PosMultiset positions_of(const Graph &g, const Occupation &occ) {
    PosMultiset positions;
    positions.reserve(static_cast<size_t>(occ.total()));
    for (ModeIndex m : occ.mode_list()) {
        positions.push_back(g.mode_at(m).position);
    }
    std::sort(positions.begin(), positions.end());
    return positions;
}

std::vector<DefectOp> cphase_realization(const Graph &g, const PosMultiset &positions, double phase) {
    if (positions.size() != 2) {
        throw ValidationError("cphase realization is only defined for two-walker position multisets");
    }
    VertexId x1 = positions[0];
    VertexId x2 = positions[1];
    if (!g.has_vertex(x1) || !g.has_vertex(x2)) {
        throw LookupError("defect position multiset " + multiset_to_string(positions) + " is out of range");
    }
    std::vector<DefectOp> ops;
    if (x1 == x2) {
        // Both walkers at one vertex: one controlled phase per unordered mode
        // pair within the bundle, plus a doubly-occupied term per mode.
        std::vector<ModeIndex> modes = g.bundle_modes(x1);
        for (size_t i = 0; i < modes.size(); ++i) {
            for (size_t j = i; j < modes.size(); ++j) {
                ops.push_back(CPhaseDefect{modes[i], modes[j], phase});
            }
        }
    } else {
        for (ModeIndex m1 : g.bundle_modes(x1)) {
            for (ModeIndex m2 : g.bundle_modes(x2)) {
                ops.push_back(CPhaseDefect{m1, m2, phase});
            }
        }
    }
    return ops;
}

FockState evolve(const Graph &g, const FockState &initial, const WalkSchedule &schedule) {
    if (initial.mode_count() != g.mode_count()) {
        throw ValidationError(
            "initial state has " + std::to_string(initial.mode_count()) + " modes, graph has " +
            std::to_string(g.mode_count()));
    }
    if (initial.total_occupation() > kMaxWalkers) {
        throw CapError(
            "walker number " + std::to_string(initial.total_occupation()) + " exceeds the cap of " +
            std::to_string(kMaxWalkers));
    }
    const std::vector<ModeIndex> step_perm = g.step_permutation();

    FockState state = initial;
    for (const WalkStep &step : schedule.steps) {
        validate_coins(g, step.coins);
        if (schedule.timing == DefectTiming::pre_coin) {
            apply_defects_in_place(state, g, step.defects);
        }
        state = apply_block_diagonal(state, g, step.coins.matrices);
        state = apply_mode_permutation(state, step_perm);
        if (schedule.timing == DefectTiming::post_step) {
            apply_defects_in_place(state, g, step.defects);
        }
    }

    double n = state.norm();
    if (std::abs(n - initial.norm()) > 1e-12) {
        throw Error("internal error: evolution drifted off norm by " + std::to_string(std::abs(n - initial.norm())));
    }
    return state;
}

std::map<VertexId, double> position_distribution(const Graph &g, const FockState &state) {
    std::map<VertexId, double> dist;
    const int n = state.total_occupation();
    if (n == 0) {
        return dist;
    }
    for (const auto &[occ, amp] : state.amplitudes()) {
        double p = std::norm(amp);
        for (ModeIndex m : occ.mode_list()) {
            dist[g.mode_at(m).position] += p / n;
        }
    }
    return dist;
}

std::map<PosMultiset, double> coincidence_distribution(const Graph &g, const FockState &state) {
    if (state.total_occupation() < 2) {
        throw ValidationError("coincidence distribution needs at least two walkers");
    }
    std::map<PosMultiset, double> dist;
    for (const auto &[occ, amp] : state.amplitudes()) {
        dist[positions_of(g, occ)] += std::norm(amp);
    }
    return dist;
}

SpreadStats spread_statistics(const std::map<VertexId, double> &distribution, double origin) {
    if (distribution.empty()) {
        throw ValidationError("spread statistics of an empty distribution");
    }
    double mean = 0.0;
    double second = 0.0;
    for (const auto &[x, p] : distribution) {
        double d = x - origin;
        mean += p * d;
        second += p * d * d;
    }
    double variance = second - mean * mean;
    return SpreadStats{mean, std::sqrt(std::max(variance, 0.0))};
}

Eigen::MatrixXcd walk_mode_unitary(const Graph &g, const WalkSchedule &schedule) {
    const int m_count = g.mode_count();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m_count, m_count);
    const std::vector<ModeIndex> step_perm = g.step_permutation();
    Eigen::MatrixXcd step = Eigen::MatrixXcd::Zero(m_count, m_count);
    for (ModeIndex m = 0; m < m_count; ++m) {
        step(step_perm[static_cast<size_t>(m)], m) = 1.0;
    }
    for (const WalkStep &walk_step : schedule.steps) {
        if (!walk_step.defects.empty()) {
            throw ValidationError("mode map is only defined for defect-free schedules");
        }
        validate_coins(g, walk_step.coins);
        Eigen::MatrixXcd coin = Eigen::MatrixXcd::Zero(m_count, m_count);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            int d = g.degree(v);
            ModeIndex begin = g.bundle_begin(v);
            coin.block(begin, begin, d, d) = walk_step.coins.matrices[static_cast<size_t>(v)];
        }
        u = step * coin * u;
    }
    return u;
}

}  // namespace bosonwalk
