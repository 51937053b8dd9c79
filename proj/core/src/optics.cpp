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

#include "bosonwalk/optics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

namespace {

constexpr double kReckInputTolerance = 1e-10;

// Drop phases and rotations below this when emitting elements; well under
// every verification tolerance.
constexpr double kNegligible = 1e-14;

Eigen::Matrix2cd swap_block() {
    Eigen::Matrix2cd x;
    x << 0.0, 1.0, 1.0, 0.0;
    return x;
}

}  // namespace

std::vector<ModeIndex> element_support(const Element &element) {
    if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
        return {bs->a, bs->b};
    }
    if (const auto *ph = std::get_if<PhaseShift>(&element)) {
        return {ph->mode};
    }
    const auto &cp = std::get<ControlledPhase>(element);
    return {cp.a, cp.b};
}

bool is_linear(const Element &element) {
    return !std::holds_alternative<ControlledPhase>(element);
}

OpticalNetwork::OpticalNetwork(int mode_count) : mode_count_(mode_count) {
    if (mode_count < 1) {
        throw ValidationError("optical network needs at least one mode");
    }
}

OpticalNetwork::OpticalNetwork(int mode_count, std::vector<Element> elements) : OpticalNetwork(mode_count) {
    for (Element &element : elements) {
        append(std::move(element));
    }
}

void OpticalNetwork::append(Element element) {
    if (auto *bs = std::get_if<Beamsplitter>(&element)) {
        if (bs->a == bs->b) {
            throw ValidationError("beamsplitter needs two distinct modes");
        }
        if (bs->a > bs->b) {
            std::swap(bs->a, bs->b);
            bs->block = (swap_block() * bs->block * swap_block()).eval();
        }
        if (unitarity_defect(bs->block) > 1e-12) {
            throw ValidationError("beamsplitter block is not unitary");
        }
    }
    if (auto *cp = std::get_if<ControlledPhase>(&element)) {
        if (cp->a == cp->b) {
            throw ValidationError("controlled phase needs two distinct modes");
        }
        if (cp->a > cp->b) {
            std::swap(cp->a, cp->b);
        }
    }
    for (ModeIndex m : element_support(element)) {
        if (m < 0 || m >= mode_count_) {
            throw ValidationError(
                "element touches mode " + std::to_string(m) + ", network has " + std::to_string(mode_count_));
        }
    }
    elements_.push_back(std::move(element));
}

int OpticalNetwork::cphase_count() const {
    int count = 0;
    for (const Element &element : elements_) {
        count += std::holds_alternative<ControlledPhase>(element);
    }
    return count;
}

bool operator==(const OpticalNetwork &a, const OpticalNetwork &b) {
    if (a.mode_count_ != b.mode_count_ || a.elements_.size() != b.elements_.size()) {
        return false;
    }
    for (size_t k = 0; k < a.elements_.size(); ++k) {
        const Element &ea = a.elements_[k];
        const Element &eb = b.elements_[k];
        if (ea.index() != eb.index()) {
            return false;
        }
        bool same = std::visit(
            [&](const auto &x) {
                using T = std::decay_t<decltype(x)>;
                const auto &y = std::get<T>(eb);
                if constexpr (std::is_same_v<T, Beamsplitter>) {
                    return x.a == y.a && x.b == y.b && x.block == y.block;
                } else if constexpr (std::is_same_v<T, PhaseShift>) {
                    return x.mode == y.mode && x.theta == y.theta;
                } else {
                    return x.a == y.a && x.b == y.b && x.theta == y.theta;
                }
            },
            ea);
        if (!same) {
            return false;
        }
    }
    return true;
}

Eigen::MatrixXcd network_mode_map(const OpticalNetwork &net) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(net.mode_count(), net.mode_count());
    for (const Element &element : net.elements()) {
        if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(net.mode_count(), net.mode_count());
            e(bs->a, bs->a) = bs->block(0, 0);
            e(bs->a, bs->b) = bs->block(0, 1);
            e(bs->b, bs->a) = bs->block(1, 0);
            e(bs->b, bs->b) = bs->block(1, 1);
            u = e * u;
        } else if (const auto *ph = std::get_if<PhaseShift>(&element)) {
            u.row(ph->mode) *= Complex(std::cos(ph->theta), std::sin(ph->theta));
        } else {
            throw ValidationError("a controlled phase has no single-particle mode map");
        }
    }
    return u;
}

FockState apply_network(const OpticalNetwork &net, const FockState &state) {
    if (state.mode_count() != net.mode_count()) {
        throw ValidationError("state mode count does not match the network");
    }
    FockState current = state;
    for (const Element &element : net.elements()) {
        if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
            current = apply_mode_unitary(current, ModeUnitary(bs->block, {bs->a, bs->b}));
        } else if (const auto *ph = std::get_if<PhaseShift>(&element)) {
            current = apply_diagonal_phase(
                current, [ph](const Occupation &occ) { return ph->theta * occ.count(ph->mode); });
        } else {
            const auto &cp = std::get<ControlledPhase>(element);
            current = apply_diagonal_phase(current, [&cp](const Occupation &occ) {
                return occ.count(cp.a) >= 1 && occ.count(cp.b) >= 1 ? cp.theta : 0.0;
            });
        }
    }
    return current;
}

OpticalNetwork reck_decompose(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols() || u.rows() < 1) {
        throw ValidationError("triangular decomposition needs a square matrix");
    }
    if (unitarity_defect(u) > kReckInputTolerance) {
        throw ValidationError("matrix is not unitary within 1e-10");
    }
    const int k = static_cast<int>(u.rows());
    OpticalNetwork net(k);

    // Left-multiply two-mode rotations to reduce u to a diagonal of pure
    // phases; the network is then the reversed adjoint rotations after the
    // phases.
    Eigen::MatrixXcd w = u;
    std::vector<Beamsplitter> rotations;
    for (int c = 0; c < k - 1; ++c) {
        for (int r = c + 1; r < k; ++r) {
            Complex pivot = w(c, c);
            Complex target = w(r, c);
            if (std::abs(target) < kNegligible) {
                continue;
            }
            double norm = std::sqrt(std::norm(pivot) + std::norm(target));
            Eigen::Matrix2cd rot;
            rot << std::conj(pivot) / norm, std::conj(target) / norm, -target / norm, pivot / norm;
            Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(2, k);
            rows.row(0) = w.row(c);
            rows.row(1) = w.row(r);
            Eigen::MatrixXcd rotated = rot * rows;
            w.row(c) = rotated.row(0);
            w.row(r) = rotated.row(1);
            w(r, c) = 0.0;
            rotations.push_back(Beamsplitter{c, r, rot});
        }
    }

    for (int m = 0; m < k; ++m) {
        double theta = std::arg(w(m, m));
        if (std::abs(theta) > kNegligible) {
            net.append(PhaseShift{m, theta});
        }
    }
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
        net.append(Beamsplitter{it->a, it->b, it->block.adjoint()});
    }
    return net;
}

OpticalNetwork compile_walk_to_network(const Graph &g, const WalkSchedule &schedule) {
    OpticalNetwork net(g.mode_count());
    const std::vector<ModeIndex> step_perm = g.step_permutation();

    auto emit_step = [&]() {
        for (ModeIndex m = 0; m < g.mode_count(); ++m) {
            if (m < step_perm[static_cast<size_t>(m)]) {
                net.append(Beamsplitter{m, step_perm[static_cast<size_t>(m)], swap_block()});
            }
        }
    };
    auto emit_defects = [&](const std::vector<DefectOp> &defects) {
        for (const DefectOp &defect : defects) {
            if (const auto *cp = std::get_if<CPhaseDefect>(&defect)) {
                if (cp->a == cp->b) {
                    throw ValidationError("a same-mode controlled phase has no optical network element");
                }
                net.append(ControlledPhase{cp->a, cp->b, cp->phase});
            } else if (const auto *pp = std::get_if<PositionPhaseDefect>(&defect)) {
                if (pp->positions.size() != 1) {
                    throw ValidationError("only single-position phase defects are expressible as phase elements");
                }
                for (ModeIndex m : g.bundle_modes(pp->positions[0])) {
                    net.append(PhaseShift{m, pp->phase});
                }
            } else {
                throw ValidationError("Kerr-style defects are not expressible as linear network elements");
            }
        }
    };

    for (const WalkStep &step : schedule.steps) {
        validate_coins(g, step.coins);
        if (schedule.timing == DefectTiming::pre_coin) {
            emit_defects(step.defects);
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (g.degree(v) == 0) {
                continue;
            }
            OpticalNetwork bundle = reck_decompose(step.coins.matrices[static_cast<size_t>(v)]);
            ModeIndex begin = g.bundle_begin(v);
            for (const Element &element : bundle.elements()) {
                if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
                    net.append(Beamsplitter{begin + bs->a, begin + bs->b, bs->block});
                } else {
                    const auto &ph = std::get<PhaseShift>(element);
                    net.append(PhaseShift{begin + ph.mode, ph.theta});
                }
            }
        }
        emit_step();
        if (schedule.timing == DefectTiming::post_step) {
            emit_defects(step.defects);
        }
    }
    return net;
}

CompiledWalk compile_network_to_walk(const OpticalNetwork &net, const CompileOptions &options) {
    const int m_count = net.mode_count();
    const int n = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(m_count))));
    if (n < 1 || n > 64) {
        throw SizingError(
            "cannot embed a " + std::to_string(m_count) + "-mode network: the complete-with-loops host graph would need " +
            std::to_string(n) + " vertices");
    }
    Graph g = Graph::complete_with_loops(n);
    // Network mode i is walk mode i = (position i / n, coin i % n); walk
    // modes >= m_count are padding.

    CompiledWalk result{g, WalkSchedule{}, m_count};
    CoinAssignment identity = identity_coins(g);

    auto transposition_coin = [&](VertexId slot_a, VertexId slot_b) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
        if (slot_a != slot_b) {
            m(slot_a, slot_a) = 0.0;
            m(slot_b, slot_b) = 0.0;
            m(slot_a, slot_b) = 1.0;
            m(slot_b, slot_a) = 1.0;
        }
        return m;
    };

    // Routed beamsplitters waiting to share one coin/step round. Their
    // vertex pairs are pairwise disjoint, so the permutation coins and the
    // hub blocks never contend.
    std::vector<Beamsplitter> batch;
    std::set<VertexId> claimed;

    auto flush_batch = [&]() {
        if (batch.empty()) {
            return;
        }
        // Permutation coins route every batched mode to coin slot 0; the
        // step lands them in bundle 0 as coin values x1/x2; the hub coin
        // applies all blocks at once; the mirrored half routes them back.
        CoinAssignment perms = identity;
        CoinAssignment hub = identity;
        Eigen::MatrixXcd hub_matrix = Eigen::MatrixXcd::Identity(n, n);
        for (const Beamsplitter &bs : batch) {
            VertexId x1 = bs.a / n;
            VertexId c1 = bs.a % n;
            VertexId x2 = bs.b / n;
            VertexId c2 = bs.b % n;
            perms.matrices[static_cast<size_t>(x1)] = transposition_coin(0, c1);
            perms.matrices[static_cast<size_t>(x2)] = transposition_coin(0, c2);
            hub_matrix(x1, x1) = bs.block(0, 0);
            hub_matrix(x1, x2) = bs.block(0, 1);
            hub_matrix(x2, x1) = bs.block(1, 0);
            hub_matrix(x2, x2) = bs.block(1, 1);
        }
        hub.matrices[0] = hub_matrix;
        result.schedule.steps.push_back(WalkStep{perms, {}});
        result.schedule.steps.push_back(WalkStep{hub, {}});
        result.schedule.steps.push_back(WalkStep{perms, {}});
        result.schedule.steps.push_back(WalkStep{identity, {}});
        batch.clear();
        claimed.clear();
    };

    for (const Element &element : net.elements()) {
        if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
            VertexId x1 = bs->a / n;
            VertexId c1 = bs->a % n;
            VertexId x2 = bs->b / n;
            VertexId c2 = bs->b % n;
            if (x1 == x2) {
                // Both modes already share a bundle: a single coin carries the
                // block, plus one identity round to cancel the step.
                flush_batch();
                CoinAssignment coin = identity;
                Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
                m(c1, c1) = bs->block(0, 0);
                m(c1, c2) = bs->block(0, 1);
                m(c2, c1) = bs->block(1, 0);
                m(c2, c2) = bs->block(1, 1);
                coin.matrices[static_cast<size_t>(x1)] = m;
                result.schedule.steps.push_back(WalkStep{coin, {}});
                result.schedule.steps.push_back(WalkStep{identity, {}});
            } else {
                if (!options.batch_parallel || claimed.count(x1) || claimed.count(x2)) {
                    flush_batch();
                }
                batch.push_back(*bs);
                claimed.insert(x1);
                claimed.insert(x2);
                if (!options.batch_parallel) {
                    flush_batch();
                }
            }
        } else if (const auto *ph = std::get_if<PhaseShift>(&element)) {
            flush_batch();
            VertexId x = ph->mode / n;
            VertexId c = ph->mode % n;
            CoinAssignment coin = identity;
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
            m(c, c) = Complex(std::cos(ph->theta), std::sin(ph->theta));
            coin.matrices[static_cast<size_t>(x)] = m;
            result.schedule.steps.push_back(WalkStep{coin, {}});
            result.schedule.steps.push_back(WalkStep{identity, {}});
        } else {
            // Two identity rounds whose net effect is just the diagonal
            // defect: the second step's defect acts after the steps cancel.
            flush_batch();
            const auto &cp = std::get<ControlledPhase>(element);
            result.schedule.steps.push_back(WalkStep{identity, {}});
            result.schedule.steps.push_back(
                WalkStep{identity, {CPhaseDefect{cp.a, cp.b, cp.theta}}});
        }
    }
    flush_batch();
    return result;
}

}  // namespace bosonwalk
