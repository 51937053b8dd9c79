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

#include "bosonwalk/virtual_walk.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

// prod_m n_m! over the occupied modes.
double key_factorial(const Occupation &occ) {
    double f = 1.0;
    ModeIndex prev = -1;
    for (ModeIndex m : occ.mode_list()) {
        if (m != prev) {
            f *= factorial(occ.count(m));
            prev = m;
        }
    }
    return f;
}

// The virtual-mode table: every coin multiset of every virtual vertex, with
// the induced step permutation and per-vertex symmetrized coin blocks.
class VirtualModeTable {
  public:
    VirtualModeTable(const VirtualGraph &vg, const CoinAssignment &base_coins) {
        const Graph &g = vg.base();
        validate_coins(g, base_coins);
        const int n = vg.walkers();

        local_keys_.resize(static_cast<size_t>(vg.vertex_count()));
        for (int vi = 0; vi < vg.vertex_count(); ++vi) {
            const PosMultiset &vertex = vg.vertex_at(vi);
            std::set<Occupation> keys;
            std::vector<size_t> choice(static_cast<size_t>(n), 0);
            bool isolated = false;
            for (VertexId x : vertex) {
                if (g.degree(x) == 0) {
                    isolated = true;
                }
            }
            if (!isolated) {
                std::vector<ModeIndex> modes(static_cast<size_t>(n));
                while (true) {
                    for (int k = 0; k < n; ++k) {
                        modes[static_cast<size_t>(k)] =
                            g.bundle_begin(vertex[static_cast<size_t>(k)]) + static_cast<ModeIndex>(choice[static_cast<size_t>(k)]);
                    }
                    keys.insert(Occupation::from_modes(modes, g.mode_count()));
                    int k = n - 1;
                    while (k >= 0 && choice[static_cast<size_t>(k)] + 1 ==
                                         static_cast<size_t>(g.degree(vertex[static_cast<size_t>(k)]))) {
                        choice[static_cast<size_t>(k)] = 0;
                        --k;
                    }
                    if (k < 0) {
                        break;
                    }
                    ++choice[static_cast<size_t>(k)];
                }
            }
            auto &local = local_keys_[static_cast<size_t>(vi)];
            local.assign(keys.begin(), keys.end());
            for (size_t li = 0; li < local.size(); ++li) {
                global_index_.emplace(local[li], std::pair<int, int>(vi, static_cast<int>(li)));
            }
        }

        build_step_images(g);
        build_coin_blocks(g, base_coins);
    }

    int local_dim(int vertex) const {
        return static_cast<int>(local_keys_[static_cast<size_t>(vertex)].size());
    }

    std::pair<int, int> locate(const Occupation &key) const {
        auto it = global_index_.find(key);
        if (it == global_index_.end()) {
            throw LookupError("occupation key is not a virtual mode of this graph");
        }
        return it->second;
    }

    const Eigen::MatrixXcd &coin_block(int vertex) const {
        return coin_blocks_[static_cast<size_t>(vertex)];
    }

    std::pair<int, int> step_image(int vertex, int local) const {
        return step_images_[static_cast<size_t>(vertex)][static_cast<size_t>(local)];
    }

  private:
    void build_step_images(const Graph &g) {
        const std::vector<ModeIndex> perm = g.step_permutation();
        step_images_.resize(local_keys_.size());
        for (size_t vi = 0; vi < local_keys_.size(); ++vi) {
            auto &images = step_images_[vi];
            images.reserve(local_keys_[vi].size());
            for (const Occupation &key : local_keys_[vi]) {
                std::vector<uint16_t> counts(static_cast<size_t>(g.mode_count()), 0);
                for (ModeIndex m = 0; m < g.mode_count(); ++m) {
                    counts[static_cast<size_t>(perm[static_cast<size_t>(m)])] = static_cast<uint16_t>(key.count(m));
                }
                images.push_back(locate(Occupation(std::move(counts))));
            }
        }
    }

    // Block entry <T|C|S> = per(M[T|S]) / sqrt(s! t!) with M the
    // single-particle coin transfer between the listed base modes.
    void build_coin_blocks(const Graph &g, const CoinAssignment &coins) {
        coin_blocks_.resize(local_keys_.size());
        for (size_t vi = 0; vi < local_keys_.size(); ++vi) {
            const auto &keys = local_keys_[vi];
            const int dim = static_cast<int>(keys.size());
            Eigen::MatrixXcd block(dim, dim);
            for (int col = 0; col < dim; ++col) {
                std::vector<ModeIndex> in_modes = keys[static_cast<size_t>(col)].mode_list();
                for (int row = 0; row < dim; ++row) {
                    std::vector<ModeIndex> out_modes = keys[static_cast<size_t>(row)].mode_list();
                    const int n = static_cast<int>(in_modes.size());
                    Eigen::MatrixXcd sub(n, n);
                    for (int a = 0; a < n; ++a) {
                        Mode out = g.mode_at(out_modes[static_cast<size_t>(a)]);
                        for (int b = 0; b < n; ++b) {
                            Mode in = g.mode_at(in_modes[static_cast<size_t>(b)]);
                            if (in.position != out.position) {
                                sub(a, b) = Complex(0.0, 0.0);
                            } else {
                                ModeIndex begin = g.bundle_begin(in.position);
                                sub(a, b) = coins.matrices[static_cast<size_t>(in.position)](
                                    out_modes[static_cast<size_t>(a)] - begin, in_modes[static_cast<size_t>(b)] - begin);
                            }
                        }
                    }
                    double norm = std::sqrt(
                        key_factorial(keys[static_cast<size_t>(col)]) * key_factorial(keys[static_cast<size_t>(row)]));
                    block(row, col) = permanent(sub) / norm;
                }
            }
            coin_blocks_[static_cast<size_t>(vi)] = std::move(block);
        }
    }

    std::vector<std::vector<Occupation>> local_keys_;
    std::unordered_map<Occupation, std::pair<int, int>, OccupationHash> global_index_;
    std::vector<std::vector<std::pair<int, int>>> step_images_;
    std::vector<Eigen::MatrixXcd> coin_blocks_;
};

}  // namespace

Eigen::VectorXcd symmetric_coin(int degree) {
    if (degree < 1) {
        throw ValidationError("symmetric coin needs degree >= 1");
    }
    Eigen::VectorXcd coin = Eigen::VectorXcd::Zero(degree);
    if (degree == 1) {
        coin(0) = Complex(1.0, 0.0);
    } else {
        coin(0) = Complex(1.0, 0.0) / std::sqrt(2.0);
        coin(degree - 1) = Complex(0.0, 1.0) / std::sqrt(2.0);
    }
    return coin;
}

FockState product_state(const Graph &g, std::span<const WalkerWavelet> walkers) {
    if (walkers.empty()) {
        return FockState::vacuum(g.mode_count());
    }
    // Expand the product of linear forms into monomial coefficients, then
    // restore basis normalization and renormalize (overlapping walkers bunch).
    std::unordered_map<Occupation, Complex, OccupationHash> monomials;
    monomials.emplace(Occupation::empty(g.mode_count()), Complex(1.0, 0.0));
    for (const WalkerWavelet &walker : walkers) {
        if (!g.has_vertex(walker.position)) {
            throw LookupError("walker position " + std::to_string(walker.position) + " is out of range");
        }
        int d = g.degree(walker.position);
        if (walker.coin_amplitudes.size() != d) {
            throw ValidationError(
                "walker coin vector has dimension " + std::to_string(walker.coin_amplitudes.size()) +
                ", expected degree " + std::to_string(d));
        }
        ModeIndex begin = g.bundle_begin(walker.position);
        std::unordered_map<Occupation, Complex, OccupationHash> next;
        for (const auto &[occ, coeff] : monomials) {
            for (int j = 0; j < d; ++j) {
                Complex c = walker.coin_amplitudes(j);
                if (c == Complex(0.0, 0.0)) {
                    continue;
                }
                std::vector<uint16_t> counts = occ.counts();
                ++counts[static_cast<size_t>(begin + j)];
                next[Occupation(std::move(counts))] += coeff * c;
            }
        }
        monomials = std::move(next);
    }
    std::vector<std::pair<Occupation, Complex>> terms;
    terms.reserve(monomials.size());
    for (const auto &[occ, coeff] : monomials) {
        terms.emplace_back(occ, coeff * std::sqrt(key_factorial(occ)));
    }
    return FockState::from_terms(g.mode_count(), terms, true);
}

FockState virtual_input_to_fock(const Graph &g, const VirtualWalkInput &input) {
    if (input.coin_terms.empty()) {
        std::vector<WalkerWavelet> walkers;
        walkers.reserve(input.vertex.size());
        for (VertexId x : input.vertex) {
            walkers.push_back(WalkerWavelet{x, symmetric_coin(g.degree(x))});
        }
        return product_state(g, walkers);
    }
    std::vector<std::pair<Occupation, Complex>> terms;
    PosMultiset canonical_vertex = canonical_multiset(input.vertex);
    for (const auto &[modes, amp] : input.coin_terms) {
        std::vector<ModeIndex> indices;
        PosMultiset positions;
        indices.reserve(modes.size());
        positions.reserve(modes.size());
        for (const Mode &m : modes) {
            indices.push_back(g.mode_index(m));
            positions.push_back(m.position);
        }
        std::sort(positions.begin(), positions.end());
        if (positions != canonical_vertex) {
            throw ValidationError("a coin term's joint positions do not match the starting vertex");
        }
        terms.emplace_back(Occupation::from_modes(indices, g.mode_count()), amp);
    }
    return FockState::from_terms(g.mode_count(), terms, true);
}

std::map<PosMultiset, double> simulate_virtual(
    const VirtualGraph &vg,
    const DefectPattern &defects,
    const VirtualWalkInput &input,
    const CoinAssignment &base_coins,
    int steps,
    DefectTiming timing) {
    if (steps < 0) {
        throw ValidationError("step count must be non-negative");
    }
    if (vg.walkers() > kMaxWalkers) {
        throw CapError(
            "walker number " + std::to_string(vg.walkers()) + " exceeds the cap of " + std::to_string(kMaxWalkers));
    }
    const Graph &g = vg.base();

    // Defect phases per vertex index; unknown keys are an error.
    std::vector<double> vertex_phase(static_cast<size_t>(vg.vertex_count()), 0.0);
    bool any_defect = false;
    for (const auto &[key, phase] : defects.entries()) {
        vertex_phase[static_cast<size_t>(vg.vertex_index(key))] = phase;
        any_defect = true;
    }

    VirtualModeTable table(vg, base_coins);

    // Scatter the initial state into per-vertex local amplitude vectors.
    const int start_vertex = vg.vertex_index(input.vertex);
    std::vector<Eigen::VectorXcd> state(static_cast<size_t>(vg.vertex_count()));
    for (int vi = 0; vi < vg.vertex_count(); ++vi) {
        state[static_cast<size_t>(vi)] = Eigen::VectorXcd::Zero(table.local_dim(vi));
    }
    FockState fock_input = virtual_input_to_fock(g, input);
    for (const auto &[occ, amp] : fock_input.amplitudes()) {
        auto [vi, li] = table.locate(occ);
        if (vi != start_vertex) {
            throw ValidationError("initial coin terms must be supported on the starting vertex");
        }
        state[static_cast<size_t>(vi)](li) = amp;
    }

    auto apply_phases = [&]() {
        if (!any_defect) {
            return;
        }
        for (int vi = 0; vi < vg.vertex_count(); ++vi) {
            double theta = vertex_phase[static_cast<size_t>(vi)];
            if (theta != 0.0) {
                state[static_cast<size_t>(vi)] *= Complex(std::cos(theta), std::sin(theta));
            }
        }
    };

    for (int t = 0; t < steps; ++t) {
        if (timing == DefectTiming::pre_coin) {
            apply_phases();
        }
        // Coin: per-vertex symmetrized product blocks.
        for (int vi = 0; vi < vg.vertex_count(); ++vi) {
            auto &local = state[static_cast<size_t>(vi)];
            if (local.size() > 0 && !local.isZero(0.0)) {
                local = table.coin_block(vi) * local;
            }
        }
        // Step: the induced permutation of virtual modes.
        std::vector<Eigen::VectorXcd> next(state.size());
        for (int vi = 0; vi < vg.vertex_count(); ++vi) {
            next[static_cast<size_t>(vi)] = Eigen::VectorXcd::Zero(table.local_dim(vi));
        }
        for (int vi = 0; vi < vg.vertex_count(); ++vi) {
            const auto &local = state[static_cast<size_t>(vi)];
            for (int li = 0; li < local.size(); ++li) {
                if (local(li) != Complex(0.0, 0.0)) {
                    auto [wi, wj] = table.step_image(vi, li);
                    next[static_cast<size_t>(wi)](wj) = local(li);
                }
            }
        }
        state = std::move(next);
        if (timing == DefectTiming::post_step) {
            apply_phases();
        }
    }

    std::map<PosMultiset, double> distribution;
    for (int vi = 0; vi < vg.vertex_count(); ++vi) {
        double p = state[static_cast<size_t>(vi)].squaredNorm();
        if (p > 0.0) {
            distribution[vg.vertex_at(vi)] = p;
        }
    }
    return distribution;
}

std::map<PosMultiset, double> simulate_virtual(
    const VirtualGraph &vg,
    const DefectPattern &defects,
    const PosMultiset &initial_vertex,
    const CoinAssignment &base_coins,
    int steps) {
    return simulate_virtual(vg, defects, VirtualWalkInput{initial_vertex, {}}, base_coins, steps);
}

}  // namespace bosonwalk
