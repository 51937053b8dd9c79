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
//
// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "bosonwalk/fock.hpp"
#include "bosonwalk/graph.hpp"
#include "bosonwalk/optics.hpp"
#include "bosonwalk/virtual_graph.hpp"
#include "bosonwalk/virtual_walk.hpp"
#include "bosonwalk/walk.hpp"
#include "test_helpers.hpp"

using namespace bosonwalk;
using Clock = std::chrono::steady_clock;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string details;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::map<VertexId, double> binomial_walk(int steps, VertexId origin) {
    std::map<VertexId, double> dist;
    double scale = std::pow(0.5, steps);
    double binom = 1.0;
    for (int k = 0; k <= steps; ++k) {
        dist[origin + 2 * k - steps] += binom * scale;
        binom = binom * (steps - k) / (k + 1);
    }
    return dist;
}

// ---------------------------------------------------------------- criterion 1
Outcome ballistic_spreading() {
    auto start = Clock::now();
    const int v_count = 201;
    const int origin = 100;
    const int t_max = 100;

    Graph g = Graph::line(v_count);
    CoinAssignment coins = hadamard_coins(g);
    WalkSchedule one_step = repeat_schedule(coins, 1);

    FockState state = product_state(g, std::vector<WalkerWavelet>{WalkerWavelet{origin, symmetric_coin(2)}});
    double ratio_min = 1e30;
    double ratio_max = -1e30;
    for (int t = 1; t <= t_max; ++t) {
        state = evolve(g, state, one_step);
        if (t >= 40) {
            SpreadStats stats = spread_statistics(position_distribution(g, state), origin);
            double ratio = stats.stddev / t;
            ratio_min = std::min(ratio_min, ratio);
            ratio_max = std::max(ratio_max, ratio);
        }
    }
    double variation = (ratio_max - ratio_min) / ratio_min;

    double classical_worst = 0.0;
    for (int t = 40; t <= t_max; t += 20) {
        SpreadStats stats = spread_statistics(binomial_walk(t, 0), 0.0);
        classical_worst = std::max(classical_worst, std::abs(stats.stddev / std::sqrt(double(t)) - 1.0));
    }

    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = ratio_min > 0.4 && variation < 0.05 && classical_worst < 0.02 && elapsed < 10.0;
    std::ostringstream msg;
    msg << "sigma/t in [" << ratio_min << ", " << ratio_max << "] (variation " << variation * 100.0
        << "%), classical |sigma/sqrt(t)-1| <= " << classical_worst << ", " << elapsed << " s";
    out.details = msg.str();
    return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome virtual_isomorphism() {
    auto start = Clock::now();
    auto gen = testing::rng(20260810);
    double worst = 0.0;
    std::string worst_at = "-";

    for (int v_count : {6, 10, 15}) {
        Graph g = Graph::line(v_count);
        VirtualGraph vg(g, 2);
        CoinAssignment coins = hadamard_coins(g);

        std::vector<VirtualWalkInput> inputs;
        VirtualWalkInput symmetric;
        symmetric.vertex = {v_count / 2 - 1, v_count / 2};
        inputs.push_back(symmetric);

        // A random coin superposition on the same starting vertex.
        VirtualWalkInput random_input;
        random_input.vertex = symmetric.vertex;
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (VertexId c1 : g.neighbors(random_input.vertex[0])) {
            for (VertexId c2 : g.neighbors(random_input.vertex[1])) {
                random_input.coin_terms.emplace_back(
                    std::vector<Mode>{Mode{random_input.vertex[0], c1}, Mode{random_input.vertex[1], c2}},
                    Complex(unit(gen), unit(gen)));
            }
        }
        inputs.push_back(random_input);

        for (const VirtualWalkInput &input : inputs) {
            FockState state = virtual_input_to_fock(g, input);
            WalkSchedule one_step = repeat_schedule(coins, 1);
            for (int t = 1; t <= 7; ++t) {
                state = evolve(g, state, one_step);
                std::map<PosMultiset, double> fock_dist = coincidence_distribution(g, state);
                std::map<PosMultiset, double> virtual_dist =
                    simulate_virtual(vg, DefectPattern{}, input, coins, t);
                double l1 = testing::l1_distance(fock_dist, virtual_dist);
                if (l1 > worst) {
                    worst = l1;
                    worst_at = "V=" + std::to_string(v_count) + ",t=" + std::to_string(t);
                }
            }
        }
    }

    double elapsed = seconds_since(start);
    Outcome out;
    out.pass = worst <= 1e-10 && elapsed < 30.0;
    std::ostringstream msg;
    msg << "worst L1 " << worst << " at " << worst_at << ", " << elapsed << " s";
    out.details = msg.str();
    return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome defect_equivalence() {
    auto gen = testing::rng(777);
    const int v_count = 10;
    const int steps = 6;
    Graph g = Graph::line(v_count);
    VirtualGraph vg(g, 2);
    CoinAssignment coins = hadamard_coins(g);

    VirtualWalkInput input;
    input.vertex = {4, 5};

    std::uniform_int_distribution<int> pattern_size(1, 4);
    std::uniform_int_distribution<int> vertex_pick(0, vg.vertex_count() - 1);
    std::uniform_real_distribution<double> phase_pick(0.1, 2.0 * kPi);

    double worst = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
        std::map<PosMultiset, double> entries;
        int size = pattern_size(gen);
        for (int k = 0; k < size; ++k) {
            entries[vg.vertex_at(vertex_pick(gen))] = phase_pick(gen);
        }
        DefectPattern pattern(entries);

        std::vector<DefectOp> fock_defects;
        for (const auto &[key, phase] : pattern.entries()) {
            for (const DefectOp &op : cphase_realization(g, key, phase)) {
                fock_defects.push_back(op);
            }
        }
        WalkSchedule schedule = repeat_schedule(coins, steps, fock_defects);
        FockState fock = evolve(g, virtual_input_to_fock(g, input), schedule);
        std::map<PosMultiset, double> fock_dist = coincidence_distribution(g, fock);
        std::map<PosMultiset, double> virtual_dist = simulate_virtual(vg, pattern, input, coins, steps);
        worst = std::max(worst, testing::l1_distance(fock_dist, virtual_dist));
    }

    Outcome out;
    out.pass = worst <= 1e-10;
    std::ostringstream msg;
    msg << "10 random patterns (V=10, t=6), worst L1 " << worst;
    out.details = msg.str();
    return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome permanent_oracle() {
    auto gen = testing::rng(424242);
    std::uniform_int_distribution<int> mode_dist(2, 8);
    std::uniform_int_distribution<int> photon_dist(1, 4);

    double worst = 0.0;
    int amplitudes_checked = 0;
    for (int rep = 0; rep < 50; ++rep) {
        int m = mode_dist(gen);
        int n = photon_dist(gen);
        Eigen::MatrixXcd u = testing::random_unitary(m, gen);

        std::uniform_int_distribution<int> pick(0, m - 1);
        std::vector<ModeIndex> input_modes;
        for (int k = 0; k < n; ++k) {
            input_modes.push_back(pick(gen));
        }
        Occupation input = Occupation::from_modes(input_modes, m);

        std::vector<ModeIndex> support(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) {
            support[static_cast<size_t>(k)] = k;
        }
        FockState out_state = apply_mode_unitary(FockState::basis_state(input_modes, m), ModeUnitary(u, support));
        for (const auto &[key, amp] : out_state.amplitudes()) {
            worst = std::max(worst, std::abs(amp - permanent_amplitude(u, input, key)));
            ++amplitudes_checked;
        }
    }

    // Hong-Ou-Mandel zero, balanced splitter.
    Eigen::MatrixXcd balanced(2, 2);
    double s = 1.0 / std::numbers::sqrt2;
    balanced << s, s, s, -s;
    std::vector<ModeIndex> pair{0, 1};
    Occupation one_one = Occupation::from_modes(pair, 2);
    double hom = std::abs(permanent_amplitude(balanced, one_one, one_one));

    Outcome out;
    out.pass = worst <= 1e-9 && hom <= 1e-12;
    std::ostringstream msg;
    msg << "50 unitaries, " << amplitudes_checked << " amplitudes, worst |diff| " << worst << ", HOM |amp| " << hom;
    out.details = msg.str();
    return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome compiler_soundness() {
    auto gen = testing::rng(5150);
    double worst_forward = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        int v_count = 2 + rep % 4;  // 2..5
        int steps = 1 + rep % 4;    // 1..4
        Graph g = Graph::complete_with_loops(v_count);
        WalkSchedule schedule;
        for (int t = 0; t < steps; ++t) {
            CoinAssignment coins;
            for (VertexId v = 0; v < v_count; ++v) {
                coins.matrices.push_back(testing::random_unitary(v_count, gen));
            }
            schedule.steps.push_back(WalkStep{coins, {}});
        }
        OpticalNetwork net = compile_walk_to_network(g, schedule);
        double d = (network_mode_map(net) - walk_mode_unitary(g, schedule)).cwiseAbs().maxCoeff();
        worst_forward = std::max(worst_forward, d);
    }

    double worst_round = 0.0;
    std::uniform_int_distribution<int> element_count(1, 6);
    std::uniform_int_distribution<int> mode_pick(0, 8);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int rep = 0; rep < 20; ++rep) {
        OpticalNetwork net(9);
        int count = element_count(gen);
        for (int k = 0; k < count; ++k) {
            if (kind(gen) == 0) {
                net.append(PhaseShift{mode_pick(gen), angle(gen)});
            } else {
                int a = mode_pick(gen);
                int b = mode_pick(gen);
                while (b == a) {
                    b = mode_pick(gen);
                }
                net.append(Beamsplitter{a, b, testing::random_unitary(2, gen)});
            }
        }
        CompiledWalk compiled = compile_network_to_walk(net);
        OpticalNetwork back = compile_walk_to_network(compiled.graph, compiled.schedule);
        double d = (network_mode_map(back) - network_mode_map(net)).cwiseAbs().maxCoeff();
        worst_round = std::max(worst_round, d);
    }

    // The published single-splitter example: routing through the hub with
    // permutation coins, one splitter coin, and the mirrored return.
    bool sandwich_ok = true;
    {
        OpticalNetwork net(9);
        Eigen::Matrix2cd block = testing::random_unitary(2, gen);
        net.append(Beamsplitter{4, 7, block});  // modes (1,1) and (2,1)
        CompiledWalk compiled = compile_network_to_walk(net);
        sandwich_ok = compiled.schedule.steps.size() == 4;
        if (sandwich_ok) {
            const auto &steps = compiled.schedule.steps;
            Eigen::MatrixXcd transposition = Eigen::MatrixXcd::Identity(3, 3);
            transposition(0, 0) = 0.0;
            transposition(1, 1) = 0.0;
            transposition(0, 1) = 1.0;
            transposition(1, 0) = 1.0;
            auto is_id = [](const Eigen::MatrixXcd &m) {
                return (m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() == 0.0;
            };
            sandwich_ok = sandwich_ok && is_id(steps[0].coins.matrices[0]) &&
                          (steps[0].coins.matrices[1] - transposition).cwiseAbs().maxCoeff() == 0.0 &&
                          (steps[0].coins.matrices[2] - transposition).cwiseAbs().maxCoeff() == 0.0;
            const Eigen::MatrixXcd &hub = steps[1].coins.matrices[0];
            sandwich_ok = sandwich_ok && hub(1, 1) == block(0, 0) && hub(1, 2) == block(0, 1) &&
                          hub(2, 1) == block(1, 0) && hub(2, 2) == block(1, 1) && hub(0, 0) == Complex(1.0, 0.0);
            for (int v = 0; v < 3 && sandwich_ok; ++v) {
                sandwich_ok = (steps[2].coins.matrices[static_cast<size_t>(v)] -
                               steps[0].coins.matrices[static_cast<size_t>(v)])
                                      .cwiseAbs()
                                      .maxCoeff() == 0.0 &&
                              is_id(steps[3].coins.matrices[static_cast<size_t>(v)]);
            }
            Eigen::MatrixXcd walk_map = walk_mode_unitary(compiled.graph, compiled.schedule);
            sandwich_ok = sandwich_ok && (walk_map - network_mode_map(net)).cwiseAbs().maxCoeff() < 1e-9;
        }
    }

    Outcome out;
    out.pass = worst_forward <= 1e-9 && worst_round <= 1e-9 && sandwich_ok;
    std::ostringstream msg;
    msg << "walk->net worst " << worst_forward << ", net->walk->net worst " << worst_round << ", sandwich "
        << (sandwich_ok ? "exact" : "WRONG");
    out.details = msg.str();
    return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome commutation_rules() {
    auto gen = testing::rng(66);
    Eigen::Matrix2cd h;
    double s = 1.0 / std::numbers::sqrt2;
    h << s, s, s, -s;
    Eigen::Matrix2cd swap;
    swap << 0.0, 1.0, 1.0, 0.0;

    // Rule 1: pi phases on both splitter modes, verified on 1 and 2 bosons.
    std::vector<Element> phase_pair{PhaseShift{0, kPi}, PhaseShift{1, kPi}};
    std::vector<Element> splitter{Beamsplitter{0, 1, testing::random_unitary(2, gen)}};
    CommutationResult rule1 = check_commutation(phase_pair, splitter);

    // Rule 2: a swap past a beamsplitter relabels the block.
    CommutationResult rule2 =
        check_commutation(Element{Beamsplitter{0, 1, swap}}, Element{Beamsplitter{0, 1, h}});

    // The two-splitter control circuit hoists with both controlled gates.
    OpticalNetwork fig_commute(4);
    fig_commute.append(Beamsplitter{2, 3, swap});
    fig_commute.append(ControlledPhase{0, 2, kPi});
    fig_commute.append(Beamsplitter{2, 3, swap});
    fig_commute.append(ControlledPhase{1, 2, kPi});
    HoistResult hoisted = hoist_cphases(fig_commute);

    // The straddling circuit is blocked with a visible gap.
    OpticalNetwork fig_blocked(4);
    fig_blocked.append(Beamsplitter{0, 1, h});
    fig_blocked.append(Beamsplitter{2, 3, h});
    fig_blocked.append(ControlledPhase{1, 2, kPi});
    HoistResult blocked = hoist_cphases(fig_blocked);

    Outcome out;
    out.pass = rule1.commutes && rule1.deviation <= 1e-10 && rule2.commutes && rule2.deviation <= 1e-10 &&
               hoisted.ok && hoisted.cphase_count == 2 && !blocked.ok && blocked.blocked_pair.has_value() &&
               blocked.blocked_deviation >= 1e-3;
    std::ostringstream msg;
    msg << rewrite_rule_name(rule1.rule) << " residual " << rule1.deviation << ", "
        << rewrite_rule_name(rule2.rule) << " residual " << rule2.deviation << ", hoisted prefix "
        << hoisted.cphase_count << " cphases, blocked gap " << blocked.blocked_deviation;
    out.details = msg.str();
    return out;
}

// ---------------------------------------------------------------- criterion 7
bool adjacent_by_pairing(const Graph &g, PosMultiset a, const PosMultiset &b) {
    std::sort(a.begin(), a.end());
    do {
        bool all = true;
        for (size_t k = 0; k < a.size(); ++k) {
            if (!g.has_edge(a[k], b[k])) {
                all = false;
                break;
            }
        }
        if (all) {
            return true;
        }
    } while (std::next_permutation(a.begin(), a.end()));
    return false;
}

Outcome structural_properties() {
    Outcome out;
    std::ostringstream msg;

    VirtualGraph vg6(Graph::line(6), 2);
    bool vertices_ok = vg6.vertex_count() == 21;

    bool symmetric_ok = true;
    for (VertexId i = 0; i < 6 && symmetric_ok; ++i) {
        for (VertexId j = 0; j < 6 && symmetric_ok; ++j) {
            symmetric_ok = vg6.vertex_index(std::vector<VertexId>{i, j}) ==
                           vg6.vertex_index(std::vector<VertexId>{j, i});
        }
    }

    bool degree_ok = true;
    for (VertexId i = 1; i < 5 && degree_ok; ++i) {
        for (VertexId j = i + 1; j < 5 && degree_ok; ++j) {
            degree_ok = vg6.degree(std::vector<VertexId>{i, j}) == 4;
        }
    }

    // Brute-force adjacency over a family of graphs with V <= 8, n <= 3.
    auto gen = testing::rng(31415);
    std::vector<Graph> graphs;
    for (int v = 2; v <= 8; ++v) {
        graphs.push_back(Graph::line(v));
    }
    for (int v = 3; v <= 8; ++v) {
        graphs.push_back(Graph::cycle(v));
    }
    for (int v = 2; v <= 4; ++v) {
        graphs.push_back(Graph::complete_with_loops(v));
    }
    for (int k = 0; k < 4; ++k) {
        graphs.push_back(testing::random_graph(5 + k, 0.4, gen));
    }

    bool brute_ok = true;
    long pairs_checked = 0;
    for (const Graph &g : graphs) {
        for (int n = 1; n <= 3 && brute_ok; ++n) {
            VirtualGraph vg(g, n);
            for (int i = 0; i < vg.vertex_count() && brute_ok; ++i) {
                std::set<int> expected;
                for (int j = 0; j < vg.vertex_count(); ++j) {
                    if (adjacent_by_pairing(g, vg.vertex_at(i), vg.vertex_at(j))) {
                        expected.insert(j);
                    }
                }
                const auto &actual = vg.neighbor_indices(i);
                brute_ok = expected == std::set<int>(actual.begin(), actual.end()) &&
                           vg.degree(vg.vertex_at(i)) == static_cast<int>(actual.size());
                pairs_checked += vg.vertex_count();
            }
        }
    }

    out.pass = vertices_ok && symmetric_ok && degree_ok && brute_ok;
    msg << "21 vertices " << (vertices_ok ? "ok" : "WRONG") << ", diagonal symmetry "
        << (symmetric_ok ? "ok" : "WRONG") << ", interior degree 4 " << (degree_ok ? "ok" : "WRONG")
        << ", brute-force adjacency over " << graphs.size() << " graphs (" << pairs_checked << " vertex pairs) "
        << (brute_ok ? "ok" : "WRONG");
    out.details = msg.str();
    return out;
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"ballistic spreading (Hadamard walker vs classical binomial)", ballistic_spreading},
        {"virtual-graph isomorphism (two walkers vs one virtual walker)", virtual_isomorphism},
        {"defect equivalence (CPHASE compositions vs virtual phase defects)", defect_equivalence},
        {"permanent oracle equivalence (Fock evolution vs Ryser)", permanent_oracle},
        {"compiler soundness (walk <-> network, hub sandwich)", compiler_soundness},
        {"commutation rules (pass-through, retarget, hoisting, blocking)", commutation_rules},
        {"structural properties (virtual graph combinatorics)", structural_properties},
    };

    int failures = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Outcome outcome = criteria[k].run();
        std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << (k + 1) << ". " << criteria[k].name << " — "
                  << outcome.details << "\n";
        failures += outcome.pass ? 0 : 1;
    }
    if (failures == 0) {
        std::cout << "all " << criteria.size() << " acceptance criteria passed\n";
    } else {
        std::cout << failures << " acceptance criteria FAILED\n";
    }
    return failures;
}
