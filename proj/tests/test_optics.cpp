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

#include <cmath>
#include <numbers>

#include "bosonwalk/errors.hpp"
#include "bosonwalk/optics.hpp"
#include "bosonwalk/serial.hpp"
#include "bosonwalk/virtual_walk.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace bosonwalk;

namespace {

const double kPi = std::numbers::pi;

Eigen::Matrix2cd hadamard_block() {
    Eigen::Matrix2cd h;
    double s = 1.0 / std::numbers::sqrt2;
    h << s, s, s, -s;
    return h;
}

Eigen::Matrix2cd swap_block() {
    Eigen::Matrix2cd x;
    x << 0.0, 1.0, 1.0, 0.0;
    return x;
}

// Two-boson behaviour of a whole network, as output states per basis input.
// Used to confirm rewrites preserve the circuit.
std::vector<FockState> two_boson_columns(const OpticalNetwork &net) {
    std::vector<FockState> columns;
    const int m = net.mode_count();
    for (ModeIndex a = 0; a < m; ++a) {
        for (ModeIndex b = a; b < m; ++b) {
            columns.push_back(apply_network(net, FockState::basis_state(std::vector<ModeIndex>{a, b}, m)));
        }
    }
    return columns;
}

double network_gap(const OpticalNetwork &a, const OpticalNetwork &b) {
    std::vector<FockState> ca = two_boson_columns(a);
    std::vector<FockState> cb = two_boson_columns(b);
    double gap = 0.0;
    for (size_t k = 0; k < ca.size(); ++k) {
        for (const auto &[occ, amp] : ca[k].amplitudes()) {
            gap = std::max(gap, std::abs(amp - cb[k].amplitude(occ)));
        }
        for (const auto &[occ, amp] : cb[k].amplitudes()) {
            gap = std::max(gap, std::abs(amp - ca[k].amplitude(occ)));
        }
    }
    return gap;
}

OpticalNetwork random_linear_network(int modes, int elements, std::mt19937_64 &gen) {
    OpticalNetwork net(modes);
    std::uniform_int_distribution<int> mode_dist(0, modes - 1);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int k = 0; k < elements; ++k) {
        if (kind(gen) == 0) {
            net.append(PhaseShift{mode_dist(gen), angle(gen)});
        } else {
            int a = mode_dist(gen);
            int b = mode_dist(gen);
            while (b == a) {
                b = mode_dist(gen);
            }
            net.append(Beamsplitter{a, b, testing::random_unitary(2, gen)});
        }
    }
    return net;
}

}  // namespace

TEST_CASE("triangular decomposition basics") {
    SUBCASE("1x1 unitary becomes a single phase") {
        Eigen::MatrixXcd u(1, 1);
        u(0, 0) = Complex(std::cos(0.7), std::sin(0.7));
        OpticalNetwork net = reck_decompose(u);
        CHECK(net.size() == 1);
        CHECK((network_mode_map(net) - u).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("Hadamard recomposes from one beamsplitter plus phases") {
        Eigen::MatrixXcd h = hadamard_block();
        OpticalNetwork net = reck_decompose(h);
        int splitters = 0;
        for (const Element &e : net.elements()) {
            splitters += std::holds_alternative<Beamsplitter>(e);
        }
        CHECK(splitters == 1);
        CHECK((network_mode_map(net) - h).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("identity produces an empty network") {
        OpticalNetwork net = reck_decompose(Eigen::MatrixXcd::Identity(4, 4));
        CHECK(net.size() == 0);
    }

    SUBCASE("non-unitary input is rejected") {
        Eigen::MatrixXcd bad(2, 2);
        bad << 1.0, 1.0, 0.0, 1.0;
        CHECK_THROWS_AS(reck_decompose(bad), ValidationError);
    }
}

TEST_CASE("triangular decomposition round-trips random unitaries") {
    auto gen = testing::rng(42);
    for (int k = 1; k <= 10; ++k) {
        Eigen::MatrixXcd u = testing::random_unitary(k, gen);
        OpticalNetwork net = reck_decompose(u);
        int splitters = 0;
        int phases = 0;
        for (const Element &e : net.elements()) {
            splitters += std::holds_alternative<Beamsplitter>(e);
            phases += std::holds_alternative<PhaseShift>(e);
        }
        CHECK(splitters <= k * (k - 1) / 2);
        CHECK(phases <= k);
        CHECK((network_mode_map(net) - u).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("network element validation") {
    OpticalNetwork net(3);
    CHECK_THROWS_AS(net.append(PhaseShift{5, 0.1}), ValidationError);
    CHECK_THROWS_AS(net.append(Beamsplitter{1, 1, hadamard_block()}), ValidationError);
    Eigen::Matrix2cd bad;
    bad << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(net.append(Beamsplitter{0, 1, bad}), ValidationError);

    // Reversed mode order is canonicalized by conjugating with the swap.
    OpticalNetwork a(2);
    a.append(Beamsplitter{1, 0, hadamard_block()});
    OpticalNetwork b(2);
    b.append(Beamsplitter{0, 1, swap_block() * hadamard_block() * swap_block()});
    CHECK((network_mode_map(a) - network_mode_map(b)).cwiseAbs().maxCoeff() < 1e-12);

    net.append(ControlledPhase{0, 2, kPi});
    CHECK_THROWS_AS(network_mode_map(net), ValidationError);
}

TEST_CASE("walk-to-network: identity coins compile to the bare step") {
    Graph g = Graph::line(4);
    OpticalNetwork net = compile_walk_to_network(g, repeat_schedule(identity_coins(g), 1));

    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(g.mode_count(), g.mode_count());
    std::vector<ModeIndex> perm = g.step_permutation();
    for (ModeIndex m = 0; m < g.mode_count(); ++m) {
        expected(perm[static_cast<size_t>(m)], m) = 1.0;
    }
    CHECK((network_mode_map(net) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("walk-to-network reproduces the walk's mode map on a line") {
    Graph g = Graph::line(8);
    WalkSchedule schedule = repeat_schedule(hadamard_coins(g), 3);
    OpticalNetwork net = compile_walk_to_network(g, schedule);
    CHECK((network_mode_map(net) - walk_mode_unitary(g, schedule)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("three-vertex loop graph compiles into three bundles of three") {
    Graph g = Graph::complete_with_loops(3);
    WalkSchedule schedule = repeat_schedule(dft_coins(g), 1);
    OpticalNetwork net = compile_walk_to_network(g, schedule);
    CHECK(net.mode_count() == 9);

    // Coin elements stay inside one bundle each; the trailing step swaps
    // cross bundles.
    bool in_step_part = false;
    for (const Element &element : net.elements()) {
        std::vector<ModeIndex> support = element_support(element);
        bool same_bundle = support.front() / 3 == support.back() / 3;
        if (!same_bundle) {
            in_step_part = true;
        }
        if (!in_step_part) {
            CHECK(same_bundle);
        }
    }
    CHECK(in_step_part);
    CHECK((network_mode_map(net) - walk_mode_unitary(g, schedule)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("walk-to-network carries controlled-phase defects") {
    Graph g = Graph::line(4);
    std::vector<DefectOp> defects{CPhaseDefect{g.mode_index(1, 2), g.mode_index(2, 1), kPi}};
    WalkSchedule schedule = repeat_schedule(hadamard_coins(g), 1, defects);
    OpticalNetwork net = compile_walk_to_network(g, schedule);
    CHECK(net.cphase_count() == 1);

    // Two-boson behaviour matches the walk engine exactly.
    FockState in = FockState::basis_state(
        std::vector<ModeIndex>{g.mode_index(1, 2), g.mode_index(2, 1)}, g.mode_count());
    FockState via_net = apply_network(net, in);
    FockState via_walk = evolve(g, in, schedule);
    CHECK(std::abs(inner_product(via_net, via_walk) - Complex(1.0, 0.0)) < 1e-10);
}

TEST_CASE("network-to-walk: the single-splitter sandwich has the published shape") {
    // A splitter between modes (1,1) and (2,1) of nine modes: permutation
    // coins route both modes to coin slot 0, the step carries them into
    // bundle 0, one coin applies the block, and the mirror restores them.
    OpticalNetwork net(9);
    net.append(Beamsplitter{4, 7, hadamard_block()});
    CompiledWalk compiled = compile_network_to_walk(net);

    CHECK(compiled.graph.vertex_count() == 3);
    CHECK(compiled.embedded_modes == 9);
    REQUIRE(compiled.schedule.steps.size() == 4);

    const auto &steps = compiled.schedule.steps;
    Eigen::MatrixXcd transposition = Eigen::MatrixXcd::Identity(3, 3);
    transposition(0, 0) = 0.0;
    transposition(1, 1) = 0.0;
    transposition(0, 1) = 1.0;
    transposition(1, 0) = 1.0;

    // Permutation coins at positions 1 and 2 swap coin slots 0 and 1.
    CHECK((steps[0].coins.matrices[0] - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((steps[0].coins.matrices[1] - transposition).cwiseAbs().maxCoeff() == 0.0);
    CHECK((steps[0].coins.matrices[2] - transposition).cwiseAbs().maxCoeff() == 0.0);

    // Hub coin at position 0 carries the block between coins 1 and 2.
    const Eigen::MatrixXcd &hub = steps[1].coins.matrices[0];
    CHECK(hub(1, 1) == Complex(hadamard_block()(0, 0)));
    CHECK(hub(1, 2) == Complex(hadamard_block()(0, 1)));
    CHECK(hub(2, 1) == Complex(hadamard_block()(1, 0)));
    CHECK(hub(2, 2) == Complex(hadamard_block()(1, 1)));
    CHECK(hub(0, 0) == Complex(1.0, 0.0));

    // Mirrored permutations, then a plain round to cancel the trailing step.
    for (int v = 0; v < 3; ++v) {
        CHECK((steps[2].coins.matrices[static_cast<size_t>(v)] - steps[0].coins.matrices[static_cast<size_t>(v)])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK((steps[3].coins.matrices[static_cast<size_t>(v)] - Eigen::MatrixXcd::Identity(3, 3))
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }

    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(9, 9);
    expected.topLeftCorner(9, 9) = network_mode_map(net);
    CHECK((walk_mode_unitary(compiled.graph, compiled.schedule) - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("network-to-walk: same-bundle splitters need no routing") {
    OpticalNetwork net(9);
    net.append(Beamsplitter{3, 5, hadamard_block()});  // modes (1,0) and (1,2)
    CompiledWalk compiled = compile_network_to_walk(net);
    REQUIRE(compiled.schedule.steps.size() == 2);
    const Eigen::MatrixXcd &coin = compiled.schedule.steps[0].coins.matrices[1];
    CHECK(coin(0, 0) == Complex(hadamard_block()(0, 0)));
    CHECK(coin(0, 2) == Complex(hadamard_block()(0, 1)));

    Eigen::MatrixXcd expected = network_mode_map(net);
    CHECK((walk_mode_unitary(compiled.graph, compiled.schedule) - expected).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("network-to-walk handles phases, controlled phases, and padding") {
    SUBCASE("phase element") {
        OpticalNetwork net(9);
        net.append(PhaseShift{5, 1.1});
        CompiledWalk compiled = compile_network_to_walk(net);
        CHECK(compiled.schedule.steps.size() == 2);
        Eigen::MatrixXcd expected = network_mode_map(net);
        CHECK((walk_mode_unitary(compiled.graph, compiled.schedule) - expected).cwiseAbs().maxCoeff() < 1e-9);
    }

    SUBCASE("controlled phase becomes a defect with identical two-boson behaviour") {
        OpticalNetwork net(9);
        net.append(Beamsplitter{4, 7, hadamard_block()});
        net.append(ControlledPhase{4, 7, kPi});
        CompiledWalk compiled = compile_network_to_walk(net);

        FockState in = FockState::basis_state(std::vector<ModeIndex>{4, 7}, 9);
        FockState via_net = apply_network(net, in);
        FockState via_walk = evolve(compiled.graph, in, compiled.schedule);
        CHECK(std::abs(inner_product(via_net, via_walk) - Complex(1.0, 0.0)) < 1e-10);
    }

    SUBCASE("non-square mode counts pad with untouched modes") {
        OpticalNetwork net(7);  // host graph has 3 vertices, 9 walk modes
        net.append(Beamsplitter{2, 6, hadamard_block()});
        CompiledWalk compiled = compile_network_to_walk(net);
        CHECK(compiled.graph.mode_count() == 9);
        Eigen::MatrixXcd walk_map = walk_mode_unitary(compiled.graph, compiled.schedule);
        Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(9, 9);
        expected.topLeftCorner(7, 7) = network_mode_map(net);
        CHECK((walk_map - expected).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("parallel batching shortens schedules without changing the map") {
    auto gen = testing::rng(2718);

    // Two routed splitters on disjoint vertex pairs share one round; the
    // third collides with the first and forces a new one.
    OpticalNetwork net(16);  // host graph: 4 vertices
    net.append(Beamsplitter{1, 6, testing::random_unitary(2, gen)});    // vertices {0, 1}
    net.append(Beamsplitter{8, 14, testing::random_unitary(2, gen)});   // vertices {2, 3}
    net.append(Beamsplitter{2, 11, testing::random_unitary(2, gen)});   // vertices {0, 2}

    CompiledWalk sequential = compile_network_to_walk(net);
    CompiledWalk batched = compile_network_to_walk(net, CompileOptions{true});
    CHECK(sequential.schedule.steps.size() == 12);
    CHECK(batched.schedule.steps.size() == 8);

    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(16, 16);
    expected.topLeftCorner(16, 16) = network_mode_map(net);
    CHECK((walk_mode_unitary(sequential.graph, sequential.schedule) - expected).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((walk_mode_unitary(batched.graph, batched.schedule) - expected).cwiseAbs().maxCoeff() < 1e-9);

    // Random networks agree between the two modes.
    for (int rep = 0; rep < 4; ++rep) {
        OpticalNetwork random_net = random_linear_network(9, 4 + rep, gen);
        CompiledWalk a = compile_network_to_walk(random_net);
        CompiledWalk b = compile_network_to_walk(random_net, CompileOptions{true});
        CHECK((walk_mode_unitary(a.graph, a.schedule) - walk_mode_unitary(b.graph, b.schedule))
                  .cwiseAbs()
                  .maxCoeff() < 1e-9);
    }
}

TEST_CASE("random networks survive the walk round trip") {
    auto gen = testing::rng(314);
    for (int rep = 0; rep < 6; ++rep) {
        OpticalNetwork net = random_linear_network(9, 1 + rep, gen);
        CompiledWalk compiled = compile_network_to_walk(net);
        OpticalNetwork back = compile_walk_to_network(compiled.graph, compiled.schedule);
        CHECK(back.mode_count() == 9);
        CHECK((network_mode_map(back) - network_mode_map(net)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("commutation: disjoint and diagonal pairs") {
    Element ph0 = PhaseShift{0, 1.3};
    Element bs12 = Beamsplitter{1, 2, hadamard_block()};
    CommutationResult disjoint = check_commutation(ph0, bs12);
    CHECK(disjoint.commutes);
    CHECK(disjoint.rule == RewriteRule::disjoint_support);
    CHECK(disjoint.deviation < 1e-10);

    Element cp01 = ControlledPhase{0, 1, kPi};
    Element ph1 = PhaseShift{1, 0.4};
    CommutationResult diag = check_commutation(cp01, ph1);
    CHECK(diag.commutes);
    CHECK(diag.rule == RewriteRule::diagonal);
}

TEST_CASE("commutation: pi phases on both splitter modes pass through") {
    std::vector<Element> phases{PhaseShift{0, kPi}, PhaseShift{1, kPi}};
    std::vector<Element> splitter{Beamsplitter{0, 1, hadamard_block()}};
    CommutationResult res = check_commutation(phases, splitter);
    CHECK(res.commutes);
    CHECK(res.rule == RewriteRule::phase_pair);
    CHECK(res.deviation < 1e-10);

    // A lone pi phase on one splitter mode does not commute.
    CommutationResult lone = check_commutation(Element{PhaseShift{0, kPi}}, splitter[0]);
    CHECK_FALSE(lone.commutes);
    CHECK(lone.deviation > 1e-3);
}

TEST_CASE("commutation: controlled pi pair with a shared control") {
    auto gen = testing::rng(8);
    std::vector<Element> pair{ControlledPhase{2, 0, kPi}, ControlledPhase{2, 1, kPi}};
    std::vector<Element> splitter{Beamsplitter{0, 1, testing::random_unitary(2, gen)}};
    CommutationResult res = check_commutation(pair, splitter);
    CHECK(res.commutes);
    CHECK(res.rule == RewriteRule::phase_pair);
    CHECK(res.deviation < 1e-10);
}

TEST_CASE("commutation: swaps relabel what crosses them") {
    SUBCASE("a swap after a beamsplitter conjugates the block") {
        Element swap = Beamsplitter{0, 1, swap_block()};
        Element splitter = Beamsplitter{0, 1, hadamard_block()};
        CommutationResult res = check_commutation(swap, splitter);
        CHECK(res.commutes);
        CHECK(res.rule == RewriteRule::swap_retarget);
        const auto &relabeled = std::get<Beamsplitter>(res.trail[0]);
        Eigen::Matrix2cd expected = swap_block() * hadamard_block() * swap_block();
        CHECK((relabeled.block - expected).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("a controlled phase crossing a swap retargets its mode") {
        Element cp = ControlledPhase{2, 0, kPi};
        Element swap = Beamsplitter{0, 1, swap_block()};
        CommutationResult res = check_commutation(cp, swap);
        CHECK(res.commutes);
        CHECK(res.rule == RewriteRule::swap_retarget);
        const auto &moved = std::get<ControlledPhase>(res.lead[0]);
        CHECK(moved.a == 1);
        CHECK(moved.b == 2);
    }
}

TEST_CASE("commutation: a straddling controlled phase is blocked with a witness") {
    Element cp = ControlledPhase{1, 2, kPi};
    Element right_splitter = Beamsplitter{2, 3, hadamard_block()};
    CommutationResult res = check_commutation(cp, right_splitter);
    CHECK_FALSE(res.commutes);
    CHECK(res.deviation >= 1e-3);

    std::vector<Element> too_wide{ControlledPhase{0, 1, kPi}, ControlledPhase{2, 3, kPi}};
    std::vector<Element> far{Beamsplitter{4, 5, hadamard_block()}};
    CHECK_THROWS_AS(check_commutation(too_wide, far), ValidationError);
}

TEST_CASE("hoisting a circuit without controlled phases is a no-op") {
    auto gen = testing::rng(15);
    OpticalNetwork net = random_linear_network(5, 4, gen);
    HoistResult res = hoist_cphases(net);
    CHECK(res.ok);
    CHECK(res.cphase_count == 0);
    CHECK(res.resource_prefix.size() == 0);
    CHECK(res.linear_suffix == net);
}

TEST_CASE("hoisting the two-splitter control circuit keeps both gates") {
    // Modes 0 and 1 are control wires; a trivial walk (swap steps) runs on
    // modes 2 and 3 with a controlled-pi after each swap.
    OpticalNetwork net(4);
    net.append(Beamsplitter{2, 3, swap_block()});
    net.append(ControlledPhase{0, 2, kPi});
    net.append(Beamsplitter{2, 3, swap_block()});
    net.append(ControlledPhase{1, 2, kPi});

    HoistResult res = hoist_cphases(net);
    REQUIRE(res.ok);
    CHECK(res.cphase_count == 2);
    CHECK(res.resource_prefix.size() == 2);
    CHECK(res.linear_suffix.size() == 2);
    for (const Element &e : res.resource_prefix.elements()) {
        CHECK(std::holds_alternative<ControlledPhase>(e));
    }

    // The rewritten circuit is the same operator.
    OpticalNetwork recombined(4);
    for (const Element &e : res.resource_prefix.elements()) {
        recombined.append(e);
    }
    for (const Element &e : res.linear_suffix.elements()) {
        recombined.append(e);
    }
    CHECK(network_gap(net, recombined) < 1e-10);
}

TEST_CASE("hoisting with generic splitters moves controlled-pi pairs") {
    auto gen = testing::rng(99);
    OpticalNetwork net(4);
    net.append(Beamsplitter{2, 3, testing::random_unitary(2, gen)});
    net.append(ControlledPhase{0, 2, kPi});
    net.append(ControlledPhase{0, 3, kPi});

    HoistResult res = hoist_cphases(net);
    REQUIRE(res.ok);
    CHECK(res.cphase_count == 2);

    OpticalNetwork recombined(4);
    for (const Element &e : res.resource_prefix.elements()) {
        recombined.append(e);
    }
    for (const Element &e : res.linear_suffix.elements()) {
        recombined.append(e);
    }
    CHECK(network_gap(net, recombined) < 1e-10);
}

TEST_CASE("hoisting preserves the total operator on six modes") {
    OpticalNetwork net(6);
    net.append(Beamsplitter{2, 3, swap_block()});
    net.append(ControlledPhase{0, 2, kPi});
    net.append(Beamsplitter{4, 5, swap_block()});
    net.append(ControlledPhase{1, 4, kPi});
    net.append(PhaseShift{3, 0.8});

    HoistResult res = hoist_cphases(net);
    REQUIRE(res.ok);
    CHECK(res.cphase_count == 2);

    OpticalNetwork recombined(6);
    for (const Element &e : res.resource_prefix.elements()) {
        recombined.append(e);
    }
    for (const Element &e : res.linear_suffix.elements()) {
        recombined.append(e);
    }
    CHECK(network_gap(net, recombined) < 1e-10);
}

TEST_CASE("hoisting the straddling circuit reports the blocked pair") {
    OpticalNetwork net(4);
    net.append(Beamsplitter{0, 1, hadamard_block()});
    net.append(Beamsplitter{2, 3, hadamard_block()});
    net.append(ControlledPhase{1, 2, kPi});

    HoistResult res = hoist_cphases(net);
    CHECK_FALSE(res.ok);
    REQUIRE(res.blocked_pair.has_value());
    CHECK(std::holds_alternative<ControlledPhase>(res.blocked_pair->first));
    CHECK(std::holds_alternative<Beamsplitter>(res.blocked_pair->second));
    CHECK(res.blocked_deviation >= 1e-3);
}

TEST_CASE("network serialization round-trips") {
    auto gen = testing::rng(500);
    OpticalNetwork net = random_linear_network(6, 5, gen);
    net.append(ControlledPhase{0, 3, 0.9});

    nlohmann::json j = network_to_json(net);
    OpticalNetwork parsed = network_from_json(j);
    CHECK(parsed == net);

    CHECK_THROWS_AS(network_from_json(nlohmann::json{{"schema", 99}}), ConfigError);
}

TEST_CASE("walk document serialization round-trips") {
    Graph g = Graph::line(4);
    std::vector<DefectOp> defects{CPhaseDefect{g.mode_index(1, 2), g.mode_index(2, 3), 0.4}};
    WalkSchedule schedule = repeat_schedule(hadamard_coins(g), 2, defects);
    WalkDocument doc{g, schedule, -1};

    nlohmann::json j = walk_document_to_json(doc);
    WalkDocument parsed = walk_document_from_json(j);
    CHECK(parsed.graph == g);
    REQUIRE(parsed.schedule.steps.size() == 2);
    CHECK(parsed.schedule.steps[0].defects.size() == 1);
    Eigen::MatrixXcd original_map = walk_mode_unitary(g, repeat_schedule(hadamard_coins(g), 2));
    WalkSchedule parsed_linear;
    for (const WalkStep &step : parsed.schedule.steps) {
        parsed_linear.steps.push_back(WalkStep{step.coins, {}});
    }
    CHECK((walk_mode_unitary(parsed.graph, parsed_linear) - original_map).cwiseAbs().maxCoeff() < 1e-12);
}
