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

#include "bosonwalk/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bosonwalk/errors.hpp"
#include "bosonwalk/optics.hpp"

namespace bosonwalk {

namespace {

using nlohmann::json;

constexpr double kCompileVerifyTolerance = 1e-9;
constexpr double kStateSpaceCap = 4e6;

const json &require_field(const json &j, const std::string &path, const std::string &key) {
    if (!j.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError(path + "/" + key, "missing required field");
    }
    return *it;
}

int as_int(const json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        throw ConfigError(path, "expected an integer");
    }
    return j.get<int>();
}

double as_double(const json &j, const std::string &path) {
    if (!j.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return j.get<double>();
}

std::string as_string(const json &j, const std::string &path) {
    if (!j.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return j.get<std::string>();
}

Mode mode_pair(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(path, "expected a [position, coin] pair");
    }
    return Mode{as_int(j[0], path + "/0"), as_int(j[1], path + "/1")};
}

InitialSpec initial_from_json(const json &j, const std::string &path) {
    InitialSpec spec;
    if (!j.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    if (j.contains("terms")) {
        const json &terms = j["terms"];
        if (!terms.is_array() || terms.empty()) {
            throw ConfigError(path + "/terms", "expected a non-empty array");
        }
        for (size_t k = 0; k < terms.size(); ++k) {
            std::string term_path = path + "/terms/" + std::to_string(k);
            const json &term = terms[k];
            InitialTermSpec t;
            const json &modes = require_field(term, term_path, "modes");
            if (!modes.is_array() || modes.empty()) {
                throw ConfigError(term_path + "/modes", "expected a non-empty array of [position, coin] pairs");
            }
            for (size_t m = 0; m < modes.size(); ++m) {
                t.modes.push_back(mode_pair(modes[m], term_path + "/modes/" + std::to_string(m)));
            }
            if (term.contains("amplitude")) {
                t.amplitude = complex_from_json(term["amplitude"], term_path + "/amplitude");
            }
            spec.terms.push_back(std::move(t));
        }
    } else if (j.contains("positions")) {
        const json &positions = j["positions"];
        if (!positions.is_array() || positions.empty()) {
            throw ConfigError(path + "/positions", "expected a non-empty vertex list");
        }
        for (size_t k = 0; k < positions.size(); ++k) {
            spec.positions.push_back(as_int(positions[k], path + "/positions/" + std::to_string(k)));
        }
        if (j.contains("coin")) {
            spec.coin = as_string(j["coin"], path + "/coin");
            if (spec.coin != "symmetric" && spec.coin != "left" && spec.coin != "right") {
                throw ConfigError(path + "/coin", "expected symmetric, left, or right");
            }
        }
    } else {
        throw ConfigError(path, "initial state needs either positions or terms");
    }
    return spec;
}

json initial_to_json(const InitialSpec &spec) {
    json j;
    if (!spec.terms.empty()) {
        json terms = json::array();
        for (const InitialTermSpec &t : spec.terms) {
            json term;
            json modes = json::array();
            for (const Mode &m : t.modes) {
                modes.push_back(json::array({m.position, m.coin}));
            }
            term["modes"] = std::move(modes);
            term["amplitude"] = complex_to_json(t.amplitude);
            terms.push_back(std::move(term));
        }
        j["terms"] = std::move(terms);
    } else {
        j["positions"] = spec.positions;
        j["coin"] = spec.coin;
    }
    return j;
}

CoinSpec coin_from_json(const json &j, const std::string &path, bool allow_per_step = true) {
    CoinSpec spec;
    if (!j.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    if (j.contains("preset")) {
        spec.preset = as_string(j["preset"], path + "/preset");
        if (spec.preset != "hadamard" && spec.preset != "identity" && spec.preset != "dft") {
            throw ConfigError(path + "/preset", "unknown preset '" + spec.preset + "' (hadamard, identity, dft)");
        }
    } else if (j.contains("matrices")) {
        const json &matrices = j["matrices"];
        if (!matrices.is_array()) {
            throw ConfigError(path + "/matrices", "expected one matrix per vertex");
        }
        for (size_t v = 0; v < matrices.size(); ++v) {
            spec.matrices.push_back(matrix_from_json(matrices[v], path + "/matrices/" + std::to_string(v)));
        }
    } else if (j.contains("per_step")) {
        if (!allow_per_step) {
            throw ConfigError(path + "/per_step", "per-step coin lists cannot nest");
        }
        const json &per_step = j["per_step"];
        if (!per_step.is_array() || per_step.empty()) {
            throw ConfigError(path + "/per_step", "expected a non-empty array of coin specs");
        }
        for (size_t t = 0; t < per_step.size(); ++t) {
            spec.per_step.push_back(coin_from_json(per_step[t], path + "/per_step/" + std::to_string(t), false));
        }
    } else {
        throw ConfigError(path, "coin needs a preset, matrices, or per_step");
    }
    return spec;
}

json coin_to_json(const CoinSpec &spec) {
    json j;
    if (!spec.per_step.empty()) {
        json per_step = json::array();
        for (const CoinSpec &s : spec.per_step) {
            per_step.push_back(coin_to_json(s));
        }
        j["per_step"] = std::move(per_step);
    } else if (!spec.preset.empty()) {
        j["preset"] = spec.preset;
    } else {
        json matrices = json::array();
        for (const Eigen::MatrixXcd &m : spec.matrices) {
            matrices.push_back(matrix_to_json(m));
        }
        j["matrices"] = std::move(matrices);
    }
    return j;
}

DefectSpec defect_spec_from_json(const json &j, const std::string &path) {
    std::string kind = as_string(require_field(j, path, "kind"), path + "/kind");
    if (kind == "cphase") {
        const json &modes = require_field(j, path, "modes");
        if (!modes.is_array() || modes.size() != 2) {
            throw ConfigError(path + "/modes", "expected two [position, coin] pairs");
        }
        return CPhaseSpec{
            mode_pair(modes[0], path + "/modes/0"), mode_pair(modes[1], path + "/modes/1"),
            as_double(require_field(j, path, "phase"), path + "/phase")};
    }
    if (kind == "position-phase") {
        const json &positions = require_field(j, path, "positions");
        if (!positions.is_array() || positions.empty()) {
            throw ConfigError(path + "/positions", "expected a non-empty vertex list");
        }
        PositionPhaseSpec spec;
        for (size_t k = 0; k < positions.size(); ++k) {
            spec.positions.push_back(as_int(positions[k], path + "/positions/" + std::to_string(k)));
        }
        std::sort(spec.positions.begin(), spec.positions.end());
        spec.phase = as_double(require_field(j, path, "phase"), path + "/phase");
        return spec;
    }
    if (kind == "kerr") {
        return KerrSpec{
            as_int(require_field(j, path, "position"), path + "/position"),
            as_double(require_field(j, path, "coefficient"), path + "/coefficient")};
    }
    throw ConfigError(path + "/kind", "unknown defect kind '" + kind + "'");
}

json defect_spec_to_json(const DefectSpec &spec) {
    json j;
    if (const auto *cp = std::get_if<CPhaseSpec>(&spec)) {
        j["kind"] = "cphase";
        j["modes"] = json::array(
            {json::array({cp->m1.position, cp->m1.coin}), json::array({cp->m2.position, cp->m2.coin})});
        j["phase"] = cp->phase;
    } else if (const auto *pp = std::get_if<PositionPhaseSpec>(&spec)) {
        j["kind"] = "position-phase";
        j["positions"] = pp->positions;
        j["phase"] = pp->phase;
    } else {
        const auto &kerr = std::get<KerrSpec>(spec);
        j["kind"] = "kerr";
        j["position"] = kerr.position;
        j["coefficient"] = kerr.coefficient;
    }
    return j;
}

const char *output_kind_name(OutputKind kind) {
    switch (kind) {
        case OutputKind::position:
            return "position";
        case OutputKind::coincidence:
            return "coincidence";
        case OutputKind::spread:
            return "spread";
        case OutputKind::virtual_compare:
            return "virtual-compare";
    }
    return "unknown";
}

OutputKind output_kind_from_string(const std::string &name, const std::string &path) {
    if (name == "position") {
        return OutputKind::position;
    }
    if (name == "coincidence") {
        return OutputKind::coincidence;
    }
    if (name == "spread") {
        return OutputKind::spread;
    }
    if (name == "virtual-compare") {
        return OutputKind::virtual_compare;
    }
    throw ConfigError(path, "unknown output kind '" + name + "'");
}

// Per-walker coin vector for the named initial coin.
Eigen::VectorXcd named_coin(const std::string &name, int degree) {
    if (name == "symmetric") {
        return symmetric_coin(degree);
    }
    Eigen::VectorXcd coin = Eigen::VectorXcd::Zero(degree);
    coin(name == "left" ? 0 : degree - 1) = Complex(1.0, 0.0);
    return coin;
}

FockState build_initial_state(const Graph &g, const RunConfig &config) {
    const InitialSpec &spec = config.initial;
    if (!spec.terms.empty()) {
        std::vector<std::pair<Occupation, Complex>> terms;
        for (size_t k = 0; k < spec.terms.size(); ++k) {
            const InitialTermSpec &t = spec.terms[k];
            if (static_cast<int>(t.modes.size()) != config.walkers) {
                throw ConfigError(
                    "/initial/terms/" + std::to_string(k) + "/modes",
                    "term has " + std::to_string(t.modes.size()) + " modes, expected one per walker (" +
                        std::to_string(config.walkers) + ")");
            }
            std::vector<ModeIndex> indices;
            for (const Mode &m : t.modes) {
                try {
                    indices.push_back(g.mode_index(m));
                } catch (const LookupError &err) {
                    throw ConfigError("/initial/terms/" + std::to_string(k) + "/modes", err.what());
                }
            }
            terms.emplace_back(Occupation::from_modes(indices, g.mode_count()), t.amplitude);
        }
        return FockState::from_terms(g.mode_count(), terms, true);
    }
    if (static_cast<int>(spec.positions.size()) != config.walkers) {
        throw ConfigError(
            "/initial/positions", "expected one position per walker (" + std::to_string(config.walkers) + ")");
    }
    std::vector<WalkerWavelet> walkers;
    for (size_t k = 0; k < spec.positions.size(); ++k) {
        VertexId x = spec.positions[k];
        if (!g.has_vertex(x)) {
            throw ConfigError("/initial/positions/" + std::to_string(k), "vertex " + std::to_string(x) + " is out of range");
        }
        if (g.degree(x) == 0) {
            throw ConfigError("/initial/positions/" + std::to_string(k), "vertex " + std::to_string(x) + " has no modes");
        }
        walkers.push_back(WalkerWavelet{x, named_coin(spec.coin, g.degree(x))});
    }
    return product_state(g, walkers);
}

CoinAssignment resolve_single_coin(const Graph &g, const CoinSpec &spec, const std::string &path) {
    try {
        if (spec.preset == "hadamard") {
            return hadamard_coins(g);
        }
        if (spec.preset == "identity") {
            return identity_coins(g);
        }
        if (spec.preset == "dft") {
            return dft_coins(g);
        }
        CoinAssignment coins{spec.matrices};
        validate_coins(g, coins);
        return coins;
    } catch (const ValidationError &err) {
        throw ConfigError(path, err.what());
    }
}

std::vector<CoinAssignment> resolve_coins(const Graph &g, const RunConfig &config) {
    std::vector<CoinAssignment> result;
    if (!config.coin.per_step.empty()) {
        if (static_cast<int>(config.coin.per_step.size()) != config.steps) {
            throw ConfigError(
                "/coin/per_step", "expected " + std::to_string(config.steps) + " entries, got " +
                                      std::to_string(config.coin.per_step.size()));
        }
        for (size_t t = 0; t < config.coin.per_step.size(); ++t) {
            result.push_back(
                resolve_single_coin(g, config.coin.per_step[t], "/coin/per_step/" + std::to_string(t)));
        }
    } else {
        CoinAssignment coins = resolve_single_coin(g, config.coin, "/coin");
        result.assign(static_cast<size_t>(config.steps), coins);
    }
    return result;
}

std::vector<DefectOp> resolve_defects(const Graph &g, const RunConfig &config) {
    std::vector<DefectOp> ops;
    for (size_t k = 0; k < config.defects.size(); ++k) {
        std::string path = "/defects/" + std::to_string(k);
        const DefectSpec &spec = config.defects[k];
        if (const auto *cp = std::get_if<CPhaseSpec>(&spec)) {
            try {
                ops.push_back(CPhaseDefect{g.mode_index(cp->m1), g.mode_index(cp->m2), cp->phase});
            } catch (const LookupError &err) {
                throw ConfigError(path + "/modes", err.what());
            }
        } else if (const auto *pp = std::get_if<PositionPhaseSpec>(&spec)) {
            if (static_cast<int>(pp->positions.size()) != config.walkers) {
                throw ConfigError(
                    path + "/positions",
                    "position-phase arity " + std::to_string(pp->positions.size()) + " does not match walkers (" +
                        std::to_string(config.walkers) + ")");
            }
            for (VertexId x : pp->positions) {
                if (!g.has_vertex(x)) {
                    throw ConfigError(path + "/positions", "vertex " + std::to_string(x) + " is out of range");
                }
            }
            ops.push_back(PositionPhaseDefect{pp->positions, pp->phase});
        } else {
            const auto &kerr = std::get<KerrSpec>(spec);
            if (!g.has_vertex(kerr.position)) {
                throw ConfigError(path + "/position", "vertex " + std::to_string(kerr.position) + " is out of range");
            }
            ops.push_back(KerrDefect{kerr.position, kerr.coefficient});
        }
    }
    return ops;
}

// Defect phases accumulated per virtual vertex; controlled-phase defects are
// coin-resolved and have no virtual-side counterpart.
DefectPattern virtual_pattern(const VirtualGraph &vg, const RunConfig &config) {
    std::map<PosMultiset, double> entries;
    for (size_t k = 0; k < config.defects.size(); ++k) {
        const DefectSpec &spec = config.defects[k];
        if (std::holds_alternative<CPhaseSpec>(spec)) {
            throw ConfigError(
                "/defects/" + std::to_string(k),
                "coin-resolved cphase defects cannot be compared on the virtual graph");
        }
        if (const auto *pp = std::get_if<PositionPhaseSpec>(&spec)) {
            PosMultiset key = canonical_multiset(pp->positions);
            entries[key] += pp->phase;
        } else {
            const auto &kerr = std::get<KerrSpec>(spec);
            for (const PosMultiset &vertex : vg.vertices()) {
                int d = static_cast<int>(std::count(vertex.begin(), vertex.end(), kerr.position));
                if (d >= 2) {
                    entries[vertex] += kerr.coefficient * d * (d - 1) / 2.0;
                }
            }
        }
    }
    std::erase_if(entries, [](const auto &entry) { return entry.second == 0.0; });
    return DefectPattern(std::move(entries));
}

VirtualWalkInput virtual_input(const Graph &g, const RunConfig &config) {
    VirtualWalkInput input;
    if (!config.initial.terms.empty()) {
        PosMultiset vertex;
        for (const Mode &m : config.initial.terms[0].modes) {
            vertex.push_back(m.position);
        }
        input.vertex = canonical_multiset(vertex);
        for (const InitialTermSpec &t : config.initial.terms) {
            input.coin_terms.emplace_back(t.modes, t.amplitude);
        }
        return input;
    }
    input.vertex = canonical_multiset(config.initial.positions);
    if (config.initial.coin != "symmetric") {
        std::vector<Mode> modes;
        for (VertexId x : input.vertex) {
            const auto &nbrs = g.neighbors(x);
            modes.push_back(Mode{x, config.initial.coin == "left" ? nbrs.front() : nbrs.back()});
        }
        input.coin_terms.emplace_back(std::move(modes), Complex(1.0, 0.0));
    }
    return input;
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

double binomial_estimate(int m, int n) {
    double value = 1.0;
    for (int k = 1; k <= n; ++k) {
        value *= static_cast<double>(m + k - 1) / k;
        if (value > 1e18) {
            break;
        }
    }
    return value;
}

}  // namespace

RunConfig run_config_from_json(const json &j) {
    RunConfig config;
    const std::string root;
    config.schema = as_int(require_field(j, root, "schema"), "/schema");
    if (config.schema != kSchemaVersion) {
        throw ConfigError("/schema", "unsupported schema version " + std::to_string(config.schema));
    }
    config.graph = graph_spec_from_json(require_field(j, root, "graph"), "/graph");
    config.walkers = as_int(require_field(j, root, "walkers"), "/walkers");
    config.steps = as_int(require_field(j, root, "steps"), "/steps");
    if (config.steps < 0) {
        throw ConfigError("/steps", "step count must be non-negative");
    }
    config.initial = initial_from_json(require_field(j, root, "initial"), "/initial");
    config.coin = coin_from_json(require_field(j, root, "coin"), "/coin");
    if (j.contains("defects")) {
        const json &defects = j["defects"];
        if (!defects.is_array()) {
            throw ConfigError("/defects", "expected an array");
        }
        for (size_t k = 0; k < defects.size(); ++k) {
            config.defects.push_back(defect_spec_from_json(defects[k], "/defects/" + std::to_string(k)));
        }
    }
    const json &outputs = require_field(j, root, "outputs");
    if (!outputs.is_array()) {
        throw ConfigError("/outputs", "expected an array of output kinds");
    }
    for (size_t k = 0; k < outputs.size(); ++k) {
        std::string path = "/outputs/" + std::to_string(k);
        config.outputs.push_back(output_kind_from_string(as_string(outputs[k], path), path));
    }
    if (j.contains("defect_timing")) {
        std::string timing = as_string(j["defect_timing"], "/defect_timing");
        if (timing == "post-step") {
            config.timing = DefectTiming::post_step;
        } else if (timing == "pre-coin") {
            config.timing = DefectTiming::pre_coin;
        } else {
            throw ConfigError("/defect_timing", "expected post-step or pre-coin");
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
            throw ConfigError("/seed", "expected an integer");
        }
        config.seed = j["seed"].get<uint64_t>();
    }
    return config;
}

nlohmann::json run_config_to_json(const RunConfig &config) {
    json j;
    j["schema"] = config.schema;
    j["graph"] = graph_spec_to_json(config.graph);
    j["walkers"] = config.walkers;
    j["steps"] = config.steps;
    j["initial"] = initial_to_json(config.initial);
    j["coin"] = coin_to_json(config.coin);
    if (!config.defects.empty()) {
        json defects = json::array();
        for (const DefectSpec &spec : config.defects) {
            defects.push_back(defect_spec_to_json(spec));
        }
        j["defects"] = std::move(defects);
    }
    json outputs = json::array();
    for (OutputKind kind : config.outputs) {
        outputs.push_back(output_kind_name(kind));
    }
    j["outputs"] = std::move(outputs);
    j["defect_timing"] = config.timing == DefectTiming::post_step ? "post-step" : "pre-coin";
    j["seed"] = config.seed;
    return j;
}

RunReport run(const RunConfig &config, const std::filesystem::path &out_dir, int max_walkers) {
    if (max_walkers > kMaxWalkers) {
        throw CapError(
            "max-walkers " + std::to_string(max_walkers) + " exceeds the hard ceiling of " +
            std::to_string(kMaxWalkers));
    }

    Graph g = build_graph(config.graph);

    // Resource caps come before any state is built.
    if (config.walkers < 1) {
        throw ConfigError("/walkers", "need at least one walker");
    }
    if (config.walkers > max_walkers) {
        throw CapError(
            "walker number " + std::to_string(config.walkers) + " exceeds the cap of " + std::to_string(max_walkers));
    }
    if (binomial_estimate(g.mode_count(), config.walkers) > kStateSpaceCap) {
        throw CapError("state-space estimate exceeds the desk-scale budget");
    }
    bool needs_pairs = false;
    for (OutputKind kind : config.outputs) {
        needs_pairs |= kind == OutputKind::coincidence || kind == OutputKind::virtual_compare;
        if (kind == OutputKind::spread && config.graph.preset != "line") {
            throw ConfigError("/outputs", "spread output requires a line graph");
        }
    }
    if (needs_pairs && config.walkers < 2) {
        throw ConfigError("/outputs", "coincidence and virtual-compare outputs need at least two walkers");
    }

    FockState initial = build_initial_state(g, config);
    std::vector<CoinAssignment> coins = resolve_coins(g, config);
    std::vector<DefectOp> defects = resolve_defects(g, config);

    WalkSchedule schedule;
    schedule.timing = config.timing;
    for (int t = 0; t < config.steps; ++t) {
        schedule.steps.push_back(WalkStep{coins[static_cast<size_t>(t)], defects});
    }

    FockState final_state = evolve(g, initial, schedule);

    std::filesystem::create_directories(out_dir);
    RunReport report;
    json summary;
    summary["schema"] = kSchemaVersion;
    summary["walkers"] = config.walkers;
    summary["steps"] = config.steps;
    summary["seed"] = config.seed;
    summary["final_norm"] = final_state.norm();

    auto emit = [&](const std::string &name, const std::string &text) {
        write_text_file(out_dir / name, text);
        report.files.push_back(name);
    };

    for (OutputKind kind : config.outputs) {
        if (kind == OutputKind::position) {
            std::map<VertexId, double> dist = position_distribution(g, final_state);
            std::ostringstream csv;
            csv << "position,probability\n";
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                auto it = dist.find(v);
                csv << v << "," << format_double(it == dist.end() ? 0.0 : it->second) << "\n";
            }
            emit("position.csv", csv.str());
        } else if (kind == OutputKind::coincidence) {
            std::map<PosMultiset, double> dist = coincidence_distribution(g, final_state);
            std::ostringstream csv;
            for (int k = 1; k <= config.walkers; ++k) {
                csv << "x" << k << ",";
            }
            csv << "probability\n";
            for (const auto &[key, p] : dist) {
                for (VertexId x : key) {
                    csv << x << ",";
                }
                csv << format_double(p) << "\n";
            }
            emit("coincidence.csv", csv.str());
        } else if (kind == OutputKind::spread) {
            std::map<VertexId, double> dist = position_distribution(g, final_state);
            double origin = spread_statistics(position_distribution(g, initial), 0.0).mean;
            SpreadStats stats = spread_statistics(dist, origin);
            json s;
            s["origin"] = origin;
            s["mean"] = stats.mean;
            s["stddev"] = stats.stddev;
            s["steps"] = config.steps;
            if (config.steps > 0) {
                s["sigma_over_t"] = stats.stddev / config.steps;
            }
            save_json_file(out_dir / "spread.json", s);
            report.files.push_back("spread.json");
        } else {
            // virtual-compare: rerun as a single walker on the virtual graph
            // and report the distance to the coincidence distribution.
            VirtualGraph vg(g, config.walkers);
            DefectPattern pattern = virtual_pattern(vg, config);
            if (!config.coin.per_step.empty()) {
                throw ConfigError("/coin/per_step", "virtual-compare supports only time-independent coins");
            }
            std::map<PosMultiset, double> virtual_dist = simulate_virtual(
                vg, pattern, virtual_input(g, config), coins.empty() ? resolve_single_coin(g, config.coin, "/coin") : coins[0],
                config.steps, config.timing);
            std::map<PosMultiset, double> fock_dist = coincidence_distribution(g, final_state);

            double l1 = 0.0;
            double max_abs = 0.0;
            std::set<PosMultiset> keys;
            for (const auto &[key, p] : virtual_dist) {
                keys.insert(key);
            }
            for (const auto &[key, p] : fock_dist) {
                keys.insert(key);
            }
            for (const PosMultiset &key : keys) {
                auto a = virtual_dist.find(key);
                auto b = fock_dist.find(key);
                double pa = a == virtual_dist.end() ? 0.0 : a->second;
                double pb = b == fock_dist.end() ? 0.0 : b->second;
                l1 += std::abs(pa - pb);
                max_abs = std::max(max_abs, std::abs(pa - pb));
            }

            std::ostringstream csv;
            for (int k = 1; k <= config.walkers; ++k) {
                csv << "x" << k << ",";
            }
            csv << "probability\n";
            for (const auto &[key, p] : virtual_dist) {
                for (VertexId x : key) {
                    csv << x << ",";
                }
                csv << format_double(p) << "\n";
            }
            emit("virtual.csv", csv.str());

            json cmp;
            cmp["l1_distance"] = l1;
            cmp["max_abs_difference"] = max_abs;
            save_json_file(out_dir / "virtual_compare.json", cmp);
            report.files.push_back("virtual_compare.json");
        }
    }

    summary["files"] = report.files;
    save_json_file(out_dir / "run_report.json", summary);
    report.files.push_back("run_report.json");
    report.summary = std::move(summary);
    return report;
}

namespace {

OpticalNetwork strip_controlled_phases(const OpticalNetwork &net) {
    OpticalNetwork linear(net.mode_count());
    for (const Element &element : net.elements()) {
        if (is_linear(element)) {
            linear.append(element);
        }
    }
    return linear;
}

WalkSchedule strip_defects(const WalkSchedule &schedule) {
    WalkSchedule linear;
    linear.timing = schedule.timing;
    for (const WalkStep &step : schedule.steps) {
        linear.steps.push_back(WalkStep{step.coins, {}});
    }
    return linear;
}

}  // namespace

CompileReport compile_walk_to_net_file(const std::filesystem::path &in, const std::filesystem::path &out) {
    WalkDocument doc = walk_document_from_json(load_json_file(in));
    OpticalNetwork net = compile_walk_to_network(doc.graph, doc.schedule);

    Eigen::MatrixXcd walk_map = walk_mode_unitary(doc.graph, strip_defects(doc.schedule));
    Eigen::MatrixXcd net_map = network_mode_map(strip_controlled_phases(net));
    double distance = (walk_map - net_map).cwiseAbs().maxCoeff();

    save_json_file(out, network_to_json(net));
    std::filesystem::path report_path = out;
    report_path.replace_extension(".report.json");
    json report;
    report["schema"] = kSchemaVersion;
    report["direction"] = "walk-to-net";
    report["modes"] = net.mode_count();
    report["elements"] = net.size();
    report["cphase_elements"] = net.cphase_count();
    report["mode_map_distance"] = distance;
    save_json_file(report_path, report);

    return CompileReport{distance, distance <= kCompileVerifyTolerance, out.string(), report_path.string()};
}

CompileReport compile_net_to_walk_file(const std::filesystem::path &in, const std::filesystem::path &out) {
    OpticalNetwork net = network_from_json(load_json_file(in));
    CompiledWalk compiled = compile_network_to_walk(net);

    Eigen::MatrixXcd walk_map = walk_mode_unitary(compiled.graph, strip_defects(compiled.schedule));
    Eigen::MatrixXcd expected =
        Eigen::MatrixXcd::Identity(compiled.graph.mode_count(), compiled.graph.mode_count());
    expected.topLeftCorner(net.mode_count(), net.mode_count()) = network_mode_map(strip_controlled_phases(net));
    double distance = (walk_map - expected).cwiseAbs().maxCoeff();

    WalkDocument doc{compiled.graph, compiled.schedule, compiled.embedded_modes};
    save_json_file(out, walk_document_to_json(doc));
    std::filesystem::path report_path = out;
    report_path.replace_extension(".report.json");
    json report;
    report["schema"] = kSchemaVersion;
    report["direction"] = "net-to-walk";
    report["vertices"] = compiled.graph.vertex_count();
    report["walk_modes"] = compiled.graph.mode_count();
    report["embedded_modes"] = compiled.embedded_modes;
    report["schedule_steps"] = compiled.schedule.steps.size();
    report["mode_map_distance"] = distance;
    save_json_file(report_path, report);

    return CompileReport{distance, distance <= kCompileVerifyTolerance, out.string(), report_path.string()};
}

}  // namespace bosonwalk
