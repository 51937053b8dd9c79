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

#include "bosonwalk/serial.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bosonwalk/errors.hpp"

namespace bosonwalk {

namespace {

using nlohmann::json;

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

Mode mode_pair_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(path, "expected a [position, coin] pair");
    }
    return Mode{as_int(j[0], path + "/0"), as_int(j[1], path + "/1")};
}

}  // namespace

Graph build_graph(const GraphSpec &spec) {
    if (spec.preset == "line") {
        return Graph::line(spec.size);
    }
    if (spec.preset == "cycle") {
        return Graph::cycle(spec.size);
    }
    if (spec.preset == "complete-with-loops") {
        return Graph::complete_with_loops(spec.size);
    }
    if (spec.preset.empty()) {
        return Graph::from_edges(spec.vertices, spec.edges);
    }
    throw ValidationError("unknown graph preset '" + spec.preset + "'");
}

GraphSpec graph_spec_from_json(const json &j, const std::string &path) {
    GraphSpec spec;
    if (!j.is_object()) {
        throw ConfigError(path, "expected an object");
    }
    if (j.contains("preset")) {
        spec.preset = as_string(j["preset"], path + "/preset");
        spec.size = as_int(require_field(j, path, "size"), path + "/size");
        if (spec.preset != "line" && spec.preset != "cycle" && spec.preset != "complete-with-loops") {
            throw ConfigError(path + "/preset", "unknown preset '" + spec.preset + "' (line, cycle, complete-with-loops)");
        }
    } else if (j.contains("edges")) {
        spec.vertices = as_int(require_field(j, path, "vertices"), path + "/vertices");
        const json &edges = j["edges"];
        if (!edges.is_array()) {
            throw ConfigError(path + "/edges", "expected an array of [a, b] pairs");
        }
        for (size_t k = 0; k < edges.size(); ++k) {
            std::string edge_path = path + "/edges/" + std::to_string(k);
            if (!edges[k].is_array() || edges[k].size() != 2) {
                throw ConfigError(edge_path, "expected an [a, b] pair");
            }
            spec.edges.emplace_back(as_int(edges[k][0], edge_path + "/0"), as_int(edges[k][1], edge_path + "/1"));
        }
    } else {
        throw ConfigError(path, "graph needs either a preset or an edge list");
    }
    return spec;
}

nlohmann::json graph_spec_to_json(const GraphSpec &spec) {
    json j;
    if (!spec.preset.empty()) {
        j["preset"] = spec.preset;
        j["size"] = spec.size;
    } else {
        j["vertices"] = spec.vertices;
        j["edges"] = json::array();
        for (const auto &[a, b] : spec.edges) {
            j["edges"].push_back({a, b});
        }
    }
    return j;
}

nlohmann::json complex_to_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) {
        throw ConfigError(path, "expected a [re, im] pair");
    }
    return Complex(as_double(j[0], path + "/0"), as_double(j[1], path + "/1"));
}

nlohmann::json matrix_to_json(const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json &j, const std::string &path) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError(path, "expected a non-empty array of matrix rows");
    }
    const size_t rows = j.size();
    Eigen::MatrixXcd m(rows, rows);
    for (size_t r = 0; r < rows; ++r) {
        const json &row = j[r];
        std::string row_path = path + "/" + std::to_string(r);
        if (!row.is_array() || row.size() != rows) {
            throw ConfigError(row_path, "expected a square matrix row of " + std::to_string(rows) + " entries");
        }
        for (size_t c = 0; c < rows; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(row[c], row_path + "/" + std::to_string(c));
        }
    }
    return m;
}

nlohmann::json network_to_json(const OpticalNetwork &net) {
    json j;
    j["schema"] = kSchemaVersion;
    j["modes"] = net.mode_count();
    json elements = json::array();
    for (const Element &element : net.elements()) {
        json e;
        if (const auto *bs = std::get_if<Beamsplitter>(&element)) {
            json block = json::array();
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    block.push_back(complex_to_json(bs->block(r, c)));
                }
            }
            e["bs"] = json::array({bs->a, bs->b, block});
        } else if (const auto *ph = std::get_if<PhaseShift>(&element)) {
            e["ph"] = json::array({ph->mode, ph->theta});
        } else {
            const auto &cp = std::get<ControlledPhase>(element);
            e["cp"] = json::array({cp.a, cp.b, cp.theta});
        }
        elements.push_back(std::move(e));
    }
    j["elements"] = std::move(elements);
    return j;
}

OpticalNetwork network_from_json(const json &j) {
    const std::string root;
    int schema = as_int(require_field(j, root, "schema"), "/schema");
    if (schema != kSchemaVersion) {
        throw ConfigError("/schema", "unsupported schema version " + std::to_string(schema));
    }
    int modes = as_int(require_field(j, root, "modes"), "/modes");
    OpticalNetwork net(modes);
    const json &elements = require_field(j, root, "elements");
    if (!elements.is_array()) {
        throw ConfigError("/elements", "expected an array");
    }
    for (size_t k = 0; k < elements.size(); ++k) {
        const json &e = elements[k];
        std::string path = "/elements/" + std::to_string(k);
        if (!e.is_object() || e.size() != 1) {
            throw ConfigError(path, "expected exactly one of bs, ph, cp");
        }
        try {
            if (e.contains("bs")) {
                const json &args = e["bs"];
                if (!args.is_array() || args.size() != 3 || !args[2].is_array() || args[2].size() != 4) {
                    throw ConfigError(path + "/bs", "expected [i, j, [4 complex entries row-major]]");
                }
                Eigen::Matrix2cd block;
                for (int r = 0; r < 2; ++r) {
                    for (int c = 0; c < 2; ++c) {
                        block(r, c) = complex_from_json(
                            args[2][static_cast<size_t>(2 * r + c)],
                            path + "/bs/2/" + std::to_string(2 * r + c));
                    }
                }
                net.append(Beamsplitter{as_int(args[0], path + "/bs/0"), as_int(args[1], path + "/bs/1"), block});
            } else if (e.contains("ph")) {
                const json &args = e["ph"];
                if (!args.is_array() || args.size() != 2) {
                    throw ConfigError(path + "/ph", "expected [mode, theta]");
                }
                net.append(PhaseShift{as_int(args[0], path + "/ph/0"), as_double(args[1], path + "/ph/1")});
            } else if (e.contains("cp")) {
                const json &args = e["cp"];
                if (!args.is_array() || args.size() != 3) {
                    throw ConfigError(path + "/cp", "expected [i, j, theta]");
                }
                net.append(ControlledPhase{
                    as_int(args[0], path + "/cp/0"), as_int(args[1], path + "/cp/1"), as_double(args[2], path + "/cp/2")});
            } else {
                throw ConfigError(path, "unknown element kind");
            }
        } catch (const ValidationError &err) {
            throw ConfigError(path, err.what());
        }
    }
    return net;
}

nlohmann::json defect_to_json(const Graph &g, const DefectOp &defect) {
    json j;
    if (const auto *cp = std::get_if<CPhaseDefect>(&defect)) {
        Mode m1 = g.mode_at(cp->a);
        Mode m2 = g.mode_at(cp->b);
        j["kind"] = "cphase";
        j["modes"] = json::array({json::array({m1.position, m1.coin}), json::array({m2.position, m2.coin})});
        j["phase"] = cp->phase;
    } else if (const auto *pp = std::get_if<PositionPhaseDefect>(&defect)) {
        j["kind"] = "position-phase";
        j["positions"] = pp->positions;
        j["phase"] = pp->phase;
    } else {
        const auto &kerr = std::get<KerrDefect>(defect);
        j["kind"] = "kerr";
        j["position"] = kerr.position;
        j["coefficient"] = kerr.coefficient;
    }
    return j;
}

DefectOp defect_from_json(const Graph &g, const json &j, const std::string &path) {
    std::string kind = as_string(require_field(j, path, "kind"), path + "/kind");
    try {
        if (kind == "cphase") {
            const json &modes = require_field(j, path, "modes");
            if (!modes.is_array() || modes.size() != 2) {
                throw ConfigError(path + "/modes", "expected two [position, coin] pairs");
            }
            Mode m1 = mode_pair_from_json(modes[0], path + "/modes/0");
            Mode m2 = mode_pair_from_json(modes[1], path + "/modes/1");
            double phase = as_double(require_field(j, path, "phase"), path + "/phase");
            return CPhaseDefect{g.mode_index(m1), g.mode_index(m2), phase};
        }
        if (kind == "position-phase") {
            const json &positions = require_field(j, path, "positions");
            if (!positions.is_array() || positions.empty()) {
                throw ConfigError(path + "/positions", "expected a non-empty vertex list");
            }
            PosMultiset p;
            for (size_t k = 0; k < positions.size(); ++k) {
                p.push_back(as_int(positions[k], path + "/positions/" + std::to_string(k)));
            }
            std::sort(p.begin(), p.end());
            double phase = as_double(require_field(j, path, "phase"), path + "/phase");
            return PositionPhaseDefect{std::move(p), phase};
        }
        if (kind == "kerr") {
            VertexId position = as_int(require_field(j, path, "position"), path + "/position");
            double coefficient = as_double(require_field(j, path, "coefficient"), path + "/coefficient");
            return KerrDefect{position, coefficient};
        }
    } catch (const LookupError &err) {
        throw ConfigError(path, err.what());
    }
    throw ConfigError(path + "/kind", "unknown defect kind '" + kind + "'");
}

nlohmann::json walk_document_to_json(const WalkDocument &doc) {
    json j;
    j["schema"] = kSchemaVersion;

    // Emit the graph as an explicit structure so documents are
    // self-contained regardless of how the graph was built.
    GraphSpec spec;
    spec.vertices = doc.graph.vertex_count();
    for (VertexId v = 0; v < doc.graph.vertex_count(); ++v) {
        for (VertexId u : doc.graph.neighbors(v)) {
            if (u >= v) {
                spec.edges.emplace_back(v, u);
            }
        }
    }
    j["graph"] = graph_spec_to_json(spec);

    json steps = json::array();
    for (const WalkStep &step : doc.schedule.steps) {
        json s;
        json coins = json::array();
        for (const Eigen::MatrixXcd &m : step.coins.matrices) {
            coins.push_back(matrix_to_json(m));
        }
        s["coins"] = std::move(coins);
        if (!step.defects.empty()) {
            json defects = json::array();
            for (const DefectOp &defect : step.defects) {
                defects.push_back(defect_to_json(doc.graph, defect));
            }
            s["defects"] = std::move(defects);
        }
        steps.push_back(std::move(s));
    }
    j["schedule"]["steps"] = std::move(steps);
    j["schedule"]["defect_timing"] = doc.schedule.timing == DefectTiming::post_step ? "post-step" : "pre-coin";
    if (doc.embedded_modes >= 0) {
        j["embedded_modes"] = doc.embedded_modes;
    }
    return j;
}

WalkDocument walk_document_from_json(const json &j) {
    const std::string root;
    int schema = as_int(require_field(j, root, "schema"), "/schema");
    if (schema != kSchemaVersion) {
        throw ConfigError("/schema", "unsupported schema version " + std::to_string(schema));
    }
    GraphSpec spec = graph_spec_from_json(require_field(j, root, "graph"), "/graph");
    Graph graph = build_graph(spec);

    WalkSchedule schedule;
    const json &sched = require_field(j, root, "schedule");
    if (sched.contains("defect_timing")) {
        std::string timing = as_string(sched["defect_timing"], "/schedule/defect_timing");
        if (timing == "post-step") {
            schedule.timing = DefectTiming::post_step;
        } else if (timing == "pre-coin") {
            schedule.timing = DefectTiming::pre_coin;
        } else {
            throw ConfigError("/schedule/defect_timing", "expected post-step or pre-coin");
        }
    }
    const json &steps = require_field(sched, "/schedule", "steps");
    if (!steps.is_array()) {
        throw ConfigError("/schedule/steps", "expected an array");
    }
    for (size_t t = 0; t < steps.size(); ++t) {
        std::string step_path = "/schedule/steps/" + std::to_string(t);
        const json &s = steps[t];
        WalkStep step;
        const json &coins = require_field(s, step_path, "coins");
        if (!coins.is_array() || static_cast<int>(coins.size()) != graph.vertex_count()) {
            throw ConfigError(
                step_path + "/coins", "expected one matrix per vertex (" + std::to_string(graph.vertex_count()) + ")");
        }
        for (size_t v = 0; v < coins.size(); ++v) {
            step.coins.matrices.push_back(matrix_from_json(coins[v], step_path + "/coins/" + std::to_string(v)));
        }
        if (s.contains("defects")) {
            const json &defects = s["defects"];
            if (!defects.is_array()) {
                throw ConfigError(step_path + "/defects", "expected an array");
            }
            for (size_t d = 0; d < defects.size(); ++d) {
                step.defects.push_back(
                    defect_from_json(graph, defects[d], step_path + "/defects/" + std::to_string(d)));
            }
        }
        schedule.steps.push_back(std::move(step));
    }

    WalkDocument doc{std::move(graph), std::move(schedule), -1};
    if (j.contains("embedded_modes")) {
        doc.embedded_modes = as_int(j["embedded_modes"], "/embedded_modes");
    }
    return doc;
}

nlohmann::json parse_json_text(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &err) {
        size_t offset = err.byte;
        size_t line = 1;
        size_t column = 1;
        for (size_t k = 0; k < offset && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError(
            "", "parse failure at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                    err.what());
    }
}

nlohmann::json load_json_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("", "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str());
}

void save_json_file(const std::filesystem::path &path, const nlohmann::json &j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << j.dump(2) << '\n';
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace bosonwalk
