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

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bosonwalk/driver.hpp"
#include "bosonwalk/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternalError = 2;

int do_run(const std::string &config_path, const std::string &out_dir, int max_walkers) {
    nlohmann::json j = bosonwalk::load_json_file(config_path);
    bosonwalk::RunConfig config = bosonwalk::run_config_from_json(j);
    bosonwalk::RunReport report = bosonwalk::run(config, out_dir, max_walkers);
    std::cout << "wrote " << report.files.size() << " files to " << out_dir << "\n";
    for (const std::string &file : report.files) {
        std::cout << "  " << file << "\n";
    }
    return kExitOk;
}

int do_compile(bool walk_to_net, const std::string &in, const std::string &out) {
    bosonwalk::CompileReport report = walk_to_net ? bosonwalk::compile_walk_to_net_file(in, out)
                                                  : bosonwalk::compile_net_to_walk_file(in, out);
    std::cout << "wrote " << report.output_file << "\n";
    std::cout << "verification report " << report.report_file << " (mode-map distance "
              << report.verification_distance << ")\n";
    if (!report.verified) {
        std::cerr << "internal error: verification distance " << report.verification_distance
                  << " exceeds 1e-9\n";
        return kExitInternalError;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Multi-walker quantum walk simulator and linear-optics compiler"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int max_walkers = bosonwalk::kMaxWalkers;
    CLI::App *run_cmd = app.add_subcommand("run", "Run a walk described by a config file");
    run_cmd->add_option("--config", config_path, "Path to the run config (JSON)")->required();
    run_cmd->add_option("--out-dir", out_dir, "Directory for output files")->required();
    run_cmd->add_option(
        "--max-walkers", max_walkers,
        "Walker cap for this run (hard ceiling " + std::to_string(bosonwalk::kMaxWalkers) + ")");

    std::string in_path;
    std::string out_path;
    CLI::App *compile_cmd = app.add_subcommand("compile", "Translate between walks and optical networks");
    compile_cmd->require_subcommand(1);
    CLI::App *w2n = compile_cmd->add_subcommand("walk-to-net", "Compile a walk document to a network");
    CLI::App *n2w = compile_cmd->add_subcommand("net-to-walk", "Compile a network to a walk document");
    for (CLI::App *cmd : {w2n, n2w}) {
        cmd->add_option("--in", in_path, "Input file")->required();
        cmd->add_option("--out", out_path, "Output file")->required();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            return do_run(config_path, out_dir, max_walkers);
        }
        return do_compile(w2n->parsed(), in_path, out_path);
    } catch (const bosonwalk::ConfigError &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUserError;
    } catch (const bosonwalk::Error &err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitUserError;
    } catch (const std::exception &err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return kExitInternalError;
    }
}
