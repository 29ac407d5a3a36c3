// Copyright 2026 The weaktension Authors
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

// Command-line front end: run a scenario file or a builtin, or list builtins.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "weaktension/errors.hpp"
#include "weaktension/scenario.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

bool is_config_error(weaktension::Errc code) {
    return code == weaktension::Errc::ParseError || code == weaktension::Errc::ValidationError;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw weaktension::Error(weaktension::Errc::ParseError, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak conditional probabilities, logical tension and weak-measurement simulation"};
    app.set_version_flag("--version", std::string(WEAKTENSION_VERSION));
    app.require_subcommand(1);

    std::string config_path;
    std::string builtin;
    std::string output_path;
    std::string format;
    std::uint64_t seed = 0;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario file or a builtin scenario");
    run_cmd->add_option("config", config_path, "scenario JSON file");
    run_cmd->add_option("--builtin", builtin, "name of a builtin scenario (see 'list')");
    run_cmd->add_option("--output", output_path, "write the table here instead of standard output");
    run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "override the scenario seed");

    CLI::App* list_cmd = app.add_subcommand("list", "list builtin scenarios");
    bool show_text = false;
    list_cmd->add_flag("--show", show_text, "print each scenario document as well");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (list_cmd->parsed()) {
        for (const auto& b : weaktension::list_scenarios()) {
            std::cout << b.name << "\t" << b.description << "\n";
            if (show_text) std::cout << b.text << "\n\n";
        }
        return 0;
    }

    try {
        if (config_path.empty() == builtin.empty()) {
            throw weaktension::Error(weaktension::Errc::ValidationError,
                                     "give exactly one of a config file or --builtin <name>");
        }
        weaktension::ScenarioConfig config =
            builtin.empty() ? weaktension::parse_config(read_file(config_path)) : weaktension::builtin_scenario(builtin);
        if (seed_opt->count() > 0) config.parameters.seed = seed;
        if (!format.empty()) {
            config.output.format = format == "json" ? weaktension::OutputFormat::json : weaktension::OutputFormat::csv;
        }
        if (!output_path.empty()) config.output.path = output_path;

        const std::string text = weaktension::render(weaktension::run(config), config.output.format);
        if (config.output.path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(config.output.path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write '" << config.output.path << "'\n";
                return kExitNumeric;
            }
            out << text;
        }
        return 0;
    } catch (const weaktension::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_config_error(e.code()) ? kExitConfig : kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
