// Copyright 2026 The kerrlhz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "kerrlhz/io/experiments.hpp"

namespace kerrlhz::io {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_invalid_input = 2, exit_resource_limit = 3 };

/// Parses argv, runs one experiment and prints its manifest to `out`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Kerr-cat resonators and parity-embedded annealing: numerical experiments", "kerrlhz"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string out_prefix;
  std::size_t dim_cap = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for random instances (overrides the config)");
  app.add_option("--out", out_prefix, "Output path prefix; files are <prefix>_<name>.<ext>");
  auto* cap_opt = app.add_option("--dim-cap", dim_cap, "Largest Hilbert dimension an experiment may build")
                      ->check(CLI::PositiveNumber);

  std::map<std::string, std::string> config_path;
  std::map<CLI::App*, std::string> names;
  double omega_p = 0.0;
  std::string dissipation;
  CLI::Option* omega_opt = nullptr;
  for (const auto& e : experiments()) {
    auto* sub = app.add_subcommand(e.name, "Run the " + e.name + " experiment");
    sub->add_option("--config", config_path[e.name], "JSON config file")->check(CLI::ExistingFile);
    if (e.name == "cat-adiabatic") {
      omega_opt = sub->add_option("--omega-p-ghz", omega_p, "Two-photon drive amplitude Omega_p (GHz)");
      sub->add_option("--dissipation", dissipation, "Lindblad damping at the reference rates")
          ->check(CLI::IsMember({"on", "off"}));
    }
    names[sub] = e.name;
  }
  std::string run_path;
  auto* run = app.add_subcommand("run_experiment", "Run the experiment named by the config's \"experiment\" key");
  run->add_option("config", run_path, "JSON config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  RunContext ctx;
  if (seed_opt->count()) ctx.seed = seed;
  if (cap_opt->count()) ctx.dim_cap = dim_cap;
  ctx.out_prefix = out_prefix;
  if (omega_opt && omega_opt->count()) ctx.omega_p_ghz = omega_p;
  if (!dissipation.empty()) ctx.dissipation = dissipation == "on";

  std::optional<std::string> expected;
  std::string path = run_path;
  for (auto* sub : app.get_subcommands()) {
    if (const auto it = names.find(sub); it != names.end()) {
      expected = it->second;
      path = config_path[it->second];
    }
  }

  const std::string where = path.empty() ? "kerrlhz" : path;
  try {
    Config cfg;
    if (!path.empty()) {
      std::string text;
      try {
        text = read_file(path);
      } catch (const IoError& e) {
        err << "kerrlhz: " << e.what() << "\n";
        return exit_invalid_input;
      }
      cfg = Config::parse(text, path);
    }
    out << run_experiment(cfg, ctx, expected).dump(2) << "\n";
    return exit_ok;
  } catch (const ConfigError& e) {
    err << where << ": " << e.what() << "\n";
    return exit_invalid_input;
  } catch (const ResourceLimitError& e) {
    err << "kerrlhz: resource guard: " << e.what() << "\n";
    return exit_resource_limit;
  } catch (const InvalidArgument& e) {
    err << where << ": invalid input: " << e.what() << "\n";
    return exit_invalid_input;
  } catch (const std::exception& e) {
    err << "kerrlhz: " << e.what() << "\n";
    return exit_failure;
  }
}

}  // namespace kerrlhz::io
