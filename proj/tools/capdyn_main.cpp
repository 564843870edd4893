/*
 * Copyright 2026 The capdyn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <charconv>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capdyn/cli.hpp"

namespace {

struct SubcommandState {
  std::string input;
  std::string output;
  std::string format = "table";
  std::vector<std::string> tolerances;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capdyn: deterministic capital dynamics toolkit"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"rates", "Utility factors and rate conversions over spans of a rate curve"},
      {"schedule", "Construct a minmax or nominally fixed repayment schedule"},
      {"risk", "Risk statistics of a discounted repayment schedule"},
      {"evolve", "Evolve a multidimensional capital under matrix rates"},
      {"bridge", "Compare mean and peak intensity across transport profiles"},
  };

  SubcommandState state;
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--input", state.input, "JSON input file")->required();
    sub->add_option("--output", state.output, "Write the report here instead of stdout");
    sub->add_option("--format", state.format, "Output format")
        ->check(CLI::IsMember({"table", "csv"}));
    sub->add_option("--tol", state.tolerances,
                    "Named tolerance override, e.g. --tol duality=1e-10");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  capdyn::cli::RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  config.input_path = state.input;
  if (!state.output.empty()) config.output_path = state.output;
  config.format = state.format == "csv" ? capdyn::cli::OutputFormat::kCsv
                                        : capdyn::cli::OutputFormat::kTable;
  for (const std::string& entry : state.tolerances) {
    const std::size_t eq = entry.find('=');
    double value = 0.0;
    const char* first = entry.data() + (eq == std::string::npos ? 0 : eq + 1);
    const char* last = entry.data() + entry.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (eq == std::string::npos || eq == 0 || ec != std::errc() || ptr != last) {
      std::cerr << "error: --tol expects name=value, got \"" << entry << "\"\n";
      return 2;
    }
    config.tolerances[entry.substr(0, eq)] = value;
  }

  return capdyn::cli::run(config);
}
