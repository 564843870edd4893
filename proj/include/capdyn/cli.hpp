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

#ifndef CAPDYN_CLI_HPP
#define CAPDYN_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace capdyn::cli {

enum class OutputFormat { kTable, kCsv };

/// One resolved invocation. Commands read a single JSON input file and
/// emit a report; `format` selects an aligned table or CSV. When
/// `output_path` is set the report goes there instead of `out` (the
/// schedule command in table format instead writes the constructed
/// schedule file there). Null streams fall back to std::cout/std::cerr.
struct RunConfig {
  std::string command;
  std::filesystem::path input_path;
  std::optional<std::filesystem::path> output_path;
  OutputFormat format = OutputFormat::kTable;
  std::map<std::string, double> tolerances;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

/// Per-span utility factor, range rate and discrete rate pair, with a
/// duality residual audit column.
int cmd_rates(const RunConfig& config);

/// Minmax or nominally fixed schedule construction; rows carry a running
/// discounted-balance residual audit column.
int cmd_schedule(const RunConfig& config);

/// Risk statistics of a discounted schedule plus per-repayment deviations.
int cmd_risk(const RunConfig& config);

/// Trajectory of a multidimensional capital under one or more evolution
/// methods; cross-method discrepancy column when several are requested.
int cmd_evolve(const RunConfig& config);

/// Mean/peak intensity comparison across transport profiles; flags the
/// minimal-peak profile(s) and reports pairwise risk distances.
int cmd_bridge(const RunConfig& config);

/// Dispatches on config.command. Exit statuses: 0 success, 2 input parse
/// error (with line/column where available), 3 domain or numeric error.
int run(const RunConfig& config);

}  // namespace capdyn::cli

#endif  // CAPDYN_CLI_HPP
