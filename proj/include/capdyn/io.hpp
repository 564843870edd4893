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

#ifndef CAPDYN_IO_HPP
#define CAPDYN_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "capdyn/cashflow.hpp"
#include "capdyn/matevol.hpp"
#include "capdyn/rates.hpp"
#include "capdyn/scheduler.hpp"

namespace capdyn::io {

using json = nlohmann::json;

/// Formats a double with 12 significant digits (scientific fallback),
/// locale-independent decimal point.
std::string format_number(double value);

/// Parses JSON text; parse failures become ParseError with a 1-based
/// line/column diagnostic. `source` names the input in messages.
json parse_text(std::string_view text, const std::string& source = "<input>");

/// Reads and parses a JSON file; missing files also raise ParseError.
json parse_file(const std::filesystem::path& path);

/// Schema access helpers shared by the readers below and the CLI:
/// missing keys and type mismatches raise ParseError naming `what`.
const json& require_key(const json& j, const char* key, const char* what);
double require_number(const json& j, const char* what);
std::vector<double> require_number_array(const json& j, const char* what);

// { "breakpoints": [...], "rates": [...] }
rates::RateCurve rate_curve_from_json(const json& j);
json rate_curve_to_json(const rates::RateCurve& curve);

// { "impulses": [{"t":..,"amount":..}], "density": {"breakpoints":[...],
//   "values":[...]}, "horizon": [begin, end] } — impulses and density
//   are each optional.
cashflow::FlowProfile flow_profile_from_json(const json& j);
json flow_profile_to_json(const cashflow::FlowProfile& profile);

// { "reference": tau, "loan": {"t":..,"amount":..},
//   "instalments": [{"t":..,"face":..}] }
scheduler::InstalmentSchedule schedule_from_json(const json& j);
json schedule_to_json(const scheduler::InstalmentSchedule& schedule);

// { "dimension": n, "breakpoints": [...], "generators": [[[row],...],...] }
matevol::MatrixRateCurve matrix_curve_from_json(const json& j);
json matrix_curve_to_json(const matevol::MatrixRateCurve& curve);

/// One parsed CSV table: a header row plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Parses simple comma-separated text (no quoting; the library never
/// emits cells needing it).
CsvTable parse_csv(std::string_view text);

}  // namespace capdyn::io

#endif  // CAPDYN_IO_HPP
