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

#include "capdyn/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "capdyn/errors.hpp"

namespace capdyn::io {

namespace {

// Translates a byte offset from the json parser into 1-based line/column.
std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

// Value-level constraint violations (wrong sign, unordered times, ...)
// are left to the domain constructors: the CLI reports them as domain
// errors, not parse errors.
const json& require_key(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    std::ostringstream msg;
    msg << what << ": missing required key \"" << key << "\"";
    throw ParseError(msg.str());
  }
  return j.at(key);
}

double require_number(const json& j, const char* what) {
  if (!j.is_number()) {
    throw ParseError(std::string(what) + ": expected a number");
  }
  return j.get<double>();
}

std::vector<double> require_number_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(require_number(v, what));
  return out;
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buffer, ptr);
}

json parse_text(std::string_view text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    auto [line, column] = line_column(text, err.byte > 0 ? err.byte - 1 : 0);
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": " << err.what();
    throw ParseError(msg.str(), line, column);
  }
}

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path.string());
}

rates::RateCurve rate_curve_from_json(const json& j) {
  auto breakpoints = require_number_array(require_key(j, "breakpoints", "rate curve"),
                                          "rate curve breakpoints");
  auto values = require_number_array(require_key(j, "rates", "rate curve"),
                                     "rate curve rates");
  return rates::RateCurve(std::move(breakpoints), std::move(values));
}

json rate_curve_to_json(const rates::RateCurve& curve) {
  return {{"breakpoints", curve.breakpoints()}, {"rates", curve.values()}};
}

cashflow::FlowProfile flow_profile_from_json(const json& j) {
  const json& horizon = require_key(j, "horizon", "flow profile");
  if (!horizon.is_array() || horizon.size() != 2) {
    throw ParseError("flow profile: horizon must be a [begin, end] pair");
  }
  const double begin = require_number(horizon[0], "flow horizon begin");
  const double end = require_number(horizon[1], "flow horizon end");

  std::vector<cashflow::FlowImpulse> impulses;
  if (j.contains("impulses")) {
    const json& arr = j.at("impulses");
    if (!arr.is_array()) throw ParseError("flow profile: impulses must be an array");
    for (const auto& item : arr) {
      impulses.push_back({require_number(require_key(item, "t", "impulse"), "impulse time"),
                          require_number(require_key(item, "amount", "impulse"),
                                         "impulse amount")});
    }
  }

  std::optional<StepFunction> density;
  if (j.contains("density") && !j.at("density").is_null()) {
    const json& d = j.at("density");
    auto breakpoints = require_number_array(require_key(d, "breakpoints", "flow density"),
                                            "density breakpoints");
    // Densities are written with "values"; "rates" is accepted for
    // curve-shaped inputs.
    const char* key = d.contains("values") ? "values" : "rates";
    auto values = require_number_array(require_key(d, key, "flow density"),
                                       "density values");
    density = StepFunction(std::move(breakpoints), std::move(values));
  }

  return cashflow::FlowProfile(std::move(impulses), std::move(density), begin, end);
}

json flow_profile_to_json(const cashflow::FlowProfile& profile) {
  json impulses = json::array();
  for (const auto& imp : profile.impulses()) {
    impulses.push_back({{"t", imp.at}, {"amount", imp.amount}});
  }
  json out = {{"impulses", std::move(impulses)},
              {"horizon", {profile.horizon_begin(), profile.horizon_end()}}};
  if (profile.density()) {
    out["density"] = {{"breakpoints", profile.density()->breakpoints()},
                      {"values", profile.density()->values()}};
  }
  return out;
}

scheduler::InstalmentSchedule schedule_from_json(const json& j) {
  const double reference = require_number(require_key(j, "reference", "schedule"),
                                          "schedule reference");
  const json& loan = require_key(j, "loan", "schedule");
  const cashflow::FlowImpulse loan_impulse{
      require_number(require_key(loan, "t", "loan"), "loan time"),
      require_number(require_key(loan, "amount", "loan"), "loan amount")};

  const json& arr = require_key(j, "instalments", "schedule");
  if (!arr.is_array()) throw ParseError("schedule: instalments must be an array");
  std::vector<scheduler::Instalment> instalments;
  for (const auto& item : arr) {
    instalments.push_back(
        {require_number(require_key(item, "t", "instalment"), "instalment time"),
         require_number(require_key(item, "face", "instalment"), "instalment face")});
  }

  return scheduler::InstalmentSchedule(reference, loan_impulse, std::move(instalments));
}

json schedule_to_json(const scheduler::InstalmentSchedule& schedule) {
  json instalments = json::array();
  for (const auto& inst : schedule.instalments()) {
    instalments.push_back({{"t", inst.at}, {"face", inst.face}});
  }
  return {{"reference", schedule.reference()},
          {"loan", {{"t", schedule.loan().at}, {"amount", schedule.loan().amount}}},
          {"instalments", std::move(instalments)}};
}

matevol::MatrixRateCurve matrix_curve_from_json(const json& j) {
  const double dimension = require_number(require_key(j, "dimension", "matrix curve"),
                                          "matrix curve dimension");
  const auto n = static_cast<Eigen::Index>(dimension);
  if (n < 1 || static_cast<double>(n) != dimension) {
    throw ParseError("matrix curve: dimension must be a positive integer");
  }
  auto breakpoints = require_number_array(require_key(j, "breakpoints", "matrix curve"),
                                          "matrix curve breakpoints");

  const json& gens = require_key(j, "generators", "matrix curve");
  if (!gens.is_array()) throw ParseError("matrix curve: generators must be an array");
  std::vector<matevol::Matrix> generators;
  for (const auto& g : gens) {
    if (!g.is_array() || static_cast<Eigen::Index>(g.size()) != n) {
      throw ParseError("matrix curve: each generator must have `dimension` rows");
    }
    matevol::Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      auto row = require_number_array(g[static_cast<std::size_t>(r)], "generator row");
      if (static_cast<Eigen::Index>(row.size()) != n) {
        throw ParseError("matrix curve: each generator row must have `dimension` entries");
      }
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
    }
    generators.push_back(std::move(m));
  }

  return matevol::MatrixRateCurve(std::move(breakpoints), std::move(generators));
}

json matrix_curve_to_json(const matevol::MatrixRateCurve& curve) {
  json gens = json::array();
  for (const auto& g : curve.generators()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  return {{"dimension", curve.dimension()},
          {"breakpoints", curve.breakpoints()},
          {"generators", std::move(gens)}};
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;

    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      if (comma == std::string_view::npos) {
        cells.emplace_back(line.substr(start));
        break;
      }
      cells.emplace_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

}  // namespace capdyn::io
