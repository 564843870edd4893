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

#include "capdyn/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "capdyn/errors.hpp"
#include "capdyn/io.hpp"
#include "capdyn/matevol.hpp"
#include "capdyn/rates.hpp"
#include "capdyn/scheduler.hpp"

namespace capdyn::cli {

namespace {

using io::format_number;
using io::json;

std::ostream& out_stream(const RunConfig& config) {
  return config.out ? *config.out : std::cout;
}

std::ostream& err_stream(const RunConfig& config) {
  return config.err ? *config.err : std::cerr;
}

template <typename Fn>
int guarded(const RunConfig& config, Fn&& body) {
  try {
    body();
    return 0;
  } catch (const ParseError& e) {
    err_stream(config) << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err_stream(config) << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err_stream(config) << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err_stream(config) << "error: " << e.what() << "\n";
    return 3;
  }
}

void check_tolerances(const RunConfig& config,
                      std::initializer_list<std::string_view> allowed) {
  for (const auto& [name, value] : config.tolerances) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw ParseError("tolerance \"" + name + "\" is not used by command " +
                       config.command);
    }
    if (!std::isfinite(value) || value <= 0.0) {
      throw ParseError("tolerance \"" + name + "\" must be a positive finite number");
    }
  }
}

double tol_or(const RunConfig& config, const std::string& name, double fallback) {
  auto it = config.tolerances.find(name);
  return it == config.tolerances.end() ? fallback : it->second;
}

void print_table(std::ostream& out, const io::CsvTable& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  auto grow = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  };
  grow(table.header);
  for (const auto& row : table.rows) grow(row);
  auto put = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << "  ";
      out << std::string(width[i] - row[i].size(), ' ') << row[i];
    }
    out << "\n";
  };
  put(table.header);
  for (const auto& row : table.rows) put(row);
}

void print_csv(std::ostream& out, const io::CsvTable& table) {
  auto put = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << "\n";
  };
  put(table.header);
  for (const auto& row : table.rows) put(row);
}

/// Renders the report to output_path when set, otherwise to the config's
/// standard stream. Preamble lines appear in table format only.
void emit(const RunConfig& config, const io::CsvTable& table,
          const std::vector<std::string>& preamble = {}) {
  std::ofstream file;
  std::ostream* target = &out_stream(config);
  if (config.output_path) {
    file.open(*config.output_path);
    if (!file) throw Error("cannot open output file " + config.output_path->string());
    target = &file;
  }
  if (config.format == OutputFormat::kTable) {
    for (const auto& line : preamble) *target << line << "\n";
    if (!preamble.empty()) *target << "\n";
    print_table(*target, table);
  } else {
    print_csv(*target, table);
  }
}

// rates: { "curve": {...}, "spans": [[from, to], ...] }
void run_rates(const RunConfig& config) {
  check_tolerances(config, {"duality"});
  const json input = io::parse_file(config.input_path);
  const auto curve = io::rate_curve_from_json(io::require_key(input, "curve", "rates input"));

  const json& spans = io::require_key(input, "spans", "rates input");
  if (!spans.is_array() || spans.empty()) {
    throw ParseError("rates input: spans must be a non-empty array of [from, to] pairs");
  }

  const double duality_tol = tol_or(config, "duality", 1e-12);
  io::CsvTable table;
  table.header = {"from",       "to",         "utility", "range_rate",
                  "lower_rate", "upper_rate", "duality_residual"};
  for (const json& span : spans) {
    if (!span.is_array() || span.size() != 2) {
      throw ParseError("rates input: each span must be a [from, to] pair");
    }
    const double from = io::require_number(span[0], "span endpoint");
    const double to = io::require_number(span[1], "span endpoint");

    const auto u = rates::utility_from_rate(curve, from, to);
    const auto rr = rates::range_rate(u);
    const double lower = rates::lower_rate(u);
    const double upper = rates::upper_rate(u);
    const double residual = (1.0 + lower) * (1.0 - upper) - 1.0;
    if (std::abs(residual) > duality_tol) {
      throw DomainError("duality residual " + format_number(residual) +
                        " exceeds tolerance " + format_number(duality_tol));
    }
    table.rows.push_back({format_number(from), format_number(to), format_number(u.factor),
                          format_number(rr.value), format_number(lower),
                          format_number(upper), format_number(residual)});
  }
  emit(config, table);
}

// schedule: { "mode": "minmax"|"nominal", "curve": {...}, "reference": tau,
//             "loan": {"t":.., "amount":..}, "times": [...] }
void run_schedule(const RunConfig& config) {
  check_tolerances(config, {"balance"});
  const json input = io::parse_file(config.input_path);

  const json& mode_json = io::require_key(input, "mode", "schedule input");
  if (!mode_json.is_string()) throw ParseError("schedule input: mode must be a string");
  const auto mode = mode_json.get<std::string>();
  if (mode != "minmax" && mode != "nominal") {
    throw ParseError("schedule input: mode must be \"minmax\" or \"nominal\"");
  }

  const auto curve =
      io::rate_curve_from_json(io::require_key(input, "curve", "schedule input"));
  const double reference =
      io::require_number(io::require_key(input, "reference", "schedule input"),
                         "schedule reference");
  const json& loan = io::require_key(input, "loan", "schedule input");
  const double loan_time = io::require_number(io::require_key(loan, "t", "loan"), "loan time");
  const double loan_amount =
      io::require_number(io::require_key(loan, "amount", "loan"), "loan amount");
  const auto times = io::require_number_array(
      io::require_key(input, "times", "schedule input"), "instalment times");

  const auto schedule =
      mode == "minmax"
          ? scheduler::minmax_schedule(loan_amount, loan_time, times, curve, reference)
          : scheduler::nominally_fixed_schedule(loan_amount, loan_time, times, curve,
                                                reference);
  const auto discounted = scheduler::discount_schedule(schedule, curve);

  const double balance_tol = tol_or(config, "balance", 1e-9);
  if (std::abs(discounted.balance_residual()) > balance_tol) {
    throw DomainError("schedule balance residual " +
                      format_number(discounted.balance_residual()) +
                      " exceeds tolerance " + format_number(balance_tol));
  }

  io::CsvTable table;
  table.header = {"k", "t_k", "face", "discounted", "balance_residual"};
  double running = 0.0;
  for (std::size_t k = 0; k < discounted.entries().size(); ++k) {
    const auto& entry = discounted.entries()[k];
    const double face = k == 0 ? schedule.loan().amount : schedule.instalments()[k - 1].face;
    running += entry.amount;
    table.rows.push_back({std::to_string(k), format_number(entry.at), format_number(face),
                          format_number(entry.amount), format_number(running)});
  }

  if (config.output_path && config.format == OutputFormat::kTable) {
    std::ofstream file(*config.output_path);
    if (!file) throw Error("cannot open output file " + config.output_path->string());
    file << io::schedule_to_json(schedule).dump(2) << "\n";
    RunConfig to_stdout = config;
    to_stdout.output_path.reset();
    emit(to_stdout, table);
  } else {
    emit(config, table);
  }
}

// risk: { "curve": {...}, "schedule": {...} | "path/to/schedule.json" }
void run_risk(const RunConfig& config) {
  check_tolerances(config, {});
  const json input = io::parse_file(config.input_path);
  const auto curve =
      io::rate_curve_from_json(io::require_key(input, "curve", "risk input"));

  const json& sched_json = io::require_key(input, "schedule", "risk input");
  const auto schedule = [&] {
    if (sched_json.is_string()) {
      std::filesystem::path path = sched_json.get<std::string>();
      if (path.is_relative()) path = config.input_path.parent_path() / path;
      return io::schedule_from_json(io::parse_file(path));
    }
    return io::schedule_from_json(sched_json);
  }();

  const auto discounted = scheduler::discount_schedule(schedule, curve);
  const auto report = scheduler::risk_report(discounted);

  io::CsvTable table;
  table.header = {"k", "t_k", "face", "discounted", "deviation"};
  for (std::size_t k = 1; k < discounted.entries().size(); ++k) {
    const auto& entry = discounted.entries()[k];
    table.rows.push_back({std::to_string(k), format_number(entry.at),
                          format_number(schedule.instalments()[k - 1].face),
                          format_number(entry.amount),
                          format_number(entry.amount - report.mean_discounted)});
  }
  emit(config, table,
       {"max_discounted = " + format_number(report.max_discounted),
        "mean_discounted = " + format_number(report.mean_discounted),
        "variance_risk = " + format_number(report.variance_risk)});
}

enum class MethodKind { kOrdered, kVolterra, kEigen, kDiscreteLower, kDiscreteUpper };

struct MethodSpec {
  MethodKind kind;
  int order = 0;
  std::string name;
};

MethodSpec parse_method(const std::string& name) {
  if (name == "ordered") return {MethodKind::kOrdered, 0, name};
  if (name == "eigen") return {MethodKind::kEigen, 0, name};
  if (name == "discrete-lower") return {MethodKind::kDiscreteLower, 0, name};
  if (name == "discrete-upper") return {MethodKind::kDiscreteUpper, 0, name};
  constexpr std::string_view prefix = "volterra:";
  if (name.size() > prefix.size() && std::string_view(name).substr(0, prefix.size()) == prefix) {
    int order = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, order);
    if (ec == std::errc() && ptr == last && order >= 1) {
      return {MethodKind::kVolterra, order, name};
    }
  }
  throw ParseError("unknown evolution method \"" + name +
                   "\" (expected ordered, volterra:k, eigen, discrete-lower or "
                   "discrete-upper)");
}

matevol::Matrix parse_matrix(const json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw ParseError(std::string(what) + ": expected a matrix with `dimension` rows");
  }
  matevol::Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto row = io::require_number_array(j[static_cast<std::size_t>(r)], what);
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw ParseError(std::string(what) + ": each row must have `dimension` entries");
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

matevol::Vector parse_vector(const json& j, Eigen::Index n, const char* what) {
  const auto values = io::require_number_array(j, what);
  if (static_cast<Eigen::Index>(values.size()) != n) {
    throw ParseError(std::string(what) + ": expected " + std::to_string(n) + " entries");
  }
  matevol::Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = values[static_cast<std::size_t>(i)];
  return v;
}

std::vector<std::string> trajectory_header(Eigen::Index n, bool discrepancy) {
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 1; i <= n; ++i) header.push_back("p_" + std::to_string(i));
  if (discrepancy) header.push_back("discrepancy");
  return header;
}

// Advances the state across [a, b] with one continuous method. The eigen
// method is applied piecewise between generator breakpoints.
matevol::Vector advance_segment(const matevol::MatrixRateCurve& curve, const MethodSpec& method,
                                const matevol::Vector& p, double a, double b,
                                double eigen_cap, int quad_points) {
  if (b <= a) return p;
  switch (method.kind) {
    case MethodKind::kOrdered:
      return matevol::ordered_exp(curve, a, b).matrix * p;
    case MethodKind::kVolterra:
      return matevol::volterra_series(curve, a, b, method.order, quad_points).matrix * p;
    case MethodKind::kEigen: {
      std::vector<double> cuts{a};
      for (double bp : curve.breakpoints()) {
        if (bp > a && bp < b) cuts.push_back(bp);
      }
      cuts.push_back(b);
      matevol::Vector state = p;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        state = matevol::eigen_evolve(curve.generator_at(mid), state,
                                      cuts[i + 1] - cuts[i], eigen_cap);
      }
      return state;
    }
    default:
      throw ParseError("discrete methods cannot be combined with continuous methods");
  }
}

void run_evolve_discrete(const RunConfig& config, const json& input, const MethodSpec& method) {
  const double dim_raw = io::require_number(
      io::require_key(input, "dimension", "evolve input"), "evolve dimension");
  const auto n = static_cast<Eigen::Index>(dim_raw);
  if (n < 1 || static_cast<double>(n) != dim_raw) {
    throw ParseError("evolve input: dimension must be a positive integer");
  }

  const json& steps_json = io::require_key(input, "steps", "evolve input");
  if (!steps_json.is_array() || steps_json.empty()) {
    throw ParseError("evolve input: steps must be a non-empty array of rate matrices");
  }
  std::vector<matevol::Matrix> steps;
  for (const json& s : steps_json) steps.push_back(parse_matrix(s, n, "evolve step"));

  const auto p0 =
      parse_vector(io::require_key(input, "p0", "evolve input"), n, "evolve p0");

  // discrete-lower runs forward from p0 = p(t_0); discrete-upper recovers
  // earlier states backward from p0 = p(t_K).
  const std::size_t count = steps.size();
  std::vector<matevol::Vector> states(count + 1);
  if (method.kind == MethodKind::kDiscreteLower) {
    states[0] = p0;
    for (std::size_t k = 0; k < count; ++k) {
      states[k + 1] = matevol::discrete_evolve_lower({&steps[k], 1}, states[k]);
    }
  } else {
    states[count] = p0;
    for (std::size_t k = count; k > 0; --k) {
      states[k - 1] = matevol::discrete_evolve_upper({&steps[k - 1], 1}, states[k]);
    }
  }

  io::CsvTable table;
  table.header = trajectory_header(n, false);
  for (std::size_t k = 0; k <= count; ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (Eigen::Index i = 0; i < n; ++i) row.push_back(format_number(states[k](i)));
    table.rows.push_back(std::move(row));
  }
  emit(config, table);
}

// evolve: { "curve": {...}, "p0": [...], "methods": [...],
//           "span": [a, b]?, "samples": m?, "quad_points": q? }
//   or   { "dimension": n, "steps": [[[..]..]..], "p0": [...],
//           "method": "discrete-lower"|"discrete-upper" }
void run_evolve(const RunConfig& config) {
  check_tolerances(config, {"eigen_condition_cap"});
  const json input = io::parse_file(config.input_path);

  std::vector<MethodSpec> methods;
  if (input.contains("methods")) {
    const json& arr = input.at("methods");
    if (!arr.is_array() || arr.empty()) {
      throw ParseError("evolve input: methods must be a non-empty array");
    }
    for (const json& m : arr) {
      if (!m.is_string()) throw ParseError("evolve input: methods must be strings");
      methods.push_back(parse_method(m.get<std::string>()));
    }
  } else {
    const json& m = io::require_key(input, "method", "evolve input");
    if (!m.is_string()) throw ParseError("evolve input: method must be a string");
    methods.push_back(parse_method(m.get<std::string>()));
  }

  const bool any_discrete = std::any_of(methods.begin(), methods.end(), [](const MethodSpec& m) {
    return m.kind == MethodKind::kDiscreteLower || m.kind == MethodKind::kDiscreteUpper;
  });
  if (any_discrete) {
    if (methods.size() != 1) {
      throw ParseError(
          "evolve input: discrete methods advance over steps, not a time span, and "
          "cannot be combined with other methods");
    }
    run_evolve_discrete(config, input, methods.front());
    return;
  }

  const auto curve =
      io::matrix_curve_from_json(io::require_key(input, "curve", "evolve input"));
  const auto p0 = parse_vector(io::require_key(input, "p0", "evolve input"),
                               curve.dimension(), "evolve p0");

  double span_begin = curve.domain_min();
  double span_end = curve.domain_max();
  if (input.contains("span")) {
    const json& span = input.at("span");
    if (!span.is_array() || span.size() != 2) {
      throw ParseError("evolve input: span must be an [a, b] pair");
    }
    span_begin = io::require_number(span[0], "span endpoint");
    span_end = io::require_number(span[1], "span endpoint");
  }

  int samples = 8;
  if (input.contains("samples")) {
    const double raw = io::require_number(input.at("samples"), "evolve samples");
    samples = static_cast<int>(raw);
    if (samples < 1 || static_cast<double>(samples) != raw) {
      throw ParseError("evolve input: samples must be a positive integer");
    }
  }
  int quad_points = 256;
  if (input.contains("quad_points")) {
    const double raw = io::require_number(input.at("quad_points"), "evolve quad_points");
    quad_points = static_cast<int>(raw);
    if (quad_points < 1 || static_cast<double>(quad_points) != raw) {
      throw ParseError("evolve input: quad_points must be a positive integer");
    }
  }
  const double eigen_cap =
      tol_or(config, "eigen_condition_cap", matevol::kDefaultEigenConditionCap);

  std::vector<double> instants(static_cast<std::size_t>(samples) + 1);
  for (int i = 0; i <= samples; ++i) {
    instants[static_cast<std::size_t>(i)] =
        span_begin + (span_end - span_begin) * i / samples;
  }
  instants.back() = span_end;

  // One trajectory per method on the shared sample grid.
  std::vector<std::vector<matevol::Vector>> trajectories(methods.size());
  for (std::size_t m = 0; m < methods.size(); ++m) {
    auto& states = trajectories[m];
    states.resize(instants.size());
    states[0] = p0;
    for (std::size_t i = 1; i < instants.size(); ++i) {
      states[i] = advance_segment(curve, methods[m], states[i - 1], instants[i - 1],
                                  instants[i], eigen_cap, quad_points);
    }
  }

  const bool with_discrepancy = methods.size() > 1;
  io::CsvTable table;
  table.header = trajectory_header(curve.dimension(), with_discrepancy);
  double max_discrepancy = 0.0;
  for (std::size_t i = 0; i < instants.size(); ++i) {
    std::vector<std::string> row{format_number(instants[i])};
    for (Eigen::Index c = 0; c < curve.dimension(); ++c) {
      row.push_back(format_number(trajectories[0][i](c)));
    }
    if (with_discrepancy) {
      double d = 0.0;
      for (std::size_t m = 1; m < methods.size(); ++m) {
        d = std::max(d,
                     (trajectories[m][i] - trajectories[0][i]).cwiseAbs().maxCoeff());
      }
      max_discrepancy = std::max(max_discrepancy, d);
      row.push_back(format_number(d));
    }
    table.rows.push_back(std::move(row));
  }

  std::vector<std::string> preamble;
  if (with_discrepancy) {
    preamble.push_back("max_discrepancy = " + format_number(max_discrepancy));
  }
  emit(config, table, preamble);
}

// bridge: { "profiles": [{"name": ..?, <flow profile fields>}, ...] }
void run_bridge(const RunConfig& config) {
  check_tolerances(config, {});
  const json input = io::parse_file(config.input_path);

  const json& profiles_json = io::require_key(input, "profiles", "bridge input");
  if (!profiles_json.is_array() || profiles_json.empty()) {
    throw ParseError("bridge input: profiles must be a non-empty array");
  }

  std::vector<std::string> names;
  std::vector<double> means;
  std::vector<double> peaks;
  std::size_t index = 0;
  for (const json& item : profiles_json) {
    ++index;
    std::string name = "p" + std::to_string(index);
    if (item.contains("name")) {
      const json& n = item.at("name");
      if (!n.is_string()) throw ParseError("bridge input: profile name must be a string");
      name = n.get<std::string>();
      if (name.find_first_of(",\r\n") != std::string::npos || name.empty()) {
        throw ParseError("bridge input: profile names must be non-empty and free of "
                         "commas and line breaks");
      }
    }
    const auto profile = io::flow_profile_from_json(item);
    names.push_back(std::move(name));
    means.push_back(cashflow::mean_intensity(profile));
    peaks.push_back(cashflow::peak_intensity(profile));
  }

  const double min_peak = *std::min_element(peaks.begin(), peaks.end());

  io::CsvTable table;
  table.header = {"name", "mean", "peak", "minimal"};
  for (std::size_t j = 1; j <= names.size(); ++j) {
    table.header.push_back("dist_" + std::to_string(j));
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::vector<std::string> row{names[i], format_number(means[i]), format_number(peaks[i]),
                                 peaks[i] == min_peak ? "1" : "0"};
    for (std::size_t j = 0; j < names.size(); ++j) {
      row.push_back(format_number(std::abs(peaks[i] - peaks[j])));
    }
    table.rows.push_back(std::move(row));
  }
  emit(config, table);
}

}  // namespace

int cmd_rates(const RunConfig& config) {
  return guarded(config, [&] { run_rates(config); });
}

int cmd_schedule(const RunConfig& config) {
  return guarded(config, [&] { run_schedule(config); });
}

int cmd_risk(const RunConfig& config) {
  return guarded(config, [&] { run_risk(config); });
}

int cmd_evolve(const RunConfig& config) {
  return guarded(config, [&] { run_evolve(config); });
}

int cmd_bridge(const RunConfig& config) {
  return guarded(config, [&] { run_bridge(config); });
}

int run(const RunConfig& config) {
  if (config.command == "rates") return cmd_rates(config);
  if (config.command == "schedule") return cmd_schedule(config);
  if (config.command == "risk") return cmd_risk(config);
  if (config.command == "evolve") return cmd_evolve(config);
  if (config.command == "bridge") return cmd_bridge(config);
  err_stream(config) << "error: unknown command \"" << config.command << "\"\n";
  return 2;
}

}  // namespace capdyn::cli
