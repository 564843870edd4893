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

#include "oracles.hpp"

#include <sys/wait.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace capdyn::testing {
namespace {

// atanh(z) = sum z^(2k+1) / (2k+1); geometric tail bound for |z| < 1.
double atanh_series(double z) {
  const double z2 = z * z;
  double term = z;
  double sum = z;
  for (int k = 1; k < 400; ++k) {
    term *= z2;
    const double add = term / static_cast<double>(2 * k + 1);
    sum += add;
    if (std::abs(add) <= 1e-20 * std::abs(sum)) break;
  }
  return sum;
}

double one_norm(const matevol::Matrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    best = std::max(best, a.col(j).cwiseAbs().sum());
  }
  return best;
}

}  // namespace

double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("trapezoid: need at least one panel");
  const double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

double ln_series(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("ln_series: positive argument required");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent
  if (mantissa < 0.70710678118654752440) {     // keep |z| below 0.1716
    mantissa *= 2.0;
    exponent -= 1;
  }
  const double ln2 = 2.0 * atanh_series(1.0 / 3.0);
  const double z = (mantissa - 1.0) / (mantissa + 1.0);
  return 2.0 * atanh_series(z) + exponent * ln2;
}

matevol::Matrix expm_taylor(const matevol::Matrix& a) {
  const Eigen::Index n = a.rows();
  int squarings = 0;
  double norm = one_norm(a);
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const matevol::Matrix scaled = a / std::ldexp(1.0, squarings);
  matevol::Matrix term = matevol::Matrix::Identity(n, n);
  matevol::Matrix sum = term;
  for (int k = 1; k <= 120; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
    if (one_norm(term) <= 1e-19 * one_norm(sum)) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

std::int64_t composition3_count(int total) {
  std::int64_t count = 0;
  for (int a = 0; a <= total; ++a) {
    for (int b = 0; a + b <= total; ++b) ++count;
  }
  return count;
}

void for_each_composition3(int total, const std::function<void(int, int, int)>& visit) {
  for (int a = 0; a <= total; ++a) {
    for (int b = 0; a + b <= total; ++b) visit(a, b, total - a - b);
  }
}

StepFunction quantized_density(std::mt19937& rng, int max_pieces, bool force_constant) {
  std::uniform_int_distribution<int> piece_count(1, max_pieces);
  std::uniform_int_distribution<int> gap(1, 16);
  std::uniform_int_distribution<int> level(0, 1024);
  const int pieces = piece_count(rng);
  std::vector<double> breakpoints;
  std::vector<double> values;
  breakpoints.reserve(pieces + 1);
  values.reserve(pieces);
  breakpoints.push_back(0.0);
  const double shared = level(rng) / 1024.0;
  for (int i = 0; i < pieces; ++i) {
    breakpoints.push_back(breakpoints.back() + gap(rng));
    values.push_back(force_constant ? shared : level(rng) / 1024.0);
  }
  return StepFunction(std::move(breakpoints), std::move(values));
}

CommandResult run_command(const std::string& command_line,
                          const std::filesystem::path& scratch_root) {
  static std::atomic<int> counter{0};
  const std::filesystem::path dir =
      scratch_root / ("run_" + std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  const std::filesystem::path out_path = dir / "stdout.txt";
  const std::filesystem::path err_path = dir / "stderr.txt";
  const std::string full = command_line + " > \"" + out_path.string() + "\" 2> \"" +
                           err_path.string() + "\"";
  const int raw = std::system(full.c_str());
  CommandResult result;
  if (raw != -1 && WIFEXITED(raw)) result.status = WEXITSTATUS(raw);
  result.output = read_file(out_path);
  result.error = read_file(err_path);
  return result;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot write " + path.string());
  stream << content;
}

}  // namespace capdyn::testing
