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

#ifndef CAPDYN_TESTS_SUPPORT_ORACLES_HPP
#define CAPDYN_TESTS_SUPPORT_ORACLES_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <string>

#include "capdyn/matevol.hpp"
#include "capdyn/step_function.hpp"

// Reference implementations kept deliberately independent of the library
// code they check: different algorithms, no shared helpers.
namespace capdyn::testing {

/// Composite trapezoid quadrature of f over [a, b] with n panels.
double trapezoid(const std::function<double(double)>& f, double a, double b, int n);

/// Natural logarithm via argument reduction and the atanh power series;
/// uses no <cmath> transcendental calls.
double ln_series(double x);

/// Matrix exponential by scaling, truncated Taylor summation, and
/// repeated squaring; independent of the production Pade core.
matevol::Matrix expm_taylor(const matevol::Matrix& a);

/// Number of ordered triples of nonnegative integers summing to total.
std::int64_t composition3_count(int total);

/// Visits every ordered triple (a, b, c) of nonnegative integers with
/// a + b + c == total.
void for_each_composition3(int total, const std::function<void(int, int, int)>& visit);

/// Random piecewise density whose values are multiples of 1/1024 and
/// whose piece lengths are integers in [1, 16]: every integral and mean
/// below the bridge-theorem scale is then exact in double precision.
/// `force_constant` collapses all pieces to one shared value.
StepFunction quantized_density(std::mt19937& rng, int max_pieces, bool force_constant);

struct CommandResult {
  int status = -1;
  std::string output;
  std::string error;
};

/// Runs a shell command, capturing stdout/stderr through files in a
/// per-call scratch directory under `scratch_root`.
CommandResult run_command(const std::string& command_line,
                          const std::filesystem::path& scratch_root);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace capdyn::testing

#endif  // CAPDYN_TESTS_SUPPORT_ORACLES_HPP
