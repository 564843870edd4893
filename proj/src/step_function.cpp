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

#include "capdyn/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capdyn/errors.hpp"

namespace capdyn {

StepFunction::StepFunction(std::vector<TimeInstant> breakpoints,
                           std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.size() < 2) {
    throw ValidationError("step function needs at least two breakpoints");
  }
  if (values_.size() + 1 != breakpoints_.size()) {
    std::ostringstream msg;
    msg << "step function with " << breakpoints_.size()
        << " breakpoints needs " << breakpoints_.size() - 1 << " values, got "
        << values_.size();
    throw ValidationError(msg.str());
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw ValidationError("step function breakpoints must be strictly increasing");
    }
  }
  for (TimeInstant b : breakpoints_) {
    if (!std::isfinite(b)) throw ValidationError("step function breakpoint is not finite");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("step function value is not finite");
  }
}

StepFunction StepFunction::constant(double value, TimeInstant t_min, TimeInstant t_max) {
  return StepFunction({t_min, t_max}, {value});
}

std::size_t StepFunction::piece_index(TimeInstant t) const {
  if (!contains(t)) {
    std::ostringstream msg;
    msg << "instant " << t << " outside curve domain [" << domain_min() << ", "
        << domain_max() << "]";
    throw DomainError(msg.str());
  }
  // First breakpoint strictly greater than t; the piece is the one before it.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == breakpoints_.size()) idx = breakpoints_.size() - 1;  // t == domain_max
  return idx - 1;
}

double StepFunction::value_at(TimeInstant t) const { return values_[piece_index(t)]; }

double StepFunction::integrate(TimeInstant from, TimeInstant to) const {
  if (from > to) return -integrate(to, from);
  if (!contains(from) || !contains(to)) {
    std::ostringstream msg;
    msg << "integration span [" << from << ", " << to
        << "] outside curve domain [" << domain_min() << ", " << domain_max() << "]";
    throw DomainError(msg.str());
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lo = std::max(from, breakpoints_[i]);
    const double hi = std::min(to, breakpoints_[i + 1]);
    if (hi > lo) total += values_[i] * (hi - lo);
  }
  return total;
}

bool StepFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == values_.front(); });
}

double StepFunction::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

}  // namespace capdyn
