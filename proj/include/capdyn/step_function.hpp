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

#ifndef CAPDYN_STEP_FUNCTION_HPP
#define CAPDYN_STEP_FUNCTION_HPP

#include <cstddef>
#include <vector>

namespace capdyn {

/// A point on the time axis, in years or abstract periods. The unit is
/// declared once per dataset; the library never applies calendar
/// conventions.
using TimeInstant = double;

/// Piecewise-constant real function of time on a closed domain
/// [breakpoints.front(), breakpoints.back()].
///
/// Pieces are right-open ([b_i, b_{i+1})) except the last, which is
/// closed. Integrals over the pieces are exact sums of value * length,
/// which keeps the scalar rate algebra free of quadrature error.
class StepFunction {
 public:
  /// breakpoints must be strictly increasing with one more entry than
  /// values; all entries must be finite.
  StepFunction(std::vector<TimeInstant> breakpoints, std::vector<double> values);

  /// Single piece of the given value on [t_min, t_max].
  static StepFunction constant(double value, TimeInstant t_min, TimeInstant t_max);

  /// Value of the piece containing t. Throws DomainError outside the domain.
  double value_at(TimeInstant t) const;

  /// Exact signed integral from `from` to `to`; reversing the endpoints
  /// negates the result. Both instants must lie in the domain.
  double integrate(TimeInstant from, TimeInstant to) const;

  TimeInstant domain_min() const { return breakpoints_.front(); }
  TimeInstant domain_max() const { return breakpoints_.back(); }
  bool contains(TimeInstant t) const {
    return t >= domain_min() && t <= domain_max();
  }

  std::size_t piece_count() const { return values_.size(); }
  const std::vector<TimeInstant>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

  /// True iff all pieces carry the same value.
  bool is_constant() const;

  double max_value() const;

 private:
  std::size_t piece_index(TimeInstant t) const;

  std::vector<TimeInstant> breakpoints_;
  std::vector<double> values_;
};

}  // namespace capdyn

#endif  // CAPDYN_STEP_FUNCTION_HPP
