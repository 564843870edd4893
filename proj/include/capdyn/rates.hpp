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

#ifndef CAPDYN_RATES_HPP
#define CAPDYN_RATES_HPP

#include <span>

#include "capdyn/errors.hpp"
#include "capdyn/step_function.hpp"

namespace capdyn::rates {

/// Temporary (differential) rate of return r(t), piecewise constant over
/// its domain. Rates are per unit time in the dataset's declared unit.
using RateCurve = StepFunction;

/// Positive factor converting one capital unit dated `from` into the
/// equivalent number of units dated `to`. Multiplicative under
/// composition; the factor over a span is exp of the integral of the
/// temporary rate across it.
struct UtilityFactor {
  TimeInstant from{};
  TimeInstant to{};
  double factor{1.0};

  /// Validates factor > 0 (and == 1 when from == to).
  UtilityFactor(TimeInstant from, TimeInstant to, double factor);

  /// The factor for the reversed span; exact reciprocal.
  UtilityFactor reciprocal() const { return {to, from, 1.0 / factor}; }
};

/// Natural logarithm of a utility factor over a span; additive where
/// utility is multiplicative.
struct RangeRate {
  TimeInstant from{};
  TimeInstant to{};
  double value{};
};

/// Discrete-period lower/upper rate pair tied by (1 + lower)(1 - upper) = 1.
/// Lower references the start-of-period balance, upper the end-of-period one.
struct DiscreteRatePair {
  double lower{};
  double upper{};

  /// Validates the duality residual |(1+lower)(1-upper) - 1| <= tol.
  DiscreteRatePair(double lower, double upper, double tol = 1e-12);

  static DiscreteRatePair from_utility(const UtilityFactor& u);
  static DiscreteRatePair from_lower(double lower);
  static DiscreteRatePair from_upper(double upper);
};

/// Utility factor over [from, to] implied by a rate curve: exp of the
/// exact piecewise integral of r. Reversing the span gives the
/// reciprocal factor (discounting). Throws DomainError outside the
/// curve domain.
UtilityFactor utility_from_rate(const RateCurve& curve, TimeInstant from, TimeInstant to);

/// ln of the factor over the same span.
RangeRate range_rate(const UtilityFactor& u);

/// Chains u1 (from -> mid) with u2 (mid -> to). The junction instants
/// must match exactly; throws CompositionError otherwise.
UtilityFactor compose_utility(const UtilityFactor& u1, const UtilityFactor& u2);

/// factor - 1: the per-period rate referencing the start-of-period balance.
double lower_rate(const UtilityFactor& u);

/// 1 - 1/factor: the per-period rate referencing the end-of-period balance.
double upper_rate(const UtilityFactor& u);

/// Map a lower rate to its dual upper rate (and back). The two maps are
/// mutual inverses; the singular points lower == -1 / upper == 1 throw
/// SingularRateError.
double lower_to_upper(double lower);
double upper_to_lower(double upper);

/// p0 * prod(1 + lower_k). Any rate <= -1 throws SingularRateError.
double compound_lower(std::span<const double> lower_rates, double p0);

/// p0 * prod(1 - upper_k)^-1. Any rate >= 1 throws SingularRateError.
double compound_upper(std::span<const double> upper_rates, double p0);

}  // namespace capdyn::rates

#endif  // CAPDYN_RATES_HPP
