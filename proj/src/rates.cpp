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

#include "capdyn/rates.hpp"

#include <cmath>
#include <sstream>

#include "capdyn/errors.hpp"

namespace capdyn::rates {

UtilityFactor::UtilityFactor(TimeInstant from, TimeInstant to, double factor)
    : from(from), to(to), factor(factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    std::ostringstream msg;
    msg << "utility factor must be a positive real, got " << factor;
    throw ValidationError(msg.str());
  }
  if (from == to && factor != 1.0) {
    throw ValidationError("utility factor over an empty span must be 1");
  }
}

DiscreteRatePair::DiscreteRatePair(double lower, double upper, double tol)
    : lower(lower), upper(upper) {
  if (!(lower > -1.0)) throw SingularRateError("lower rate must exceed -1");
  if (!(upper < 1.0)) throw SingularRateError("upper rate must be below 1");
  const double residual = (1.0 + lower) * (1.0 - upper) - 1.0;
  if (std::abs(residual) > tol) {
    std::ostringstream msg;
    msg << "lower/upper rates violate (1+lower)(1-upper)=1, residual " << residual;
    throw ValidationError(msg.str());
  }
}

DiscreteRatePair DiscreteRatePair::from_utility(const UtilityFactor& u) {
  return {lower_rate(u), upper_rate(u)};
}

DiscreteRatePair DiscreteRatePair::from_lower(double lower) {
  return {lower, lower_to_upper(lower)};
}

DiscreteRatePair DiscreteRatePair::from_upper(double upper) {
  return {upper_to_lower(upper), upper};
}

UtilityFactor utility_from_rate(const RateCurve& curve, TimeInstant from, TimeInstant to) {
  // Signed integral: from > to yields the reciprocal (discount) factor.
  return {from, to, std::exp(curve.integrate(from, to))};
}

RangeRate range_rate(const UtilityFactor& u) {
  return {u.from, u.to, std::log(u.factor)};
}

UtilityFactor compose_utility(const UtilityFactor& u1, const UtilityFactor& u2) {
  if (u1.to != u2.from) {
    std::ostringstream msg;
    msg << "cannot compose utilities: first ends at " << u1.to
        << " but second starts at " << u2.from;
    throw CompositionError(msg.str());
  }
  return {u1.from, u2.to, u1.factor * u2.factor};
}

double lower_rate(const UtilityFactor& u) { return u.factor - 1.0; }

double upper_rate(const UtilityFactor& u) { return 1.0 - 1.0 / u.factor; }

double lower_to_upper(double lower) {
  if (lower <= -1.0) {
    throw SingularRateError("lower rate at or below -1 has no dual upper rate");
  }
  return lower / (1.0 + lower);
}

double upper_to_lower(double upper) {
  if (upper >= 1.0) {
    throw SingularRateError("upper rate at or above 1 has no dual lower rate");
  }
  return upper / (1.0 - upper);
}

double compound_lower(std::span<const double> lower_rates, double p0) {
  double p = p0;
  for (double r : lower_rates) {
    if (r <= -1.0) throw SingularRateError("compounding a lower rate at or below -1");
    p *= 1.0 + r;
  }
  return p;
}

double compound_upper(std::span<const double> upper_rates, double p0) {
  double p = p0;
  for (double r : upper_rates) {
    if (r >= 1.0) throw SingularRateError("compounding an upper rate at or above 1");
    p /= 1.0 - r;
  }
  return p;
}

}  // namespace capdyn::rates
