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

#ifndef CAPDYN_SCHEDULER_HPP
#define CAPDYN_SCHEDULER_HPP

#include <span>
#include <vector>

#include "capdyn/cashflow.hpp"
#include "capdyn/rates.hpp"

namespace capdyn::scheduler {

/// One repayment: its date and face (nominal) amount.
struct Instalment {
  TimeInstant at{};
  double face{};
};

/// A loan paid out at t_0 (negative amount) followed by N >= 1 dated
/// repayments with strictly increasing times after t_0. Face amounts are
/// nominal; discounting to the reference instant happens separately.
class InstalmentSchedule {
 public:
  InstalmentSchedule(TimeInstant reference, cashflow::FlowImpulse loan,
                     std::vector<Instalment> instalments);

  TimeInstant reference() const { return reference_; }
  const cashflow::FlowImpulse& loan() const { return loan_; }
  const std::vector<Instalment>& instalments() const { return instalments_; }
  std::size_t size() const { return instalments_.size(); }

 private:
  TimeInstant reference_;
  cashflow::FlowImpulse loan_;
  std::vector<Instalment> instalments_;
};

struct DiscountedEntry {
  TimeInstant at{};
  double amount{};
};

/// A schedule expressed in capital units of the reference instant.
/// entries()[0] is the discounted loan; entries()[1..N] the discounted
/// repayments.
class DiscountedSchedule {
 public:
  DiscountedSchedule(TimeInstant reference, std::vector<DiscountedEntry> entries);

  TimeInstant reference() const { return reference_; }
  const std::vector<DiscountedEntry>& entries() const { return entries_; }
  std::size_t repayment_count() const { return entries_.size() - 1; }

  /// Sum of all discounted entries including the loan; ~0 for a
  /// balanced schedule.
  double balance_residual() const;

 private:
  TimeInstant reference_;
  std::vector<DiscountedEntry> entries_;
};

/// Deterministic risk statistics of the discounted repayments (the loan
/// entry is excluded). variance_risk is the population average of the
/// squared deviations from the mean; it vanishes exactly when all
/// discounted repayments are equal.
struct RiskReport {
  double max_discounted{};
  double mean_discounted{};
  double variance_risk{};
};

/// Multiplies each amount by the utility factor carrying it to the
/// schedule's reference instant. Domain errors from the rate curve
/// propagate.
DiscountedSchedule discount_schedule(const InstalmentSchedule& schedule,
                                     const rates::RateCurve& curve);

/// The minmax-optimal credit: all repayments equal in discounted value
/// (-phi_0/N each), i.e. really fixed instalments. The output flow is
/// balanced by construction, and the face values do not depend on the
/// reference instant.
InstalmentSchedule minmax_schedule(double loan_amount, TimeInstant loan_time,
                                   std::span<const TimeInstant> times,
                                   const rates::RateCurve& curve, TimeInstant reference);

/// The dual construction: all repayments equal in face value — the common
/// commercial credit. Balanced by construction; degenerates to
/// minmax_schedule on a zero rate curve.
InstalmentSchedule nominally_fixed_schedule(double loan_amount, TimeInstant loan_time,
                                            std::span<const TimeInstant> times,
                                            const rates::RateCurve& curve,
                                            TimeInstant reference);

/// Statistics over the discounted repayments; throws ArityError when the
/// schedule has no repayment entries.
RiskReport risk_report(const DiscountedSchedule& discounted);

/// The schedule's capital flow in reference-instant units: one impulse
/// per discounted entry, horizon spanning loan to last instalment.
cashflow::FlowProfile discounted_flow(const DiscountedSchedule& discounted);

}  // namespace capdyn::scheduler

#endif  // CAPDYN_SCHEDULER_HPP
