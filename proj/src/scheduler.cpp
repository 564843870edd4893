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

#include "capdyn/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capdyn/errors.hpp"

namespace capdyn::scheduler {

namespace {

// U(reference, t): the factor discounting a unit dated t to the
// reference instant.
double discount_factor(const rates::RateCurve& curve, TimeInstant reference, TimeInstant t) {
  return rates::utility_from_rate(curve, t, reference).factor;
}

void check_constructor_inputs(double loan_amount, TimeInstant loan_time,
                              std::span<const TimeInstant> times) {
  if (!(loan_amount < 0.0)) {
    std::ostringstream msg;
    msg << "loan amount must be negative (an outflow), got " << loan_amount;
    throw SignError(msg.str());
  }
  if (times.empty()) throw ArityError("schedule needs at least one instalment time");
  if (!(loan_time < times.front())) {
    throw ValidationError("instalment times must come after the loan");
  }
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (!(times[i] < times[i + 1])) {
      throw ValidationError("instalment times must be strictly increasing");
    }
  }
}

}  // namespace

InstalmentSchedule::InstalmentSchedule(TimeInstant reference, cashflow::FlowImpulse loan,
                                       std::vector<Instalment> instalments)
    : reference_(reference), loan_(loan), instalments_(std::move(instalments)) {
  if (!(loan_.amount < 0.0)) {
    std::ostringstream msg;
    msg << "loan amount must be negative (an outflow), got " << loan_.amount;
    throw SignError(msg.str());
  }
  if (instalments_.empty()) throw ArityError("schedule needs at least one instalment");
  TimeInstant prev = loan_.at;
  for (const Instalment& inst : instalments_) {
    if (!(inst.at > prev)) {
      throw ValidationError(
          "instalment times must be strictly increasing and after the loan");
    }
    if (!std::isfinite(inst.face)) throw ValidationError("instalment face is not finite");
    prev = inst.at;
  }
}

DiscountedSchedule::DiscountedSchedule(TimeInstant reference,
                                       std::vector<DiscountedEntry> entries)
    : reference_(reference), entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw ArityError("discounted schedule needs the loan entry and at least one repayment");
  }
}

double DiscountedSchedule::balance_residual() const {
  double total = 0.0;
  for (const DiscountedEntry& e : entries_) total += e.amount;
  return total;
}

DiscountedSchedule discount_schedule(const InstalmentSchedule& schedule,
                                     const rates::RateCurve& curve) {
  const TimeInstant tau = schedule.reference();
  std::vector<DiscountedEntry> entries;
  entries.reserve(schedule.size() + 1);
  entries.push_back({schedule.loan().at,
                     discount_factor(curve, tau, schedule.loan().at) * schedule.loan().amount});
  for (const Instalment& inst : schedule.instalments()) {
    entries.push_back({inst.at, discount_factor(curve, tau, inst.at) * inst.face});
  }
  return {tau, std::move(entries)};
}

InstalmentSchedule minmax_schedule(double loan_amount, TimeInstant loan_time,
                                   std::span<const TimeInstant> times,
                                   const rates::RateCurve& curve, TimeInstant reference) {
  check_constructor_inputs(loan_amount, loan_time, times);
  const double discounted_loan = discount_factor(curve, reference, loan_time) * loan_amount;
  const double per_period = -discounted_loan / static_cast<double>(times.size());
  std::vector<Instalment> instalments;
  instalments.reserve(times.size());
  for (TimeInstant t : times) {
    instalments.push_back({t, per_period / discount_factor(curve, reference, t)});
  }
  return {reference, {loan_time, loan_amount}, std::move(instalments)};
}

InstalmentSchedule nominally_fixed_schedule(double loan_amount, TimeInstant loan_time,
                                            std::span<const TimeInstant> times,
                                            const rates::RateCurve& curve,
                                            TimeInstant reference) {
  check_constructor_inputs(loan_amount, loan_time, times);
  const double discounted_loan = discount_factor(curve, reference, loan_time) * loan_amount;
  double factor_sum = 0.0;
  for (TimeInstant t : times) factor_sum += discount_factor(curve, reference, t);
  if (!(factor_sum > 0.0)) {
    throw ValidationError("discount factors over the instalment times sum to zero");
  }
  const double face = -discounted_loan / factor_sum;
  std::vector<Instalment> instalments;
  instalments.reserve(times.size());
  for (TimeInstant t : times) instalments.push_back({t, face});
  return {reference, {loan_time, loan_amount}, std::move(instalments)};
}

RiskReport risk_report(const DiscountedSchedule& discounted) {
  const auto& entries = discounted.entries();
  if (entries.size() < 2) throw ArityError("risk report needs at least one repayment entry");
  const std::size_t n = entries.size() - 1;

  double mean = 0.0;
  for (std::size_t k = 1; k < entries.size(); ++k) mean += entries[k].amount;
  mean /= static_cast<double>(n);

  double variance = 0.0;
  double max_entry = entries[1].amount;
  for (std::size_t k = 1; k < entries.size(); ++k) {
    const double dev = entries[k].amount - mean;
    variance += dev * dev;
    max_entry = std::max(max_entry, entries[k].amount);
  }
  variance /= static_cast<double>(n);
  return {max_entry, mean, variance};
}

cashflow::FlowProfile discounted_flow(const DiscountedSchedule& discounted) {
  std::vector<cashflow::FlowImpulse> impulses;
  impulses.reserve(discounted.entries().size());
  for (const DiscountedEntry& e : discounted.entries()) impulses.push_back({e.at, e.amount});
  return {std::move(impulses), std::nullopt, discounted.entries().front().at,
          discounted.entries().back().at};
}

}  // namespace capdyn::scheduler
