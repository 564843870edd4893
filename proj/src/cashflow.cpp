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

#include "capdyn/cashflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "capdyn/errors.hpp"

namespace capdyn::cashflow {

FlowProfile::FlowProfile(std::vector<FlowImpulse> impulses,
                         std::optional<StepFunction> density,
                         TimeInstant horizon_begin, TimeInstant horizon_end)
    : impulses_(std::move(impulses)),
      density_(std::move(density)),
      horizon_begin_(horizon_begin),
      horizon_end_(horizon_end) {
  if (!std::isfinite(horizon_begin_) || !std::isfinite(horizon_end_) ||
      !(horizon_begin_ <= horizon_end_)) {
    throw ValidationError("flow horizon must be a finite, ordered interval");
  }
  for (const FlowImpulse& imp : impulses_) {
    if (!std::isfinite(imp.amount) || !std::isfinite(imp.at)) {
      throw ValidationError("flow impulse with non-finite time or amount");
    }
    if (imp.at < horizon_begin_ || imp.at > horizon_end_) {
      std::ostringstream msg;
      msg << "impulse at " << imp.at << " outside horizon [" << horizon_begin_
          << ", " << horizon_end_ << "]";
      throw ValidationError(msg.str());
    }
  }
  if (density_ &&
      (density_->domain_min() > horizon_begin_ || density_->domain_max() < horizon_end_)) {
    throw ValidationError("flow density does not cover the horizon");
  }
  std::stable_sort(impulses_.begin(), impulses_.end(),
                   [](const FlowImpulse& a, const FlowImpulse& b) { return a.at < b.at; });
}

double FlowProfile::total_flow() const {
  double total = 0.0;
  for (const FlowImpulse& imp : impulses_) total += imp.amount;
  if (density_) total += density_->integrate(horizon_begin_, horizon_end_);
  return total;
}

FlowProfile FlowProfile::negated() const {
  std::vector<FlowImpulse> neg_impulses;
  neg_impulses.reserve(impulses_.size());
  for (const FlowImpulse& imp : impulses_) neg_impulses.push_back({imp.at, -imp.amount});
  std::optional<StepFunction> neg_density;
  if (density_) {
    std::vector<double> values = density_->values();
    for (double& v : values) v = -v;
    neg_density.emplace(density_->breakpoints(), std::move(values));
  }
  return {std::move(neg_impulses), std::move(neg_density), horizon_begin_, horizon_end_};
}

BalanceTrajectory::BalanceTrajectory(TimeInstant reference,
                                     std::vector<TrajectorySample> samples)
    : reference_(reference), samples_(std::move(samples)) {
  if (samples_.empty()) throw ValidationError("balance trajectory needs at least one sample");
  for (std::size_t i = 0; i + 1 < samples_.size(); ++i) {
    if (!(samples_[i].t < samples_[i + 1].t)) {
      throw ValidationError("trajectory sample times must be strictly increasing");
    }
  }
}

FlowProfile PairedTransfer::induced_flow(const std::string& account) const {
  if (account == to_account) return flow;
  if (account == from_account) return flow.negated();
  return {{}, std::nullopt, flow.horizon_begin(), flow.horizon_end()};
}

BalanceTrajectory integrate_flow(const FlowProfile& flow, double p0,
                                 TimeInstant t1, TimeInstant t2) {
  if (!(t1 <= t2)) throw DomainError("integration window must be ordered");
  if (t1 < flow.horizon_begin() || t2 > flow.horizon_end()) {
    std::ostringstream msg;
    msg << "integration window [" << t1 << ", " << t2 << "] outside horizon ["
        << flow.horizon_begin() << ", " << flow.horizon_end() << "]";
    throw DomainError(msg.str());
  }

  // Sample instants: the window edges, impulse times and density
  // breakpoints strictly inside the window.
  std::vector<TimeInstant> instants{t1, t2};
  for (const FlowImpulse& imp : flow.impulses()) {
    if (imp.at > t1 && imp.at < t2) instants.push_back(imp.at);
  }
  if (flow.density()) {
    for (TimeInstant b : flow.density()->breakpoints()) {
      if (b > t1 && b < t2) instants.push_back(b);
    }
  }
  std::sort(instants.begin(), instants.end());
  instants.erase(std::unique(instants.begin(), instants.end()), instants.end());

  std::vector<TrajectorySample> samples;
  samples.reserve(instants.size());
  double balance = p0;
  TimeInstant prev = t1;
  for (TimeInstant t : instants) {
    if (t > prev && flow.density()) balance += flow.density()->integrate(prev, t);
    if (t > t1) {
      // Jumps attributed at their instant; samples are post-jump values.
      for (const FlowImpulse& imp : flow.impulses()) {
        if (imp.at == t) balance += imp.amount;
      }
    }
    samples.push_back({t, balance});
    prev = t;
  }
  return {t1, std::move(samples)};
}

bool is_balanced(const FlowProfile& flow, double tol) {
  return std::abs(flow.total_flow()) <= tol;
}

PairedTransfer make_paired_transfer(std::string from_account, std::string to_account,
                                    FlowProfile flow) {
  if (from_account == to_account) {
    throw SelfTransferError("paired transfer endpoints must differ, got '" +
                            from_account + "' twice");
  }
  return {std::move(from_account), std::move(to_account), std::move(flow)};
}

double mean_intensity(const FlowProfile& flow) {
  if (!(flow.horizon_length() > 0.0)) {
    throw DomainError("mean intensity needs a horizon of positive length");
  }
  return flow.total_flow() / flow.horizon_length();
}

double peak_intensity(const FlowProfile& flow) {
  if (!flow.impulses().empty()) {
    throw UndefinedPeakError("peak intensity is undefined for flows with impulses");
  }
  if (!(flow.horizon_length() > 0.0)) {
    throw DomainError("peak intensity needs a horizon of positive length");
  }
  if (!flow.density()) return 0.0;
  // Only pieces overlapping the horizon with positive length count.
  const StepFunction& d = *flow.density();
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d.piece_count(); ++i) {
    const double lo = std::max(flow.horizon_begin(), d.breakpoints()[i]);
    const double hi = std::min(flow.horizon_end(), d.breakpoints()[i + 1]);
    if (hi > lo) peak = std::max(peak, d.values()[i]);
  }
  return peak;
}

double transport_risk_distance(const FlowProfile& f1, const FlowProfile& f2) {
  return std::abs(peak_intensity(f1) - peak_intensity(f2));
}

}  // namespace capdyn::cashflow
