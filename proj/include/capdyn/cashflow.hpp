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

#ifndef CAPDYN_CASHFLOW_HPP
#define CAPDYN_CASHFLOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "capdyn/errors.hpp"
#include "capdyn/step_function.hpp"

namespace capdyn::cashflow {

/// A dated lump transfer, in capital units of the flow's reference
/// instant. Negative amounts are outflows (loans), positive inflows
/// (repayments).
struct FlowImpulse {
  TimeInstant at{};
  double amount{};
};

/// Intensity of capital flow on an account over a horizon: a list of
/// dated impulses plus an optional piecewise-constant density (capital
/// units per unit time). Impulses are kept exact rather than smeared
/// into narrow densities.
class FlowProfile {
 public:
  /// Impulse times must lie within [horizon_begin, horizon_end]; a
  /// density, when present, must cover the horizon. An absent density
  /// is read as identically zero.
  FlowProfile(std::vector<FlowImpulse> impulses, std::optional<StepFunction> density,
              TimeInstant horizon_begin, TimeInstant horizon_end);

  const std::vector<FlowImpulse>& impulses() const { return impulses_; }
  const std::optional<StepFunction>& density() const { return density_; }
  TimeInstant horizon_begin() const { return horizon_begin_; }
  TimeInstant horizon_end() const { return horizon_end_; }
  double horizon_length() const { return horizon_end_ - horizon_begin_; }

  /// Total signed flow over the horizon: sum of impulses plus the
  /// density integral.
  double total_flow() const;

  /// The pointwise negation (impulse amounts and density values flipped).
  FlowProfile negated() const;

 private:
  std::vector<FlowImpulse> impulses_;
  std::optional<StepFunction> density_;
  TimeInstant horizon_begin_;
  TimeInstant horizon_end_;
};

struct TrajectorySample {
  TimeInstant t{};
  double balance{};
};

/// Sampled account-balance path. Samples are strictly time-ascending;
/// the first sample carries the initial balance. Balances are in
/// capital units of `reference`.
class BalanceTrajectory {
 public:
  BalanceTrajectory(TimeInstant reference, std::vector<TrajectorySample> samples);

  TimeInstant reference() const { return reference_; }
  const std::vector<TrajectorySample>& samples() const { return samples_; }
  double initial_balance() const { return samples_.front().balance; }
  double final_balance() const { return samples_.back().balance; }

 private:
  TimeInstant reference_;
  std::vector<TrajectorySample> samples_;
};

/// A transfer between two accounts: the flow credits `to_account` and
/// debits `from_account` with the pointwise negation, so the two induced
/// intensities sum to zero.
struct PairedTransfer {
  std::string from_account;
  std::string to_account;
  FlowProfile flow;

  /// The flow this transfer induces on the given account: `flow` for the
  /// receiving account, its negation for the paying one, and an empty
  /// profile (same horizon) for anyone else.
  FlowProfile induced_flow(const std::string& account) const;
};

/// Balance path from p0 at t1 through t2. The balance grows linearly
/// under constant density and jumps by the impulse amounts; a jump is
/// attributed at its instant and the path is right-continuous, so the
/// window covers impulses in (t1, t2]. Samples are emitted at t1, t2,
/// every impulse instant and every density breakpoint in between.
BalanceTrajectory integrate_flow(const FlowProfile& flow, double p0,
                                 TimeInstant t1, TimeInstant t2);

/// True iff the total signed flow over the horizon has magnitude <= tol.
bool is_balanced(const FlowProfile& flow, double tol);

/// Throws SelfTransferError when the two accounts coincide.
PairedTransfer make_paired_transfer(std::string from_account, std::string to_account,
                                    FlowProfile flow);

/// Total flow divided by the horizon length T (T > 0 required).
double mean_intensity(const FlowProfile& flow);

/// Largest density value over the horizon. Defined only for pure-density
/// flows: impulses throw UndefinedPeakError (a Dirac impulse has no
/// finite peak). An absent density peaks at zero.
double peak_intensity(const FlowProfile& flow);

/// |peak(f1) - peak(f2)|: the peak-level risk distance between two
/// transport profiles. A pseudometric: profiles of equal peak are at
/// distance zero regardless of shape.
double transport_risk_distance(const FlowProfile& f1, const FlowProfile& f2);

}  // namespace capdyn::cashflow

#endif  // CAPDYN_CASHFLOW_HPP
