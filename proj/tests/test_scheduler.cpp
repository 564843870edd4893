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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "capdyn/errors.hpp"
#include "capdyn/scheduler.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

namespace {

using capdyn::StepFunction;
using capdyn::cashflow::FlowImpulse;
using namespace capdyn::scheduler;
using capdyn::rates::RateCurve;
namespace oracle = capdyn::testing;

const RateCurve kZeroCurve = StepFunction::constant(0.0, -10.0, 100.0);

std::vector<double> face_values(const InstalmentSchedule& schedule) {
  std::vector<double> faces;
  for (const Instalment& instalment : schedule.instalments()) faces.push_back(instalment.face);
  return faces;
}

}  // namespace

TEST_SUITE("scheduler") {

TEST_CASE("schedule construction enforces sign, arity and time order") {
  const std::vector<Instalment> one{{1.0, 100.0}};
  CHECK_THROWS_AS(InstalmentSchedule(0.0, FlowImpulse{0.0, 100.0}, one), capdyn::SignError);
  CHECK_THROWS_AS(InstalmentSchedule(0.0, FlowImpulse{0.0, 0.0}, one), capdyn::SignError);
  CHECK_THROWS_AS(InstalmentSchedule(0.0, FlowImpulse{0.0, -100.0}, {}), capdyn::ArityError);
  CHECK_THROWS_AS(InstalmentSchedule(0.0, FlowImpulse{2.0, -100.0}, one),
                  capdyn::ValidationError);
  const std::vector<Instalment> unsorted{{2.0, 50.0}, {1.0, 50.0}};
  CHECK_THROWS_AS(InstalmentSchedule(0.0, FlowImpulse{0.0, -100.0}, unsorted),
                  capdyn::ValidationError);
  CHECK_NOTHROW(InstalmentSchedule(0.0, FlowImpulse{0.0, -100.0}, one));
}

TEST_CASE("discounting with a zero curve is the identity") {
  const InstalmentSchedule schedule(
      0.0, FlowImpulse{0.0, -1000.0},
      {{1.0, 250.0}, {2.0, 250.0}, {3.0, 250.0}, {4.0, 250.0}});
  const DiscountedSchedule discounted = discount_schedule(schedule, kZeroCurve);
  REQUIRE(discounted.entries().size() == 5);
  CHECK(discounted.entries()[0].amount == -1000.0);
  for (std::size_t k = 1; k < 5; ++k) CHECK(discounted.entries()[k].amount == 250.0);
  CHECK(discounted.balance_residual() == 0.0);
}

TEST_CASE("flat-rate discounting inverts the growth factor") {
  const RateCurve flat = StepFunction::constant(0.1, 0.0, 10.0);
  const double face = 100.0 * std::exp(0.1);
  CHECK(face == doctest::Approx(110.5170918).epsilon(1e-9));
  const InstalmentSchedule schedule(0.0, FlowImpulse{0.0, -100.0}, {{1.0, face}});
  const DiscountedSchedule discounted = discount_schedule(schedule, flat);
  CHECK(discounted.entries()[1].amount == doctest::Approx(100.0).epsilon(1e-13));
}

TEST_CASE("an instalment at the reference instant discounts to its face") {
  const RateCurve flat = StepFunction::constant(0.07, 0.0, 10.0);
  const InstalmentSchedule schedule(2.0, FlowImpulse{0.0, -500.0},
                                    {{1.0, 200.0}, {2.0, 321.5}});
  const DiscountedSchedule discounted = discount_schedule(schedule, flat);
  CHECK(discounted.entries()[2].amount == 321.5);
}

TEST_CASE("minmax schedule on a zero curve splits the loan evenly") {
  const std::vector<double> times{1.0, 2.0, 3.0, 4.0};
  const InstalmentSchedule schedule = minmax_schedule(-1000.0, 0.0, times, kZeroCurve, 0.0);
  for (double face : face_values(schedule)) CHECK(face == 250.0);
  const DiscountedSchedule discounted = discount_schedule(schedule, kZeroCurve);
  CHECK(discounted.balance_residual() == 0.0);
  CHECK(capdyn::cashflow::is_balanced(discounted_flow(discounted), 1e-10));
}

TEST_CASE("minmax schedule equalizes discounted repayments") {
  const double r = 0.07;
  const RateCurve flat = StepFunction::constant(r, 0.0, 10.0);
  const std::vector<double> times{1.0, 2.0};
  const InstalmentSchedule schedule = minmax_schedule(-1000.0, 0.0, times, flat, 0.0);
  const DiscountedSchedule discounted = discount_schedule(schedule, flat);
  CHECK(discounted.entries()[1].amount == doctest::Approx(500.0).epsilon(1e-12));
  CHECK(discounted.entries()[2].amount == doctest::Approx(500.0).epsilon(1e-12));
  const std::vector<double> faces = face_values(schedule);
  CHECK(faces[0] == doctest::Approx(500.0 * std::exp(r)).epsilon(1e-12));
  CHECK(faces[1] == doctest::Approx(500.0 * std::exp(2.0 * r)).epsilon(1e-12));
  CHECK(std::abs(discounted.balance_residual()) <= 1e-10);
}

TEST_CASE("schedule constructors reject bad loans and empty times") {
  const std::vector<double> times{1.0, 2.0};
  CHECK_THROWS_AS(minmax_schedule(1000.0, 0.0, times, kZeroCurve, 0.0), capdyn::SignError);
  CHECK_THROWS_AS(minmax_schedule(-1000.0, 0.0, {}, kZeroCurve, 0.0), capdyn::ArityError);
  CHECK_THROWS_AS(nominally_fixed_schedule(1000.0, 0.0, times, kZeroCurve, 0.0),
                  capdyn::SignError);
  CHECK_THROWS_AS(nominally_fixed_schedule(-1000.0, 0.0, {}, kZeroCurve, 0.0),
                  capdyn::ArityError);
}

TEST_CASE("face values do not depend on the reference instant") {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> rate(-0.3, 0.3);
  const RateCurve curve({0.0, 1.5, 4.0, 10.0}, {rate(rng), rate(rng), rate(rng)});
  const std::vector<double> times{1.0, 2.0, 5.5, 8.0};
  for (bool nominal : {false, true}) {
    auto build = [&](double reference) {
      return nominal ? nominally_fixed_schedule(-1000.0, 0.0, times, curve, reference)
                     : minmax_schedule(-1000.0, 0.0, times, curve, reference);
    };
    const std::vector<double> at_03 = face_values(build(0.3));
    const std::vector<double> at_77 = face_values(build(7.7));
    REQUIRE(at_03.size() == at_77.size());
    for (std::size_t k = 0; k < at_03.size(); ++k) {
      CHECK(at_77[k] == doctest::Approx(at_03[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("nominally fixed schedule keeps one face value") {
  const RateCurve flat = StepFunction::constant(0.1, 0.0, 10.0);
  const std::vector<double> times{1.0, 2.0};
  const InstalmentSchedule schedule =
      nominally_fixed_schedule(-1000.0, 0.0, times, flat, 0.0);
  const double expected = 1000.0 / (std::exp(-0.1) + std::exp(-0.2));
  for (double face : face_values(schedule)) {
    CHECK(face == doctest::Approx(expected).epsilon(1e-12));
  }
  const DiscountedSchedule discounted = discount_schedule(schedule, flat);
  CHECK(std::abs(discounted.balance_residual()) <= 1e-10);
}

TEST_CASE("zero curve collapses nominal and minmax schedules") {
  const std::vector<double> times{1.0, 3.0, 4.5};
  const std::vector<double> minmax =
      face_values(minmax_schedule(-900.0, 0.0, times, kZeroCurve, 0.0));
  const std::vector<double> nominal =
      face_values(nominally_fixed_schedule(-900.0, 0.0, times, kZeroCurve, 0.0));
  REQUIRE(minmax.size() == nominal.size());
  for (std::size_t k = 0; k < minmax.size(); ++k) CHECK(minmax[k] == nominal[k]);
}

TEST_CASE("single-instalment schedules degenerate to one repayment") {
  const RateCurve flat = StepFunction::constant(0.04, 0.0, 10.0);
  const std::vector<double> times{3.0};
  const std::vector<double> minmax =
      face_values(minmax_schedule(-1000.0, 0.0, times, flat, 1.0));
  const std::vector<double> nominal =
      face_values(nominally_fixed_schedule(-1000.0, 0.0, times, flat, 1.0));
  REQUIRE(minmax.size() == 1);
  REQUIRE(nominal.size() == 1);
  CHECK(minmax[0] == doctest::Approx(1000.0 * std::exp(0.04 * 3.0)).epsilon(1e-12));
  CHECK(nominal[0] == doctest::Approx(minmax[0]).epsilon(1e-14));
}

TEST_CASE("risk report statistics exclude the loan entry") {
  const DiscountedSchedule equal(
      0.0, {{0.0, -1000.0}, {1.0, 250.0}, {2.0, 250.0}, {3.0, 250.0}, {4.0, 250.0}});
  const RiskReport equal_report = risk_report(equal);
  CHECK(equal_report.mean_discounted == 250.0);
  CHECK(equal_report.max_discounted == 250.0);
  CHECK(equal_report.variance_risk == 0.0);

  const DiscountedSchedule skew(0.0, {{0.0, -400.0}, {1.0, 100.0}, {2.0, 300.0}});
  const RiskReport skew_report = risk_report(skew);
  CHECK(skew_report.mean_discounted == 200.0);
  CHECK(skew_report.variance_risk == 10000.0);
  CHECK(skew_report.max_discounted == 300.0);
}

TEST_CASE("discounted schedules require at least one repayment entry") {
  CHECK_THROWS_AS(DiscountedSchedule(0.0, {{0.0, -100.0}}), capdyn::ArityError);
  CHECK_THROWS_AS(DiscountedSchedule(0.0, {}), capdyn::ArityError);
}

TEST_CASE("both constructors balance random schedules at 1e-10") {
  std::mt19937 rng(90210);
  std::uniform_int_distribution<int> count(1, 50);
  std::uniform_real_distribution<double> gap(0.05, 1.0);
  std::uniform_real_distribution<double> rate(-0.5, 0.5);
  std::uniform_real_distribution<double> loan(-10000.0, -10.0);
  for (int trial = 0; trial < 300; ++trial) {
    const RateCurve curve =
        trial % 2 == 0 ? StepFunction::constant(rate(rng), -1.0, 60.0)
                       : RateCurve({-1.0, 5.0, 20.0, 60.0}, {rate(rng), rate(rng), rate(rng)});
    const int n = count(rng);
    std::vector<double> times;
    double t = 0.0;
    for (int k = 0; k < n; ++k) {
      t += gap(rng);
      times.push_back(t);
    }
    const double amount = loan(rng);
    const InstalmentSchedule minmax = minmax_schedule(amount, 0.0, times, curve, 0.0);
    const InstalmentSchedule nominal =
        nominally_fixed_schedule(amount, 0.0, times, curve, 0.0);
    const double scale = std::abs(amount);
    CHECK(std::abs(discount_schedule(minmax, curve).balance_residual()) <= 1e-10 * scale);
    CHECK(std::abs(discount_schedule(nominal, curve).balance_residual()) <= 1e-10 * scale);
  }
}

TEST_CASE("minmax schedules carry zero variance risk") {
  const RateCurve curve({0.0, 2.0, 6.0}, {0.12, -0.08});
  const std::vector<double> times{1.0, 2.5, 4.0, 5.5};
  const InstalmentSchedule minmax = minmax_schedule(-2000.0, 0.0, times, curve, 0.0);
  const RiskReport minmax_report = risk_report(discount_schedule(minmax, curve));
  CHECK(minmax_report.variance_risk <= 1e-18);

  const InstalmentSchedule nominal =
      nominally_fixed_schedule(-2000.0, 0.0, times, curve, 0.0);
  const RiskReport nominal_report = risk_report(discount_schedule(nominal, curve));
  CHECK(nominal_report.variance_risk >= minmax_report.variance_risk);
  CHECK(nominal_report.max_discounted >= nominal_report.mean_discounted);
}

TEST_CASE("grid enumeration confirms the minmax optimum for N = 3") {
  // Balanced nonnegative schedules on a zero curve with discounted sum
  // 300 and grid step 5: the equal point (100, 100, 100) must be the
  // unique minimizer of both the max instalment and the variance risk.
  const double step = 5.0;
  const int units = 60;
  REQUIRE(oracle::composition3_count(units) == 1891);

  double best_max = std::numeric_limits<double>::infinity();
  double best_variance = std::numeric_limits<double>::infinity();
  int max_minimizers = 0;
  int variance_minimizers = 0;
  oracle::for_each_composition3(units, [&](int a, int b, int c) {
    const double x = step * a;
    const double y = step * b;
    const double z = step * c;
    const double mean = (x + y + z) / 3.0;
    const double variance = ((x - mean) * (x - mean) + (y - mean) * (y - mean) +
                             (z - mean) * (z - mean)) /
                            3.0;
    const double peak = std::max({x, y, z});
    if (peak < best_max) {
      best_max = peak;
      max_minimizers = 1;
    } else if (peak == best_max) {
      ++max_minimizers;
    }
    if (variance < best_variance) {
      best_variance = variance;
      variance_minimizers = 1;
    } else if (variance == best_variance) {
      ++variance_minimizers;
    }
  });
  CHECK(best_max == 100.0);
  CHECK(max_minimizers == 1);
  CHECK(best_variance == 0.0);
  CHECK(variance_minimizers == 1);

  const std::vector<double> times{1.0, 2.0, 3.0};
  const InstalmentSchedule minmax = minmax_schedule(-300.0, 0.0, times, kZeroCurve, 0.0);
  for (double face : face_values(minmax)) CHECK(face == 100.0);
}

TEST_CASE("discounted flow mirrors the schedule as dated impulses") {
  const InstalmentSchedule schedule(0.0, FlowImpulse{0.0, -300.0},
                                    {{1.0, 100.0}, {2.0, 100.0}, {3.0, 100.0}});
  const capdyn::cashflow::FlowProfile flow =
      discounted_flow(discount_schedule(schedule, kZeroCurve));
  REQUIRE(flow.impulses().size() == 4);
  CHECK(flow.impulses()[0].amount == -300.0);
  CHECK(flow.horizon_begin() == 0.0);
  CHECK(flow.horizon_end() == 3.0);
  CHECK(capdyn::cashflow::is_balanced(flow, 1e-12));
}

}  // TEST_SUITE("scheduler")
