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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "capdyn/cashflow.hpp"
#include "capdyn/errors.hpp"
#include "capdyn/matevol.hpp"
#include "capdyn/rates.hpp"
#include "capdyn/scheduler.hpp"
#include "capdyn/step_function.hpp"

namespace py = pybind11;

namespace {

capdyn::scheduler::InstalmentSchedule build_schedule(
    double loan_amount, double loan_time, const std::vector<std::pair<double, double>>& rows,
    double reference) {
  std::vector<capdyn::scheduler::Instalment> instalments;
  instalments.reserve(rows.size());
  for (const auto& [t, face] : rows) instalments.push_back({t, face});
  return {reference, {loan_time, loan_amount}, std::move(instalments)};
}

std::vector<std::pair<double, double>> schedule_rows(
    const capdyn::scheduler::InstalmentSchedule& schedule) {
  std::vector<std::pair<double, double>> rows;
  rows.reserve(schedule.size());
  for (const auto& inst : schedule.instalments()) rows.emplace_back(inst.at, inst.face);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic capital dynamics: rates, schedules, matrix evolution";

  py::register_exception<capdyn::Error>(m, "Error");

  py::class_<capdyn::StepFunction>(m, "RateCurve",
                                   "Piecewise-constant rate of return r(t)")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("breakpoints"),
           py::arg("rates"))
      .def_property_readonly("breakpoints", &capdyn::StepFunction::breakpoints)
      .def_property_readonly("rates", &capdyn::StepFunction::values)
      .def("value_at", &capdyn::StepFunction::value_at, py::arg("t"))
      .def("integrate", &capdyn::StepFunction::integrate, py::arg("t_from"), py::arg("t_to"));

  m.def(
      "utility",
      [](const capdyn::StepFunction& curve, double from, double to) {
        return capdyn::rates::utility_from_rate(curve, from, to).factor;
      },
      py::arg("curve"), py::arg("t_from"), py::arg("t_to"),
      "Utility factor exp(integral of r) over [t_from, t_to]");
  m.def(
      "range_rate",
      [](const capdyn::StepFunction& curve, double from, double to) {
        return capdyn::rates::range_rate(capdyn::rates::utility_from_rate(curve, from, to))
            .value;
      },
      py::arg("curve"), py::arg("t_from"), py::arg("t_to"),
      "Range rate ln U over [t_from, t_to]");
  m.def(
      "lower_rate",
      [](double utility) {
        return capdyn::rates::lower_rate(capdyn::rates::UtilityFactor(0.0, 1.0, utility));
      },
      py::arg("utility"), "Lower discrete rate U - 1 of a one-period utility factor");
  m.def(
      "upper_rate",
      [](double utility) {
        return capdyn::rates::upper_rate(capdyn::rates::UtilityFactor(0.0, 1.0, utility));
      },
      py::arg("utility"), "Upper discrete rate 1 - 1/U of a one-period utility factor");
  m.def("lower_to_upper", &capdyn::rates::lower_to_upper, py::arg("lower"));
  m.def("upper_to_lower", &capdyn::rates::upper_to_lower, py::arg("upper"));

  m.def(
      "minmax_schedule",
      [](double loan_amount, double loan_time, const std::vector<double>& times,
         const capdyn::StepFunction& curve, double reference) {
        return schedule_rows(capdyn::scheduler::minmax_schedule(loan_amount, loan_time, times,
                                                                curve, reference));
      },
      py::arg("loan_amount"), py::arg("loan_time"), py::arg("times"), py::arg("curve"),
      py::arg("reference"),
      "Equal-discounted-instalment schedule as a list of (t, face) rows");
  m.def(
      "nominal_schedule",
      [](double loan_amount, double loan_time, const std::vector<double>& times,
         const capdyn::StepFunction& curve, double reference) {
        return schedule_rows(capdyn::scheduler::nominally_fixed_schedule(
            loan_amount, loan_time, times, curve, reference));
      },
      py::arg("loan_amount"), py::arg("loan_time"), py::arg("times"), py::arg("curve"),
      py::arg("reference"),
      "Equal-face-instalment schedule as a list of (t, face) rows");
  m.def(
      "risk_report",
      [](double loan_amount, double loan_time,
         const std::vector<std::pair<double, double>>& instalments,
         const capdyn::StepFunction& curve, double reference) {
        const auto schedule = build_schedule(loan_amount, loan_time, instalments, reference);
        const auto discounted = capdyn::scheduler::discount_schedule(schedule, curve);
        const auto report = capdyn::scheduler::risk_report(discounted);
        py::dict out;
        out["max_discounted"] = report.max_discounted;
        out["mean_discounted"] = report.mean_discounted;
        out["variance_risk"] = report.variance_risk;
        out["balance_residual"] = discounted.balance_residual();
        return out;
      },
      py::arg("loan_amount"), py::arg("loan_time"), py::arg("instalments"), py::arg("curve"),
      py::arg("reference"),
      "Steinhaus risk statistics of the discounted repayments plus the balance residual");

  m.def(
      "mean_intensity",
      [](const std::vector<double>& breakpoints, const std::vector<double>& values) {
        capdyn::StepFunction density(breakpoints, values);
        const double begin = density.domain_min();
        const double end = density.domain_max();
        return capdyn::cashflow::mean_intensity(
            capdyn::cashflow::FlowProfile({}, std::move(density), begin, end));
      },
      py::arg("breakpoints"), py::arg("values"),
      "Mean intensity of a pure-density transport profile");
  m.def(
      "peak_intensity",
      [](const std::vector<double>& breakpoints, const std::vector<double>& values) {
        capdyn::StepFunction density(breakpoints, values);
        const double begin = density.domain_min();
        const double end = density.domain_max();
        return capdyn::cashflow::peak_intensity(
            capdyn::cashflow::FlowProfile({}, std::move(density), begin, end));
      },
      py::arg("breakpoints"), py::arg("values"),
      "Peak intensity of a pure-density transport profile");

  py::class_<capdyn::matevol::MatrixRateCurve>(m, "MatrixRateCurve",
                                               "Piecewise-constant matrix rate R(t)")
      .def(py::init<std::vector<double>, std::vector<capdyn::matevol::Matrix>>(),
           py::arg("breakpoints"), py::arg("generators"))
      .def_property_readonly("dimension", &capdyn::matevol::MatrixRateCurve::dimension)
      .def_property_readonly("breakpoints", &capdyn::matevol::MatrixRateCurve::breakpoints)
      .def_property_readonly("generators", &capdyn::matevol::MatrixRateCurve::generators);

  m.def("matrix_exp", &capdyn::matevol::matrix_exp, py::arg("a"),
        "Matrix exponential (scaling and squaring, diagonal Pade)");
  m.def(
      "ordered_exp",
      [](const capdyn::matevol::MatrixRateCurve& curve, double from, double to) {
        return capdyn::matevol::ordered_exp(curve, from, to).matrix;
      },
      py::arg("curve"), py::arg("t_from"), py::arg("t_to"),
      "Chronologically ordered exponential of R over [t_from, t_to]");
  m.def(
      "volterra",
      [](const capdyn::matevol::MatrixRateCurve& curve, double from, double to, int order,
         int quad_points) {
        return capdyn::matevol::volterra_series(curve, from, to, order, quad_points).matrix;
      },
      py::arg("curve"), py::arg("t_from"), py::arg("t_to"), py::arg("order"),
      py::arg("quad_points") = 256,
      "Truncated Volterra series approximation of the ordered exponential");
  m.def("eigen_evolve", &capdyn::matevol::eigen_evolve, py::arg("generator"), py::arg("p0"),
        py::arg("dt"), py::arg("condition_cap") = capdyn::matevol::kDefaultEigenConditionCap,
        "Evolve p0 over dt through the eigenbasis of a constant generator");
}
