# Copyright 2026 The capdyn authors
# SPDX-License-Identifier: Apache-2.0
"""Deterministic capital dynamics: rates, schedules, matrix evolution."""

from ._core import (
    Error,
    MatrixRateCurve,
    RateCurve,
    eigen_evolve,
    lower_rate,
    lower_to_upper,
    matrix_exp,
    mean_intensity,
    minmax_schedule,
    nominal_schedule,
    ordered_exp,
    peak_intensity,
    range_rate,
    risk_report,
    upper_rate,
    upper_to_lower,
    utility,
    volterra,
)

__all__ = [
    "Error",
    "MatrixRateCurve",
    "RateCurve",
    "eigen_evolve",
    "lower_rate",
    "lower_to_upper",
    "matrix_exp",
    "mean_intensity",
    "minmax_schedule",
    "nominal_schedule",
    "ordered_exp",
    "peak_intensity",
    "range_rate",
    "risk_report",
    "upper_rate",
    "upper_to_lower",
    "utility",
    "volterra",
]

__version__ = "0.1.0"
