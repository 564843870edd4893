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

#ifndef CAPDYN_MATEVOL_HPP
#define CAPDYN_MATEVOL_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "capdyn/errors.hpp"
#include "capdyn/step_function.hpp"

namespace capdyn::matevol {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Condition estimates beyond this treat a factor as singular.
inline constexpr double kSingularConditionCap = 1e12;

/// Default cap on the eigenvector-matrix condition number above which a
/// generator is reported as non-diagonalizable.
inline constexpr double kDefaultEigenConditionCap = 1e6;

/// Piecewise-constant n x n matrix rate of return R(t): the generator of
/// multidimensional capital evolution. Same piece conventions as the
/// scalar StepFunction (right-open pieces, last closed).
class MatrixRateCurve {
 public:
  MatrixRateCurve(std::vector<TimeInstant> breakpoints, std::vector<Matrix> generators);

  Eigen::Index dimension() const { return generators_.front().rows(); }
  const Matrix& generator_at(TimeInstant t) const;

  TimeInstant domain_min() const { return breakpoints_.front(); }
  TimeInstant domain_max() const { return breakpoints_.back(); }
  bool contains(TimeInstant t) const { return t >= domain_min() && t <= domain_max(); }

  std::size_t piece_count() const { return generators_.size(); }
  const std::vector<TimeInstant>& breakpoints() const { return breakpoints_; }
  const std::vector<Matrix>& generators() const { return generators_; }

 private:
  std::vector<TimeInstant> breakpoints_;
  std::vector<Matrix> generators_;
};

/// Matrix utility of the capital over [from, to]: the factor mapping the
/// balance vector at `from` to the one at `to`. Always invertible;
/// exactly the identity over an empty span.
struct UtilityMatrix {
  TimeInstant from{};
  TimeInstant to{};
  Matrix matrix;

  UtilityMatrix(TimeInstant from, TimeInstant to, Matrix matrix);

  /// |det| / s_max^n: how far the determinant sits from zero relative to
  /// the matrix scale. Values below 1e-12 are rejected as singular.
  double inverse_condition_bound() const;
};

/// Discrete matrix rate pair tied by (I + lower)(I - upper) = I.
struct MatrixRatePair {
  Matrix lower;
  Matrix upper;

  /// Validates the duality residual against tol (relative to norm).
  MatrixRatePair(Matrix lower, Matrix upper, double tol = 1e-12);
};

/// Eigendecomposition of a constant generator: the basis of complex
/// eigenvectors in which the capital components grow autonomously.
struct EigenEvolution {
  ComplexVector eigenvalues;
  ComplexMatrix basis;
  ComplexMatrix basis_inverse;
};

/// exp(A) by scaling and squaring with a diagonal Pade core (orders
/// 3/5/7/9/13 switched on the 1-norm). Exact on nilpotent generators of
/// index 2 and accurate to ~1e-14 across the tested range.
Matrix matrix_exp(const Matrix& a);

/// Chronologically ordered exponential of the curve over [from, to]:
/// the product of per-piece factors exp(R_i * dt_i), later-time factors
/// leftmost, applied to column vectors on the right. Each piece is
/// constant, so its factor is an exact matrix exponential;
/// substeps_per_interval further splits every covered piece (default 1,
/// kept for convergence experiments and future non-constant pieces).
UtilityMatrix ordered_exp(const MatrixRateCurve& curve, TimeInstant from, TimeInstant to,
                          int substeps_per_interval = 1);

/// Truncated iterated-integral series for the same utility: I plus the
/// first `order` nested integrals of R over the time simplex, evaluated
/// by a composite midpoint rule with quad_points cells across the span.
/// Converges to ordered_exp with remainder O(M^(k+1)/(k+1)!) where
/// M is the integral of the operator norm of R.
UtilityMatrix volterra_series(const MatrixRateCurve& curve, TimeInstant from, TimeInstant to,
                              int order, int quad_points);

/// U - I: the matrix rate referencing the start-of-period balance.
Matrix matrix_lower_rate(const UtilityMatrix& u);

/// I - U^-1: the matrix rate referencing the end-of-period balance.
/// Throws SingularUtilityError when U is too ill-conditioned to invert.
Matrix matrix_upper_rate(const UtilityMatrix& u);

/// Both rates of the same utility, validated against the duality
/// relation.
MatrixRatePair matrix_rate_pair(const UtilityMatrix& u);

/// p = (I + R_last) ... (I + R_first) p0, factors applied in
/// chronological order. Throws SingularStepError on near-singular steps.
Vector discrete_evolve_lower(std::span<const Matrix> lower_rates, const Vector& p0);

/// Recovers the initial vector from the final one: (I - R_k) factors
/// applied in antichronological order; the inverse of
/// discrete_evolve_lower under the duality map.
Vector discrete_evolve_upper(std::span<const Matrix> upper_rates, const Vector& p_final);

/// True iff every generator pair commutes: |R_i R_j - R_j R_i| <=
/// tol * |R_i| * |R_j| (Frobenius norms). With commuting rates the
/// ordering operators can be dropped.
bool commutes(const MatrixRateCurve& curve, double tol);

/// Complex eigenbasis of a constant generator. Throws
/// NonDiagonalizableError when the eigenvector matrix condition exceeds
/// the cap or the decomposition fails to reproduce the generator.
EigenEvolution eigen_decompose(const Matrix& generator,
                               double condition_cap = kDefaultEigenConditionCap);

/// Evolves p0 over dt in the eigenbasis: each complex component scales
/// by exp(lambda_i * dt) with no cross flows, then the result is mapped
/// back. The imaginary residue is checked (<= 1e-9 of the norm) and
/// discarded.
Vector eigen_evolve(const Matrix& generator, const Vector& p0, double dt,
                    double condition_cap = kDefaultEigenConditionCap);

}  // namespace capdyn::matevol

#endif  // CAPDYN_MATEVOL_HPP
