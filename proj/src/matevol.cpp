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

#include "capdyn/matevol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "capdyn/errors.hpp"

namespace capdyn::matevol {

namespace {

// Ratio of the smallest to the largest singular value, as a condition
// estimate that works for exactly singular matrices too.
double inverse_condition(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smax == 0.0) return 0.0;
  return smin / smax;
}

void check_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square and non-empty, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + " has non-finite entries");
  }
}

// Diagonal Pade approximant coefficients, numerators of exp at orders
// 3/5/7/9/13 (Higham, Functions of Matrices, ch. 10).
const double kPade3[] = {120., 60., 12., 1.};
const double kPade5[] = {30240., 15120., 3360., 420., 30., 1.};
const double kPade7[] = {17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
const double kPade9[] = {17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                         2162160., 110880., 3960., 90., 1.};
const double kPade13[] = {64764752532480000., 32382376266240000., 7771770303897600.,
                          1187353796428800.,  129060195264000.,   10559470521600.,
                          670442572800.,      33522128640.,       1323241920.,
                          40840800.,          960960.,            16380.,
                          182.,               1.};

// Odd/even split of the Pade polynomial: on exit the approximant is
// (V - U)^-1 (V + U).
void pade_terms(const Matrix& a, std::span<const double> b, Matrix& u, Matrix& v) {
  const Eigen::Index n = a.rows();
  Matrix power = Matrix::Identity(n, n);  // A^0, then A^2, A^4, ...
  u = b[1] * Matrix::Identity(n, n);
  v = b[0] * Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  for (std::size_t i = 3; i < b.size(); i += 2) {
    power = power * a2;
    u += b[i] * power;
    v += b[i - 1] * power;
  }
  u = a * u;
}

}  // namespace

Matrix matrix_exp(const Matrix& a) {
  check_square(a, "matrix exponential argument");
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm

  Matrix u(n, n), v(n, n);
  int squarings = 0;
  if (norm <= 1.495585217958292e-2) {
    pade_terms(a, kPade3, u, v);
  } else if (norm <= 2.539398330063230e-1) {
    pade_terms(a, kPade5, u, v);
  } else if (norm <= 9.504178996162932e-1) {
    pade_terms(a, kPade7, u, v);
  } else if (norm <= 2.097847961257068e0) {
    pade_terms(a, kPade9, u, v);
  } else {
    const double theta13 = 5.371920351148152;
    if (norm > theta13) {
      squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / theta13))));
    }
    const Matrix scaled = a * std::ldexp(1.0, -squarings);
    pade_terms(scaled, kPade13, u, v);
  }

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

MatrixRateCurve::MatrixRateCurve(std::vector<TimeInstant> breakpoints,
                                 std::vector<Matrix> generators)
    : breakpoints_(std::move(breakpoints)), generators_(std::move(generators)) {
  if (generators_.empty()) throw ValidationError("matrix rate curve needs at least one piece");
  if (breakpoints_.size() != generators_.size() + 1) {
    std::ostringstream msg;
    msg << "matrix rate curve with " << generators_.size() << " generators needs "
        << generators_.size() + 1 << " breakpoints, got " << breakpoints_.size();
    throw ValidationError(msg.str());
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw ValidationError("matrix rate curve breakpoints must be strictly increasing");
    }
  }
  check_square(generators_.front(), "matrix rate generator");
  const Eigen::Index n = generators_.front().rows();
  for (const Matrix& g : generators_) {
    check_square(g, "matrix rate generator");
    if (g.rows() != n) {
      throw ValidationError("matrix rate generators must share one dimension");
    }
  }
}

const Matrix& MatrixRateCurve::generator_at(TimeInstant t) const {
  if (!contains(t)) {
    std::ostringstream msg;
    msg << "instant " << t << " outside curve domain [" << domain_min() << ", "
        << domain_max() << "]";
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (idx == breakpoints_.size()) idx = breakpoints_.size() - 1;
  return generators_[idx - 1];
}

UtilityMatrix::UtilityMatrix(TimeInstant from, TimeInstant to, Matrix matrix)
    : from(from), to(to), matrix(std::move(matrix)) {
  check_square(this->matrix, "utility matrix");
  const Eigen::Index n = this->matrix.rows();
  if (from == to) {
    if (!this->matrix.isApprox(Matrix::Identity(n, n), 1e-12)) {
      throw ValidationError("utility matrix over an empty span must be the identity");
    }
  }
  // |det| must stay above 1e-12 of its scale (product of the largest
  // singular value across all positions).
  if (inverse_condition_bound() < 1e-12) {
    throw SingularUtilityError("utility matrix is singular within tolerance");
  }
}

// Product of s_i / s_max over all singular values: |det| / s_max^n.
double UtilityMatrix::inverse_condition_bound() const {
  Eigen::JacobiSVD<Matrix> svd(matrix);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  if (smax == 0.0) return 0.0;
  double prod = 1.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) prod *= s(i) / smax;
  return prod;
}

MatrixRatePair::MatrixRatePair(Matrix lower, Matrix upper, double tol)
    : lower(std::move(lower)), upper(std::move(upper)) {
  check_square(this->lower, "lower matrix rate");
  check_square(this->upper, "upper matrix rate");
  const Eigen::Index n = this->lower.rows();
  if (this->upper.rows() != n) {
    throw ValidationError("lower/upper matrix rates must share one dimension");
  }
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix residual = (identity + this->lower) * (identity - this->upper) - identity;
  const double scale = std::max(1.0, std::max(this->lower.norm(), this->upper.norm()));
  if (residual.norm() > tol * scale) {
    std::ostringstream msg;
    msg << "matrix rates violate (I+lower)(I-upper)=I, residual norm " << residual.norm();
    throw ValidationError(msg.str());
  }
}

UtilityMatrix ordered_exp(const MatrixRateCurve& curve, TimeInstant from, TimeInstant to,
                          int substeps_per_interval) {
  if (!(from <= to)) throw DomainError("ordered exponential span must be ordered");
  if (!curve.contains(from) || !curve.contains(to)) {
    std::ostringstream msg;
    msg << "span [" << from << ", " << to << "] outside curve domain ["
        << curve.domain_min() << ", " << curve.domain_max() << "]";
    throw DomainError(msg.str());
  }
  if (substeps_per_interval < 1) {
    throw ValidationError("substeps_per_interval must be positive");
  }

  const Eigen::Index n = curve.dimension();
  Matrix product = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < curve.piece_count(); ++i) {
    const double lo = std::max(from, curve.breakpoints()[i]);
    const double hi = std::min(to, curve.breakpoints()[i + 1]);
    if (hi <= lo) continue;
    const double dt = (hi - lo) / substeps_per_interval;
    const Matrix factor = matrix_exp(curve.generators()[i] * dt);
    // Later-time factors act later: multiply on the left, walking the
    // pieces in time order.
    for (int s = 0; s < substeps_per_interval; ++s) product = factor * product;
  }
  return {from, to, std::move(product)};
}

UtilityMatrix volterra_series(const MatrixRateCurve& curve, TimeInstant from, TimeInstant to,
                              int order, int quad_points) {
  if (order < 1) throw ValidationError("volterra series order must be positive");
  if (quad_points < 1) throw ValidationError("volterra quad_points must be positive");
  if (!(from <= to)) throw DomainError("volterra span must be ordered");
  if (!curve.contains(from) || !curve.contains(to)) {
    std::ostringstream msg;
    msg << "span [" << from << ", " << to << "] outside curve domain ["
        << curve.domain_min() << ", " << curve.domain_max() << "]";
    throw DomainError(msg.str());
  }

  const Eigen::Index n = curve.dimension();
  const Matrix identity = Matrix::Identity(n, n);
  if (from == to) return {from, to, identity};

  // Build a midpoint grid aligned with the generator breakpoints so the
  // integrand is smooth within every cell.
  struct Cell {
    double width;
    const Matrix* rate;
  };
  std::vector<Cell> cells;
  const double total_len = to - from;
  for (std::size_t i = 0; i < curve.piece_count(); ++i) {
    const double lo = std::max(from, curve.breakpoints()[i]);
    const double hi = std::min(to, curve.breakpoints()[i + 1]);
    if (hi <= lo) continue;
    const double len = hi - lo;
    const int count = std::max(1, static_cast<int>(std::lround(quad_points * len / total_len)));
    for (int c = 0; c < count; ++c) cells.push_back({len / count, &curve.generators()[i]});
  }

  // Nested integrals built level by level. prev[j] holds the previous
  // level's integral up to cell edge j; within a cell the integrand is
  // approximated by the edge average, which integrates degree-1 levels
  // exactly and is second order beyond.
  std::vector<Matrix> prev(cells.size() + 1, identity);
  std::vector<Matrix> next(cells.size() + 1, Matrix::Zero(n, n));
  Matrix series = identity;
  for (int level = 1; level <= order; ++level) {
    next[0] = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const Matrix midpoint_value = 0.5 * (prev[j] + prev[j + 1]);
      next[j + 1] = next[j] + cells[j].width * (*cells[j].rate * midpoint_value);
    }
    series += next.back();
    std::swap(prev, next);
  }
  return {from, to, std::move(series)};
}

Matrix matrix_lower_rate(const UtilityMatrix& u) {
  return u.matrix - Matrix::Identity(u.matrix.rows(), u.matrix.cols());
}

Matrix matrix_upper_rate(const UtilityMatrix& u) {
  const double inv_cond = inverse_condition(u.matrix);
  if (inv_cond == 0.0 || 1.0 / inv_cond > kSingularConditionCap) {
    throw SingularUtilityError("utility matrix too ill-conditioned for the upper rate");
  }
  const Matrix identity = Matrix::Identity(u.matrix.rows(), u.matrix.cols());
  return identity - u.matrix.partialPivLu().solve(identity);
}

MatrixRatePair matrix_rate_pair(const UtilityMatrix& u) {
  return {matrix_lower_rate(u), matrix_upper_rate(u)};
}

Vector discrete_evolve_lower(std::span<const Matrix> lower_rates, const Vector& p0) {
  Vector p = p0;
  for (const Matrix& rate : lower_rates) {
    check_square(rate, "lower matrix rate");
    if (rate.rows() != p.size()) {
      throw ValidationError("matrix rate dimension does not match the balance vector");
    }
    const Matrix step = Matrix::Identity(rate.rows(), rate.cols()) + rate;
    const double inv_cond = inverse_condition(step);
    if (inv_cond == 0.0 || 1.0 / inv_cond > kSingularConditionCap) {
      throw SingularStepError("step factor I + lower is singular within tolerance");
    }
    p = step * p;
  }
  return p;
}

Vector discrete_evolve_upper(std::span<const Matrix> upper_rates, const Vector& p_final) {
  Vector p = p_final;
  // Antichronological: the factor of the latest period applies first.
  for (auto it = upper_rates.rbegin(); it != upper_rates.rend(); ++it) {
    const Matrix& rate = *it;
    check_square(rate, "upper matrix rate");
    if (rate.rows() != p.size()) {
      throw ValidationError("matrix rate dimension does not match the balance vector");
    }
    const Matrix step = Matrix::Identity(rate.rows(), rate.cols()) - rate;
    const double inv_cond = inverse_condition(step);
    if (inv_cond == 0.0 || 1.0 / inv_cond > kSingularConditionCap) {
      throw SingularStepError("step factor I - upper is singular within tolerance");
    }
    p = step * p;
  }
  return p;
}

bool commutes(const MatrixRateCurve& curve, double tol) {
  const auto& gens = curve.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const double commutator = (gens[i] * gens[j] - gens[j] * gens[i]).norm();
      if (commutator > tol * gens[i].norm() * gens[j].norm()) return false;
    }
  }
  return true;
}

EigenEvolution eigen_decompose(const Matrix& generator, double condition_cap) {
  check_square(generator, "generator");
  Eigen::EigenSolver<Matrix> solver(generator);
  if (solver.info() != Eigen::Success) {
    throw NonDiagonalizableError("eigendecomposition did not converge");
  }
  const ComplexMatrix basis = solver.eigenvectors();

  Eigen::JacobiSVD<ComplexMatrix> svd(basis);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0 || s(0) / smin > condition_cap) {
    std::ostringstream msg;
    msg << "generator is non-diagonalizable within the condition cap " << condition_cap;
    throw NonDiagonalizableError(msg.str());
  }

  EigenEvolution decomposition{solver.eigenvalues(), basis,
                               basis.partialPivLu().solve(
                                   ComplexMatrix::Identity(basis.rows(), basis.cols()))};

  // The decomposition must reproduce the generator and invert cleanly.
  const Matrix rebuilt = (decomposition.basis *
                          decomposition.eigenvalues.asDiagonal() *
                          decomposition.basis_inverse)
                             .real();
  const double scale = std::max(1.0, generator.norm());
  if ((rebuilt - generator).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw NonDiagonalizableError("eigenbasis fails to reproduce the generator");
  }
  const ComplexMatrix ident_residual =
      decomposition.basis * decomposition.basis_inverse -
      ComplexMatrix::Identity(basis.rows(), basis.cols());
  if (ident_residual.norm() > 1e-10 * std::max(1.0, basis.norm())) {
    throw NonDiagonalizableError("eigenbasis inverse residual too large");
  }
  return decomposition;
}

Vector eigen_evolve(const Matrix& generator, const Vector& p0, double dt,
                    double condition_cap) {
  if (generator.rows() != p0.size()) {
    throw ValidationError("generator dimension does not match the balance vector");
  }
  const EigenEvolution decomposition = eigen_decompose(generator, condition_cap);

  ComplexVector components = decomposition.basis_inverse * p0.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < components.size(); ++i) {
    components(i) *= std::exp(decomposition.eigenvalues(i) * dt);
  }
  const ComplexVector evolved = decomposition.basis * components;

  const double norm = std::max(evolved.norm(), p0.norm());
  if (norm > 0.0 && evolved.imag().norm() > 1e-9 * norm) {
    throw NonDiagonalizableError("imaginary residue after eigenbasis evolution too large");
  }
  return evolved.real();
}

}  // namespace capdyn::matevol
