#pragma once

// Dense complex linear algebra with first-class antilinear operators and
// interior-restricted residual norms.
//
// An AntilinearOp with matrix part M acts on a vector v as M * conj(v).
// Compositions follow from that rule:
//   (j o a).m = j.m * conj(a.m)        (antilinear)
//   (a o j).m = a.m * j.m              (antilinear)
//   (j o k).m = j.m * conj(k.m)        (linear)
// The anti-adjoint is the plain transpose, so that an antiunitary j
// satisfies anti_adjoint(j) o j = identity.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

#include "nctorus/lattice.hpp"

namespace nctorus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Unit phase exp(2*pi*i*turns). Angles are accumulated in turns and
/// materialized with a single exp; powers of a stored lambda are never
/// chained multiplicatively.
inline Complex unit_phase(double turns) {
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

/// A point on the unit circle, lambda = exp(2*pi*i*angle_turns).
struct PhaseAngle {
  double turns = 0.0;

  PhaseAngle() = default;
  explicit PhaseAngle(double t) : turns(t) {}

  Complex value() const { return unit_phase(turns); }
  /// lambda^k for real k, computed as one exponential of the total angle.
  Complex pow(double k) const { return unit_phase(turns * k); }
};

/// Default deformation angle: an irrational number of turns, so lambda is
/// generic. Zero turns gives the classical (commutative) torus.
inline double generic_lambda_turns() { return (std::sqrt(5.0) - 1.0) / 2.0; }

namespace detail {
inline void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}
inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": non-square matrix");
}
inline void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}
}  // namespace detail

struct LinearOp {
  Matrix m;

  LinearOp() = default;
  explicit LinearOp(Matrix mat) : m(std::move(mat)) {
    detail::require_square(m, "LinearOp");
    detail::require_finite(m, "LinearOp");
  }
  static LinearOp identity(int dim) { return LinearOp(Matrix::Identity(dim, dim)); }
  static LinearOp zero(int dim) { return LinearOp(Matrix::Zero(dim, dim)); }

  int dim() const { return static_cast<int>(m.rows()); }
  Vector apply(const Vector& v) const { return m * v; }
};

struct AntilinearOp {
  Matrix m;  // action: v -> m * conj(v)

  AntilinearOp() = default;
  explicit AntilinearOp(Matrix mat) : m(std::move(mat)) {
    detail::require_square(m, "AntilinearOp");
    detail::require_finite(m, "AntilinearOp");
  }
  static AntilinearOp zero(int dim) { return AntilinearOp(Matrix::Zero(dim, dim)); }

  int dim() const { return static_cast<int>(m.rows()); }
  Vector apply(const Vector& v) const { return m * v.conjugate(); }
};

inline LinearOp compose_lin_lin(const LinearOp& a, const LinearOp& b) {
  detail::require_same_dim(a.dim(), b.dim(), "compose_lin_lin");
  return LinearOp(a.m * b.m);
}

inline AntilinearOp compose_anti_lin(const AntilinearOp& j, const LinearOp& a) {
  detail::require_same_dim(j.dim(), a.dim(), "compose_anti_lin");
  return AntilinearOp(j.m * a.m.conjugate());
}

inline AntilinearOp compose_lin_anti(const LinearOp& a, const AntilinearOp& j) {
  detail::require_same_dim(a.dim(), j.dim(), "compose_lin_anti");
  return AntilinearOp(a.m * j.m);
}

inline LinearOp compose_anti_anti(const AntilinearOp& j, const AntilinearOp& k) {
  detail::require_same_dim(j.dim(), k.dim(), "compose_anti_anti");
  return LinearOp(j.m * k.m.conjugate());
}

inline LinearOp adjoint(const LinearOp& a) { return LinearOp(a.m.adjoint()); }

/// Anti-adjoint defined by <j'u, v> = <j v, u>; for matrix-after-conjugation
/// operators this is the transpose of the matrix part.
inline AntilinearOp anti_adjoint(const AntilinearOp& j) {
  return AntilinearOp(j.m.transpose());
}

inline LinearOp operator+(const LinearOp& a, const LinearOp& b) {
  detail::require_same_dim(a.dim(), b.dim(), "LinearOp+");
  return LinearOp(a.m + b.m);
}
inline LinearOp operator-(const LinearOp& a, const LinearOp& b) {
  detail::require_same_dim(a.dim(), b.dim(), "LinearOp-");
  return LinearOp(a.m - b.m);
}
inline LinearOp operator*(const Complex& c, const LinearOp& a) { return LinearOp(c * a.m); }
inline LinearOp operator*(const LinearOp& a, const LinearOp& b) { return compose_lin_lin(a, b); }

inline AntilinearOp operator+(const AntilinearOp& a, const AntilinearOp& b) {
  detail::require_same_dim(a.dim(), b.dim(), "AntilinearOp+");
  return AntilinearOp(a.m + b.m);
}
inline AntilinearOp operator-(const AntilinearOp& a, const AntilinearOp& b) {
  detail::require_same_dim(a.dim(), b.dim(), "AntilinearOp-");
  return AntilinearOp(a.m - b.m);
}

inline LinearOp commutator(const LinearOp& a, const LinearOp& b) {
  return compose_lin_lin(a, b) - compose_lin_lin(b, a);
}

/// Max 2-norm of op columns over interior basis vectors. Exact identities
/// restricted to a deep-enough interior give exactly-zero columns, so this
/// is the project's residual metric. For an antilinear op the column of
/// m * conj(e_x) is the same column of m.
inline double interior_residual(const Matrix& m, const InteriorMask& mask) {
  if (mask.size() == 0) throw std::invalid_argument("interior_residual: empty mask");
  if (m.rows() != m.cols() || static_cast<int>(m.rows()) < mask.indices().back() + 1)
    throw std::invalid_argument("interior_residual: dimension mismatch");
  double worst = 0.0;
  for (int idx : mask.indices()) worst = std::max(worst, m.col(idx).norm());
  return worst;
}

inline double interior_residual(const LinearOp& a, const InteriorMask& mask) {
  return interior_residual(a.m, mask);
}
inline double interior_residual(const AntilinearOp& j, const InteriorMask& mask) {
  return interior_residual(j.m, mask);
}

}  // namespace nctorus
