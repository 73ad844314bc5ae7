#pragma once

#include <cstdint>
#include <optional>

#include "ucstar/matcat/category.hpp"

namespace ucstar {

inline double isometry_defect(const Matrix& a) { return distance(a.adjoint() * a, Matrix::identity(a.cols())); }

inline double unitary_defect(const Matrix& a) {
  if (!a.is_square()) return std::numeric_limits<double>::infinity();
  return std::max(isometry_defect(a), distance(a * a.adjoint(), Matrix::identity(a.rows())));
}

inline bool is_isometry(const Matrix& a, const Tolerance& tol = {}) {
  return isometry_defect(a) <= tol.threshold(1.0);
}

inline bool is_unitary(const Matrix& a, const Tolerance& tol = {}) {
  return a.is_square() && unitary_defect(a) <= tol.threshold(1.0);
}

/// Polar part u = a (a*a)^{-1/2} of an invertible square matrix.
inline Matrix unitarize(const Matrix& a, const Tolerance& tol = {}) {
  if (!a.is_square()) throw Error(ErrorKind::NotInvertible, "non-square arrow " + a.shape_string());
  a.check_finite();
  const double smin = smallest_singular_value(a);
  if (!(smin > tol.eps_abs)) {
    throw Error(ErrorKind::SingularOperand, "smallest singular value " + std::to_string(smin));
  }
  // a*a has eigenvalues sigma^2, which may sit below eps_abs even for a well-posed a.
  const Matrix p = herm_funcalc(a.adjoint() * a, HermFn::InvSqrt, tol, 0.5 * smin * smin);
  return a * p;
}

/// Unitarization of an arrow a in hom(x, y) of a concrete category.
inline Matrix unitarize(const MatCategory& c, std::size_t x, std::size_t y, const Matrix& a,
                        const Tolerance& tol = {}) {
  if (c.dim(x) != c.dim(y)) {
    throw Error(ErrorKind::NotInvertible, "dim " + c.name(x) + " != dim " + c.name(y));
  }
  if (a.shape() != c.hom(x, y).ambient()) throw Error(ErrorKind::ShapeMismatch, "arrow shape");
  return unitarize(a, tol);
}

/// YES carries a unitary in hom(x, y). A negative answer is never a proof
/// unless `certain` is set (dimension obstruction or an empty hom).
struct IsoVerdict {
  std::optional<Matrix> unitary;
  bool certain = false;
  std::uint64_t seed = 0;
  std::size_t samples_drawn = 0;

  bool yes() const noexcept { return unitary.has_value(); }
};

inline IsoVerdict iso_exists(const MatCategory& c, std::size_t x, std::size_t y, std::uint64_t seed,
                             std::size_t samples = 64, const Tolerance& tol = {}) {
  IsoVerdict v;
  v.seed = seed;
  if (c.dim(x) != c.dim(y)) {
    v.certain = true;
    return v;
  }
  const Subspace& h = c.hom(x, y);
  const Matrix id = Matrix::identity(c.dim(x));
  if (x == y || h.contains(id, tol)) {
    v.unitary = id;
    return v;
  }
  const InvertibleSearch s = find_invertible(h, seed, samples, tol);
  v.samples_drawn = s.samples_drawn;
  if (!s.element) {
    v.certain = s.exhaustive;
    return v;
  }
  v.unitary = unitarize(*s.element, tol);
  return v;
}

}  // namespace ucstar
