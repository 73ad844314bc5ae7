#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ucstar/numlin/matrix.hpp"
#include "ucstar/numlin/rng.hpp"
#include "ucstar/numlin/spectral.hpp"

namespace ucstar {

/// Linear subspace of rows x cols complex matrices, stored through a basis that
/// is orthonormal for the Hilbert-Schmidt inner product.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Shape ambient) { return Subspace(ambient, {}); }

  /// Trusts the caller that `basis` is already HS-orthonormal (e.g. Kronecker
  /// products of orthonormal bases). Order is preserved.
  static Subspace from_orthonormal(Shape ambient, std::vector<Matrix> basis) {
    for (const auto& b : basis)
      if (b.shape() != ambient) throw Error(ErrorKind::ShapeMismatch, "basis element shape");
    return Subspace(ambient, std::move(basis));
  }

  /// Gram-Schmidt span. Inputs whose residual after projection is below
  /// tol.threshold(||m||) are dropped as dependent.
  static Subspace span(std::span<const Matrix> mats, std::optional<Shape> ambient = std::nullopt,
                       const Tolerance& tol = {}) {
    if (!ambient) {
      if (mats.empty()) throw Error(ErrorKind::MissingShape, "empty span needs an ambient shape");
      ambient = mats.front().shape();
    }
    Subspace s(*ambient, {});
    for (const auto& m : mats) s.extend(m, tol);
    return s;
  }

  static Subspace span(std::initializer_list<Matrix> mats, std::optional<Shape> ambient = std::nullopt,
                       const Tolerance& tol = {}) {
    const std::vector<Matrix> v(mats);
    return span(std::span<const Matrix>(v), ambient, tol);
  }

  /// Full matrix space with the matrix-unit basis.
  static Subspace full(Shape ambient) {
    std::vector<Matrix> basis;
    for (std::size_t i = 0; i < ambient.rows; ++i)
      for (std::size_t j = 0; j < ambient.cols; ++j) basis.push_back(Matrix::unit(ambient.rows, ambient.cols, i, j));
    return Subspace(ambient, std::move(basis));
  }

  /// Adds m to the spanning set; returns true if the dimension grew.
  bool extend(const Matrix& m, const Tolerance& tol = {}) {
    if (m.shape() != ambient_) {
      throw Error(ErrorKind::ShapeMismatch, "expected " + std::to_string(ambient_.rows) + "x" +
                                                std::to_string(ambient_.cols) + ", got " + m.shape_string());
    }
    m.check_finite();
    const double norm = m.frobenius_norm();
    Matrix r = m;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) r.axpy(-hs_inner(b, r), b);
    const double rn = r.frobenius_norm();
    if (rn <= tol.threshold(norm)) return false;
    r *= 1.0 / rn;
    basis_.push_back(std::move(r));
    return true;
  }

  Shape ambient() const noexcept { return ambient_; }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<Matrix>& basis() const noexcept { return basis_; }
  const Matrix& basis(std::size_t i) const { return basis_.at(i); }

  std::vector<Complex> coordinates(const Matrix& m) const {
    if (m.shape() != ambient_) throw Error(ErrorKind::ShapeMismatch, "coordinates: " + m.shape_string());
    std::vector<Complex> c(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = hs_inner(basis_[i], m);
    return c;
  }

  Matrix combine(std::span<const Complex> coeffs) const {
    if (coeffs.size() != basis_.size()) throw Error(ErrorKind::ShapeMismatch, "coefficient count");
    Matrix out(ambient_.rows, ambient_.cols);
    for (std::size_t i = 0; i < basis_.size(); ++i) out.axpy(coeffs[i], basis_[i]);
    return out;
  }

  Matrix project(const Matrix& m) const {
    const auto c = coordinates(m);
    return combine(c);
  }

  /// HS distance from m to the subspace.
  double residual(const Matrix& m) const { return distance(m, project(m)); }

  bool contains(const Matrix& m, const Tolerance& tol = {}) const {
    return residual(m) <= tol.threshold(m.frobenius_norm());
  }

  /// Mutual containment of bases.
  bool same_space(const Subspace& other, const Tolerance& tol = {}) const {
    if (ambient_ != other.ambient_ || dimension() != other.dimension()) return false;
    for (const auto& b : other.basis_)
      if (!contains(b, tol)) return false;
    return true;
  }

 private:
  Subspace(Shape ambient, std::vector<Matrix> basis) : ambient_(ambient), basis_(std::move(basis)) {}

  Shape ambient_{};
  std::vector<Matrix> basis_;
};

/// Outcome of the seeded invertible-element search. An empty `element` is a
/// one-sided answer: `samples_drawn` random combinations were all singular.
struct InvertibleSearch {
  std::optional<Matrix> element;
  std::uint64_t seed = 0;
  std::size_t samples_drawn = 0;
  bool exhaustive = false;  // true when absence is certain (e.g. dimension 0)
};

inline InvertibleSearch find_invertible(const Subspace& s, std::uint64_t seed, std::size_t samples,
                                        const Tolerance& tol = {}) {
  if (s.ambient().rows != s.ambient().cols) {
    throw Error(ErrorKind::NotSquare, "ambient shape " + std::to_string(s.ambient().rows) + "x" +
                                          std::to_string(s.ambient().cols));
  }
  if (samples == 0) throw Error(ErrorKind::InvalidParams, "samples must be >= 1");
  InvertibleSearch out;
  out.seed = seed;
  if (s.dimension() == 0) {
    out.exhaustive = s.ambient().rows != 0;
    return out;
  }
  Rng rng(seed);
  std::vector<Complex> coeffs(s.dimension());
  for (std::size_t k = 0; k < samples; ++k) {
    for (auto& c : coeffs) c = rng.complex();
    Matrix m = s.combine(coeffs);
    ++out.samples_drawn;
    if (smallest_singular_value(m) > tol.threshold(op_norm(m))) {
      out.element = std::move(m);
      return out;
    }
  }
  return out;
}

}  // namespace ucstar
