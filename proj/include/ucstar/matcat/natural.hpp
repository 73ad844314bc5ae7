#pragma once

#include <vector>

#include "ucstar/matcat/functor.hpp"
#include "ucstar/matcat/unitary.hpp"

namespace ucstar {

/// Family of components alpha_x : F x -> F' x, one per source object.
struct NatTransform {
  std::vector<Matrix> components;

  const Matrix& operator[](std::size_t x) const { return components.at(x); }
};

inline void require_parallel(const StarFunctor& f, const StarFunctor& g) {
  if (!same_category(f.source(), g.source()) || !same_category(f.target(), g.target())) {
    throw Error(ErrorKind::NotParallel, "functors have different source or target");
  }
}

inline NatTransform identity_transform(const StarFunctor& f) {
  NatTransform t;
  for (std::size_t x = 0; x < f.source()->size(); ++x)
    t.components.push_back(Matrix::identity(f.target()->dim(f.object(x))));
  return t;
}

/// max over basis arrows a: x -> y of ||alpha_y F(a) - G(a) alpha_x||.
inline double naturality_residual(const StarFunctor& f, const StarFunctor& g, const NatTransform& t) {
  const MatCategory& a = *f.source();
  if (t.components.size() != a.size()) throw Error(ErrorKind::ShapeMismatch, "component count");
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const auto& fi = f.images(x, y);
      const auto& gi = g.images(x, y);
      for (std::size_t i = 0; i < fi.size(); ++i)
        worst = std::max(worst, distance(t[y] * fi[i], gi[i] * t[x]));
    }
  return worst;
}

/// Shapes match F, G and every square commutes within tolerance.
inline bool is_natural(const StarFunctor& f, const StarFunctor& g, const NatTransform& t, const Tolerance& tol = {}) {
  const MatCategory& a = *f.source();
  if (t.components.size() != a.size()) return false;
  double scale = 1.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (t[x].shape() != Shape{g.target()->dim(g.object(x)), f.target()->dim(f.object(x))}) return false;
    scale = std::max(scale, op_norm(t[x]));
  }
  return naturality_residual(f, g, t) <= tol.threshold(scale);
}

inline double sup_norm(const NatTransform& t) {
  double s = 0.0;
  for (const auto& c : t.components) s = std::max(s, op_norm(c));
  return s;
}

inline bool is_unitary_transform(const NatTransform& t, const Tolerance& tol = {}) {
  for (const auto& c : t.components)
    if (!is_unitary(c, tol)) return false;
  return true;
}

/// Basis of all natural transformations F => G.
struct BoundedNatSpace {
  std::vector<NatTransform> basis;

  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Solves the linear system alpha_y F(a) - G(a) alpha_x = 0 over basis arrows.
inline BoundedNatSpace nat_space(const StarFunctor& f, const StarFunctor& g, const Tolerance& tol = {}) {
  require_parallel(f, g);
  const MatCategory& a = *f.source();
  const std::size_t n = a.size();
  std::vector<std::size_t> offset(n + 1, 0);
  std::vector<Shape> shape(n);
  for (std::size_t x = 0; x < n; ++x) {
    shape[x] = {g.target()->dim(g.object(x)), f.target()->dim(f.object(x))};
    offset[x + 1] = offset[x] + shape[x].rows * shape[x].cols;
  }
  const std::size_t unknowns = offset[n];

  std::vector<Vector> rows;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& fi = f.images(x, y);
      const auto& gi = g.images(x, y);
      for (std::size_t k = 0; k < fi.size(); ++k) {
        const Matrix& fa = fi[k];  // Fy_dim x Fx_dim
        const Matrix& ga = gi[k];  // Gy_dim x Gx_dim
        // entry (r, c) of alpha_y fa - ga alpha_x
        for (std::size_t r = 0; r < shape[y].rows; ++r)
          for (std::size_t c = 0; c < shape[x].cols; ++c) {
            Vector row(unknowns);
            for (std::size_t m = 0; m < shape[y].cols; ++m) row[offset[y] + r * shape[y].cols + m] += fa(m, c);
            for (std::size_t m = 0; m < shape[x].rows; ++m) row[offset[x] + m * shape[x].cols + c] -= ga(r, m);
            rows.push_back(std::move(row));
          }
      }
    }
  Matrix sys(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) sys(i, j) = rows[i][j];

  std::vector<Vector> kernel;
  if (rows.empty()) {
    for (std::size_t j = 0; j < unknowns; ++j) {
      Vector e(unknowns);
      e[j] = 1.0;
      kernel.push_back(std::move(e));
    }
  } else {
    kernel = nullspace(sys, tol);
  }
  BoundedNatSpace out;
  for (const auto& v : kernel) {
    NatTransform t;
    for (std::size_t x = 0; x < n; ++x) {
      Matrix c(shape[x].rows, shape[x].cols);
      for (std::size_t k = 0; k < c.size(); ++k) c.entries()[k] = v[offset[x] + k];
      t.components.push_back(std::move(c));
    }
    out.basis.push_back(std::move(t));
  }
  return out;
}

/// Pointwise operations on transformations between functors with a common source.
namespace nat {

inline NatTransform compose(const NatTransform& beta, const NatTransform& alpha) {
  if (beta.components.size() != alpha.components.size()) throw Error(ErrorKind::ShapeMismatch, "component count");
  NatTransform t;
  for (std::size_t x = 0; x < alpha.components.size(); ++x) t.components.push_back(beta[x] * alpha[x]);
  return t;
}

inline NatTransform involute(const NatTransform& alpha) {
  NatTransform t;
  for (const auto& c : alpha.components) t.components.push_back(c.adjoint());
  return t;
}

/// z * alpha + beta
inline NatTransform scale_add(Complex z, const NatTransform& alpha, const NatTransform& beta) {
  if (beta.components.size() != alpha.components.size()) throw Error(ErrorKind::ShapeMismatch, "component count");
  NatTransform t;
  for (std::size_t x = 0; x < alpha.components.size(); ++x) t.components.push_back(z * alpha[x] + beta[x]);
  return t;
}

}  // namespace nat

}  // namespace ucstar
