#pragma once

#include <optional>
#include <vector>

#include "ucstar/numlin/matrix.hpp"

namespace ucstar {

using Vector = std::vector<Complex>;

/// Reduced row echelon form with partial pivoting. Pivot candidates whose
/// magnitude falls below `drop` (absolute) are treated as zero.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline RowEchelon row_echelon(const Matrix& m, double drop) {
  RowEchelon out{m, {}};
  Matrix& a = out.reduced;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows; ++i)
      if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
    if (std::abs(a(piv, c)) <= drop) {
      for (std::size_t i = r; i < rows; ++i) a(i, c) = 0.0;
      continue;
    }
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    const Complex d = a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) /= d;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Complex f = a(i, c);
      if (f == Complex{}) continue;
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

inline double drop_threshold(const Matrix& m, const Tolerance& tol) {
  return tol.threshold(m.max_abs());
}

inline std::size_t rank(const Matrix& m, const Tolerance& tol = {}) {
  return row_echelon(m, drop_threshold(m, tol)).pivot_cols.size();
}

/// Orthonormal basis (standard inner product) of the kernel of m.
inline std::vector<Vector> nullspace(const Matrix& m, const Tolerance& tol = {}) {
  const std::size_t cols = m.cols();
  const RowEchelon ech = row_echelon(m, drop_threshold(m, tol));
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols);
    v[free] = 1.0;
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  // Gram-Schmidt, twice for stability.
  std::vector<Vector> ortho;
  for (auto v : basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : ortho) {
        Complex dot{};
        for (std::size_t i = 0; i < cols; ++i) dot += std::conj(q[i]) * v[i];
        for (std::size_t i = 0; i < cols; ++i) v[i] -= dot * q[i];
      }
    double n = 0.0;
    for (const auto& z : v) n += std::norm(z);
    n = std::sqrt(n);
    if (n <= 1e-12) continue;
    for (auto& z : v) z /= n;
    ortho.push_back(std::move(v));
  }
  return ortho;
}

inline Vector mat_vec(const Matrix& m, const Vector& x) {
  Vector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

inline double vector_norm(const Vector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// Minimum-norm solution of m x = b, or nullopt when the residual exceeds
/// tol.threshold(||b||).
inline std::optional<Vector> solve(const Matrix& m, const Vector& b, const Tolerance& tol = {}) {
  if (b.size() != m.rows()) throw Error(ErrorKind::ShapeMismatch, "rhs length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const RowEchelon ech = row_echelon(aug, drop_threshold(m, tol));
  Vector x(m.cols());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    const std::size_t c = ech.pivot_cols[r];
    if (c == m.cols()) return std::nullopt;  // inconsistent row
    x[c] = ech.reduced(r, m.cols());
  }
  for (const auto& k : nullspace(m, tol)) {
    Complex dot{};
    for (std::size_t i = 0; i < x.size(); ++i) dot += std::conj(k[i]) * x[i];
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= dot * k[i];
  }
  Vector r = mat_vec(m, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  if (vector_norm(r) > tol.threshold(vector_norm(b)) * 10.0) return std::nullopt;
  return x;
}

}  // namespace ucstar
