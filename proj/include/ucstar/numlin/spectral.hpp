#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <vector>

#include "ucstar/numlin/matrix.hpp"

namespace ucstar {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector for values[k]
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

inline void require_hermitian(const Matrix& h, const Tolerance& tol) {
  if (!h.is_square()) throw Error(ErrorKind::NotSquare, "expected a square matrix, got " + h.shape_string());
  const double asym = distance(h, h.adjoint());
  if (asym > tol.threshold(h.frobenius_norm())) {
    throw Error(ErrorKind::NotHermitian, "||H - H*|| = " + std::to_string(asym));
  }
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for a Hermitian matrix. Each rotation first
/// removes the phase of the pivot entry, then applies the real symmetric
/// rotation that annihilates it. Deterministic sweep order (p < q, row-major).
inline HermitianEigen hermitian_eigen(const Matrix& h_in, const Tolerance& tol = {}) {
  detail::require_hermitian(h_in, tol);
  const std::size_t n = h_in.rows();
  Matrix a = 0.5 * (h_in + h_in.adjoint());
  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (detail::off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag <= 1e-300 || mag <= 1e-18 * scale) continue;
        const Complex phase = g / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

enum class HermFn { Sqrt, InvSqrt, Inv };

/// f(H) = V f(D) V* for Hermitian H. For InvSqrt/Inv every eigenvalue must
/// exceed `min_eigenvalue` (defaults to tol.eps_abs).
inline Matrix herm_funcalc(const Matrix& h, HermFn fn, const Tolerance& tol = {},
                           std::optional<double> min_eigenvalue = std::nullopt) {
  const HermitianEigen eig = hermitian_eigen(h, tol);
  const std::size_t n = h.rows();
  const double floor = min_eigenvalue.value_or(tol.eps_abs);
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    switch (fn) {
      case HermFn::Sqrt:
        if (lambda < -tol.threshold(std::abs(eig.values.back()))) {
          throw Error(ErrorKind::NotPositive, "negative eigenvalue " + std::to_string(lambda));
        }
        f[k] = std::sqrt(std::max(lambda, 0.0));
        break;
      case HermFn::InvSqrt:
      case HermFn::Inv:
        if (!(lambda > floor)) {
          throw Error(ErrorKind::SingularOperand, "eigenvalue " + std::to_string(lambda) +
                                                      " not above " + std::to_string(floor));
        }
        f[k] = fn == HermFn::Inv ? 1.0 / lambda : 1.0 / std::sqrt(lambda);
        break;
    }
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < n; ++k) s += eig.vectors(i, k) * f[k] * std::conj(eig.vectors(j, k));
      out(i, j) = s;
    }
  return 0.5 * (out + out.adjoint());
}

/// Singular values, descending, from the eigenvalues of the smaller Gram matrix.
inline std::vector<double> singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  const Matrix gram = m.rows() >= m.cols() ? m.adjoint() * m : m * m.adjoint();
  const HermitianEigen eig = hermitian_eigen(gram, Tolerance{1e-6, 1e-6});
  std::vector<double> s(eig.values.size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::sqrt(std::max(eig.values[k], 0.0));
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

/// Operator norm (largest singular value), the C*-norm in the concrete model.
inline double op_norm(const Matrix& m) {
  m.check_finite();
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

/// Inverse by LU with partial pivoting; nullopt when a pivot vanishes exactly.
inline std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NotSquare, "inverse of " + m.shape_string());
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) == 0.0) return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Complex d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  for (const auto& z : inv.entries())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
  return inv;
}

/// Smallest singular value. For square input it is 1/||M^{-1}||, which stays
/// accurate for nearly singular matrices where the Gram route loses half the digits.
inline double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.is_square()) {
    const auto inv = inverse(m);
    if (!inv) return 0.0;
    const double n = op_norm(*inv);
    return n > 0 ? 1.0 / n : 0.0;
  }
  if (m.rows() < m.cols()) return 0.0;  // wide matrices have a kernel
  return singular_values(m).back();
}

}  // namespace ucstar
