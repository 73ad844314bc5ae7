#include <gtest/gtest.h>

#include <cmath>

#include "ucstar/numlin.hpp"

using namespace ucstar;

namespace {

constexpr double kEps = 1e-9;

// Closed-form singular values of a 2x2 matrix from the characteristic
// polynomial of A*A; independent of the Jacobi route.
std::pair<double, double> oracle_singular_values_2x2(const Matrix& a) {
  const Matrix g = a.adjoint() * a;
  const double tr = (g(0, 0) + g(1, 1)).real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double disc = std::sqrt(std::max(tr * tr - 4 * det, 0.0));
  return {std::sqrt((tr + disc) / 2), std::sqrt(std::max((tr - disc) / 2, 0.0))};
}

// Leibniz determinant, brute force over permutations.
Complex oracle_det(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total{};
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Complex term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix random_hermitian_positive(Rng& rng, std::size_t n) {
  const Matrix a = rng.matrix(n, n);
  return a.adjoint() * a + 0.1 * Matrix::identity(n);
}

}  // namespace

TEST(OpNorm, ZeroAndIdentity) {
  EXPECT_DOUBLE_EQ(op_norm(Matrix{{0.0}}), 0.0);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_NEAR(op_norm(Matrix::identity(n)), 1.0, kEps);
}

TEST(OpNorm, NilpotentMatchesOracle) {
  const Matrix a{{0, 1}, {0, 0}};
  const auto [s_max, s_min] = oracle_singular_values_2x2(a);
  EXPECT_NEAR(s_max, 1.0, 1e-15);
  EXPECT_NEAR(op_norm(a), s_max, kEps);
  EXPECT_NEAR(smallest_singular_value(a), s_min, kEps);
}

TEST(OpNorm, RandomTwoByTwoMatchesOracle) {
  Rng rng(11);
  for (int k = 0; k < 50; ++k) {
    const Matrix a = rng.matrix(2, 2);
    EXPECT_NEAR(op_norm(a), oracle_singular_values_2x2(a).first, 1e-12);
  }
}

TEST(OpNorm, RejectsNonFinite) {
  EXPECT_THROW(Matrix(1, 1, {Complex(NAN, 0)}), Error);
  try {
    Matrix m{{std::numeric_limits<double>::infinity()}};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidMatrix);
  }
}

TEST(OpNorm, Properties) {
  Rng rng(2024);
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = rng.index(1, 5), n = rng.index(1, 5), p = rng.index(1, 5);
    const Matrix a = rng.matrix(m, n);
    const Matrix b = rng.matrix(n, p);
    EXPECT_LE(op_norm(a * b), op_norm(a) * op_norm(b) + kEps);
    EXPECT_NEAR(op_norm(a.adjoint()), op_norm(a), kEps);
    EXPECT_NEAR(op_norm(a.adjoint() * a), op_norm(a) * op_norm(a), kEps * 10);
  }
}

TEST(HermFuncalc, DiagonalInvSqrt) {
  const Matrix h{{4, 0}, {0, 9}};
  const Matrix r = herm_funcalc(h, HermFn::InvSqrt);
  EXPECT_LT(distance(r, Matrix{{0.5, 0}, {0, 1.0 / 3}}), kEps);
}

TEST(HermFuncalc, SqrtOfIdentity) {
  EXPECT_LT(distance(herm_funcalc(Matrix::identity(3), HermFn::Sqrt), Matrix::identity(3)), kEps);
}

TEST(HermFuncalc, InvSqrtMatchesEigenOracle) {
  // Eigenvectors (1,1)/sqrt2 -> 3 and (1,-1)/sqrt2 -> 1, worked by hand.
  const Matrix h{{2, 1}, {1, 2}};
  const double s = 1.0 / std::sqrt(2.0);
  const Matrix p1 = Matrix{{s}, {s}} * Matrix{{s, s}};
  const Matrix p2 = Matrix{{s}, {-s}} * Matrix{{s, -s}};
  const Matrix expected = (1.0 / std::sqrt(3.0)) * p1 + p2;
  const Matrix r = herm_funcalc(h, HermFn::InvSqrt);
  EXPECT_LT(distance(r, expected), kEps);
  EXPECT_LT(distance(r * r * h, Matrix::identity(2)), kEps);
  EXPECT_LT(distance(r, r.adjoint()), 1e-15);
}

TEST(HermFuncalc, Errors) {
  try {
    herm_funcalc(Matrix{{1, 2}, {0, 1}}, HermFn::Sqrt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHermitian);
  }
  try {
    herm_funcalc(Matrix{{1, 0}, {0, 0}}, HermFn::InvSqrt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularOperand);
  }
  try {
    herm_funcalc(Matrix{{1, 0}, {0, 1e-12}}, HermFn::Inv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularOperand);
  }
}

TEST(HermFuncalc, SqrtSquaresBack) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const Matrix h = random_hermitian_positive(rng, rng.index(1, 6));
    const Matrix r = herm_funcalc(h, HermFn::Sqrt);
    EXPECT_LT(distance(r * r, h), kEps * std::max(1.0, h.frobenius_norm()));
    const Matrix q = herm_funcalc(h, HermFn::InvSqrt);
    EXPECT_LT(distance(q * q * h, Matrix::identity(h.rows())), 1e-8);
  }
}

TEST(HermFuncalc, ComplexEntries) {
  const Matrix h{{2, Complex(0, 1)}, {Complex(0, -1), 2}};
  const HermitianEigen e = hermitian_eigen(h);
  EXPECT_NEAR(e.values[0], 1.0, 1e-12);
  EXPECT_NEAR(e.values[1], 3.0, 1e-12);
  const Matrix d = Matrix::diagonal(std::vector<Complex>{1.0, 3.0});
  EXPECT_LT(distance(e.vectors * d * e.vectors.adjoint(), h), 1e-12);
}

TEST(SubspaceSpan, DependentInputs) {
  const auto s = Subspace::span({Matrix::identity(2), 2.0 * Matrix::identity(2)});
  EXPECT_EQ(s.dimension(), 1u);
  EXPECT_TRUE(s.contains(Matrix::identity(2)));
}

TEST(SubspaceSpan, EmptyWithAndWithoutShape) {
  EXPECT_EQ(Subspace::span(std::span<const Matrix>{}, Shape{2, 2}).dimension(), 0u);
  try {
    Subspace::span(std::span<const Matrix>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MissingShape);
  }
  try {
    Subspace::span({Matrix::identity(2), Matrix::identity(3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(SubspaceSpan, MatrixUnitsRankOracle) {
  std::vector<Matrix> units;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) units.push_back(Matrix::unit(2, 2, i, j));
  // Oracle: the 4x4 matrix of vectorized units has nonzero determinant.
  Matrix vec(4, 4);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t e = 0; e < 4; ++e) vec(e, k) = units[k].entries()[e];
  const std::size_t oracle_rank = std::abs(oracle_det(vec)) > 0.5 ? 4 : 0;
  EXPECT_EQ(oracle_rank, 4u);
  EXPECT_EQ(Subspace::span(units).dimension(), oracle_rank);
}

TEST(SubspaceSpan, IdempotentAndContainsInputs) {
  Rng rng(77);
  for (int k = 0; k < 50; ++k) {
    const std::size_t r = rng.index(1, 3), c = rng.index(1, 3);
    std::vector<Matrix> mats;
    const std::size_t count = rng.index(0, 5);
    for (std::size_t i = 0; i < count; ++i) mats.push_back(rng.matrix(r, c));
    if (count >= 2) mats.push_back(mats[0] + 2.0 * mats[1]);
    const auto s = Subspace::span(mats, Shape{r, c});
    EXPECT_LE(s.dimension(), mats.size());
    for (const auto& m : mats) EXPECT_TRUE(s.contains(m));
    const auto again = Subspace::span(s.basis(), Shape{r, c});
    EXPECT_EQ(again.dimension(), s.dimension());
    EXPECT_TRUE(again.same_space(s));
    for (std::size_t i = 0; i < s.dimension(); ++i)
      for (std::size_t j = 0; j < s.dimension(); ++j)
        EXPECT_NEAR(std::abs(hs_inner(s.basis(i), s.basis(j)) - Complex(i == j ? 1.0 : 0.0)), 0.0, kEps);
  }
}

TEST(FindInvertible, ScalarLine) {
  const auto s = Subspace::span({Matrix::identity(2)});
  const auto found = find_invertible(s, 1, 10);
  ASSERT_TRUE(found.element.has_value());
  const Matrix& m = *found.element;
  EXPECT_TRUE(s.contains(m));
  EXPECT_GT(std::abs(m(0, 0)), kEps);
  EXPECT_LT(std::abs(m(0, 1)), 1e-15);
  EXPECT_LT(std::abs(m(0, 0) - m(1, 1)), 1e-12);
}

TEST(FindInvertible, NilpotentLine) {
  const auto s = Subspace::span({Matrix{{0, 1}, {0, 0}}});
  const auto found = find_invertible(s, 3, 64);
  EXPECT_FALSE(found.element.has_value());
  EXPECT_EQ(found.samples_drawn, 64u);
  EXPECT_EQ(found.seed, 3u);
  EXPECT_FALSE(found.exhaustive);
}

TEST(FindInvertible, FullAlgebraOracle) {
  const auto s = Subspace::full({2, 2});
  // Oracle: some 0/1 combination of basis elements has nonzero determinant,
  // so the determinant polynomial on the subspace is not identically zero.
  bool nonzero = false;
  for (unsigned mask = 0; mask < (1u << s.dimension()); ++mask) {
    Matrix m(2, 2);
    for (std::size_t i = 0; i < s.dimension(); ++i)
      if (mask & (1u << i)) m += s.basis(i);
    if (std::abs(oracle_det(m)) > 1e-6) nonzero = true;
  }
  ASSERT_TRUE(nonzero);
  const auto found = find_invertible(s, 9, 8);
  ASSERT_TRUE(found.element.has_value());
  EXPECT_GT(std::abs(oracle_det(*found.element)), 1e-9);
}

TEST(FindInvertible, NotSquare) {
  try {
    find_invertible(Subspace::full({2, 3}), 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSquare);
  }
}

TEST(LinearSystem, NullspaceAndSolve) {
  const Matrix m{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(rank(m), 1u);
  const auto ker = nullspace(m);
  EXPECT_EQ(ker.size(), 2u);
  for (const auto& k : ker) EXPECT_LT(vector_norm(mat_vec(m, k)), 1e-12);
  const auto x = solve(m, {1.0, 2.0});
  ASSERT_TRUE(x.has_value());
  EXPECT_LT(vector_norm(mat_vec(m, *x)) - std::sqrt(5.0), 1e-12);
  EXPECT_FALSE(solve(m, {1.0, 0.0}).has_value());
}
