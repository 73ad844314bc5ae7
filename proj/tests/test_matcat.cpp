#include <gtest/gtest.h>

#include "ucstar/matcat.hpp"
#include "ucstar/matcat/random.hpp"

using namespace ucstar;

namespace {

CategoryPtr full_cat(std::vector<MatObject> objs) { return share(MatCategory::full(objs)); }

/// Dimension of {X : X A = A X for all A in gens}, via vec(XA - AX) =
/// (A^T (x) 1 - 1 (x) A) vec(X) with column-major vec, ranked through singular values.
std::size_t commutant_dimension_oracle(const std::vector<Matrix>& gens, std::size_t n) {
  Matrix stacked(gens.size() * n * n, n * n);
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const Matrix& a = gens[g];
    Matrix at(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) at(i, j) = a(j, i);
    const Matrix blk = kron(at, Matrix::identity(n)) - kron(Matrix::identity(n), a);
    for (std::size_t i = 0; i < blk.rows(); ++i)
      for (std::size_t j = 0; j < blk.cols(); ++j) stacked(g * n * n + i, j) = blk(i, j);
  }
  std::size_t zero = 0;
  for (double s : singular_values(stacked))
    if (s < 1e-8) ++zero;
  return zero;
}

}  // namespace

TEST(ValidateCategory, FullCategoryIsValid) {
  EXPECT_TRUE(validate_category(MatCategory::full({{"x", 2}, {"y", 3}})).ok());
}

TEST(ValidateCategory, MissingIdentity) {
  MatCategory c({{"x", 2}});
  c.set_hom(0, 0, Subspace::span({Matrix{{0, 1}, {0, 0}}}));
  const auto r = validate_category(c);
  EXPECT_TRUE(r.has("unitality"));
}

TEST(ValidateCategory, AdjointClosureWitness) {
  MatCategory c({{"x", 2}, {"y", 2}});
  c.set_hom(0, 0, Subspace::full({2, 2}));
  c.set_hom(1, 1, Subspace::full({2, 2}));
  const Matrix m{{0, 1}, {0, 0}};
  c.set_hom(0, 1, Subspace::span({m}));
  // oracle: m* = e_21 has distance 1 from the zero space
  const auto r = validate_category(c);
  ASSERT_TRUE(r.has("adjoint-closure"));
  for (const auto& v : r.violations)
    if (v.check == "adjoint-closure") {
      EXPECT_EQ(v.where, "x|y");
      EXPECT_NEAR(v.residual, m.adjoint().frobenius_norm(), 1e-12);
    }
}

TEST(ValidateCategory, RandomBlockModelsAreValid) {
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    const BlockModel m = random_block_model(rng, 3, 4);
    EXPECT_TRUE(validate_category(*m.category).ok());
  }
}

TEST(ValidateFunctor, IdentityIsValid) {
  auto a = full_cat({{"x", 2}, {"y", 1}});
  EXPECT_TRUE(validate_functor(StarFunctor::identity(a)).ok());
}

TEST(ValidateFunctor, UnitLawViolation) {
  auto a = full_cat({{"x", 1}});
  StarFunctor f(a, a, {0}, {{Matrix{{0}}}});
  EXPECT_TRUE(validate_functor(f).has("unit"));
}

TEST(ValidateFunctor, PerturbedInvolution) {
  auto a = full_cat({{"x", 2}});
  StarFunctor id = StarFunctor::identity(a);
  std::vector<Matrix> imgs = id.images(0, 0);
  // matrix unit e_12 is basis element 1; perturb it only
  imgs[1] = imgs[1] + Matrix{{0, 0}, {0.5, 0}};
  StarFunctor bad(a, a, {0}, {imgs});
  const auto r = validate_functor(bad);
  ASSERT_TRUE(r.has("involution"));
  // oracle: F(e21) = e21 while F(e12)* = e21 + 0.5 e12
  EXPECT_NEAR(distance(bad.apply(0, 0, Matrix{{0, 0}, {1, 0}}), bad.images(0, 0)[1].adjoint()), 0.5, 1e-12);
}

TEST(ValidateFunctor, RandomBlockFunctorsAreValid) {
  Rng rng(12);
  for (int k = 0; k < 20; ++k) {
    const BlockModel m = random_block_model(rng, 3, 3);
    const BlockFunctor f = random_block_functor(rng, m);
    EXPECT_TRUE(validate_functor(f.functor).ok()) << k;
  }
}

TEST(Unitarize, Examples) {
  EXPECT_LT(distance(unitarize(Matrix::identity(3)), Matrix::identity(3)), 1e-12);
  const Matrix u = unitarize(Matrix{{2, 0}, {0, -3}});
  EXPECT_LT(distance(u, Matrix{{1, 0}, {0, -1}}), 1e-12);
  Rng rng(3);
  const Matrix v = random_unitary(rng, 3);
  EXPECT_LT(distance(unitarize(2.0 * v), v), 1e-10);
}

TEST(Unitarize, Errors) {
  try {
    unitarize(Matrix{{1, 0}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularOperand);
  }
  MatCategory c = MatCategory::full({{"x", 2}, {"y", 3}});
  try {
    unitarize(c, 0, 1, Matrix(3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvertible);
  }
}

TEST(Unitarize, IdempotentAndInHom) {
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    // equal multiplicities, so hom(0, 1) contains invertibles
    const BlockModel m = make_block_model(rng, {1, 2}, {{1, 1}, {1, 1}});
    const Matrix a = m.random_arrow(rng, 0, 1);
    const Matrix u = unitarize(*m.category, 0, 1, a);
    EXPECT_TRUE(is_unitary(u, Tolerance{1e-8, 1e-8}));
    EXPECT_LT(m.category->hom(0, 1).residual(u), 1e-8);
    EXPECT_LT(distance(unitarize(u), u), 1e-9);
  }
}

TEST(IsoExists, Examples) {
  MatCategory c = MatCategory::full({{"x", 2}, {"y", 3}});
  EXPECT_TRUE(iso_exists(c, 0, 0, 1).yes());
  auto v = iso_exists(c, 0, 1, 1);
  EXPECT_FALSE(v.yes());
  EXPECT_TRUE(v.certain);

  MatCategory d({{"x", 2}, {"y", 2}});
  d.set_hom(0, 1, Subspace::span({Matrix{{0, 1}, {0, 0}}}));
  auto w = iso_exists(d, 0, 1, 1);
  EXPECT_FALSE(w.yes());
  EXPECT_FALSE(w.certain);
  EXPECT_EQ(w.samples_drawn, 64u);
}

TEST(IsoExists, FindsConjugatedObjects) {
  Rng rng(8);
  const BlockModel m = make_block_model(rng, {1, 2}, {{1, 1}, {1, 1}});
  const auto v = iso_exists(*m.category, 0, 1, 42);
  ASSERT_TRUE(v.yes());
  EXPECT_TRUE(is_unitary(*v.unitary));
  EXPECT_LT(m.category->hom(0, 1).residual(*v.unitary), 1e-9);
}

TEST(NatSpace, ScalarsForFullMatrixAlgebra) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto a = full_cat({{"x", n}});
    const auto id = StarFunctor::identity(a);
    const auto space = nat_space(id, id);
    EXPECT_EQ(space.dimension(), commutant_dimension_oracle(a->hom(0, 0).basis(), n));
    EXPECT_EQ(space.dimension(), 1u);
  }
}

TEST(NatSpace, TwoObjectsWithZeroCrossHoms) {
  MatCategory c({{"x", 1}, {"y", 1}});
  c.set_hom(0, 0, Subspace::full({1, 1}));
  c.set_hom(1, 1, Subspace::full({1, 1}));
  auto a = share(c);
  const auto id = StarFunctor::identity(a);
  EXPECT_EQ(nat_space(id, id).dimension(), 2u);
}

TEST(NatSpace, GenericPairHasNoTransformations) {
  // diagonal algebra of dim 2 acting on C^2 via two inequivalent representations
  MatCategory c({{"x", 2}});
  c.set_hom(0, 0, Subspace::span({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}}));
  auto a = share(c);
  auto b = full_cat({{"p", 1}});
  // characters a -> a_11 and a -> a_22
  auto chi = [&](std::size_t k) {
    return StarFunctor::from_action(a, b, {0}, [k](std::size_t, std::size_t, const Matrix& m) {
      return Matrix{{m(k, k)}};
    });
  };
  const auto f = chi(0), g = chi(1);
  // oracle: alpha (1x1) must satisfy alpha * a_11 = a_22 * alpha for all diagonal a, forcing 0
  EXPECT_EQ(nat_space(f, g).dimension(), 0u);
  EXPECT_EQ(nat_space(f, f).dimension(), 1u);
}

TEST(NatSpace, NotParallel) {
  auto a = full_cat({{"x", 1}});
  auto b = full_cat({{"x", 2}});
  try {
    nat_space(StarFunctor::identity(a), StarFunctor::identity(b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParallel);
  }
}

TEST(NatSpace, BasisIsNaturalAndMatchesOracleOnRandomFunctors) {
  Rng rng(21);
  for (int k = 0; k < 10; ++k) {
    const BlockModel m = make_block_model(rng, {1}, {{2}});
    const auto id = StarFunctor::identity(m.category);
    const auto space = nat_space(id, id);
    EXPECT_EQ(space.dimension(), commutant_dimension_oracle(m.category->hom(0, 0).basis(), 2));
    for (const auto& t : space.basis) EXPECT_LT(naturality_residual(id, id, t), 1e-9);
  }
}

TEST(NatAlgebra, Operations) {
  auto a = full_cat({{"x", 2}, {"y", 1}});
  const auto id = StarFunctor::identity(a);
  const NatTransform one = identity_transform(id);
  const NatTransform inv = nat::involute(one);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_EQ(inv[x], one[x]);

  Rng rng(1);
  NatTransform u{{random_unitary(rng, 2), random_unitary(rng, 1)}};
  const NatTransform c = nat::compose(u, nat::involute(u));
  for (std::size_t x = 0; x < 2; ++x) EXPECT_LT(distance(c[x], one[x]), 1e-12);

  NatTransform b{{rng.matrix(2, 2), rng.matrix(1, 1)}};
  const NatTransform s = nat::scale_add(2.0, u, b);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_EQ(s[x], 2.0 * u[x] + b[x]);
  EXPECT_NEAR(sup_norm(u), 1.0, 1e-12);
}

TEST(TensorMax, UnitObject) {
  Rng rng(4);
  const BlockModel m = random_block_model(rng, {2, 3});
  const MatCategory t = tensor_max(*m.category, MatCategory::unit());
  ASSERT_EQ(t.size(), 2u);
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_EQ(t.dim(x), m.category->dim(x));
    for (std::size_t y = 0; y < 2; ++y) EXPECT_EQ(t.hom(x, y).dimension(), m.category->hom(x, y).dimension());
  }
}

TEST(TensorMax, FullMatrixAlgebras) {
  const MatCategory t = tensor_max(MatCategory::full({{"x", 2}}), MatCategory::full({{"y", 3}}));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.dim(0), 6u);
  EXPECT_EQ(t.hom(0, 0).dimension(), 36u);
  // rank oracle: the Kronecker span really has full rank 36
  std::vector<Matrix> b = t.hom(0, 0).basis();
  EXPECT_EQ(Subspace::span(std::span<const Matrix>(b)).dimension(), 36u);
  EXPECT_TRUE(validate_category(t).ok());
}

TEST(TensorMax, SymmetricDimensionsAndMultiplicative) {
  Rng rng(6);
  for (int k = 0; k < 5; ++k) {
    const BlockModel a = random_block_model(rng, 2, 2);
    const BlockModel b = random_block_model(rng, 2, 2);
    const MatCategory ab = tensor_max(*a.category, *b.category);
    const MatCategory ba = tensor_max(*b.category, *a.category);
    EXPECT_TRUE(validate_category(ab).ok());
    const auto& A = *a.category;
    const auto& B = *b.category;
    for (std::size_t x = 0; x < A.size(); ++x)
      for (std::size_t y = 0; y < B.size(); ++y)
        for (std::size_t x2 = 0; x2 < A.size(); ++x2)
          for (std::size_t y2 = 0; y2 < B.size(); ++y2) {
            const auto d = ab.hom(pair_index(B, x, y), pair_index(B, x2, y2)).dimension();
            EXPECT_EQ(d, A.hom(x, x2).dimension() * B.hom(y, y2).dimension());
            EXPECT_EQ(d, ba.hom(pair_index(A, y, x), pair_index(A, y2, x2)).dimension());
          }
    const BlockModel tb = tensor_block_model(a, b);
    EXPECT_TRUE(tb.category->same_as(ab));
  }
}

TEST(Product, OneObjectCategories) {
  const MatCategory p = product(MatCategory::full({{"x", 2}}), MatCategory::full({{"y", 3}}));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p.dim(0), 5u);
  EXPECT_EQ(p.hom(0, 0).dimension(), 4u + 9u);
  EXPECT_TRUE(validate_category(p).ok());
}

TEST(Equalizer, SelfEqualizerIsSource) {
  Rng rng(9);
  const BlockModel m = random_block_model(rng, 2, 3);
  const auto f = random_block_functor(rng, m).functor;
  const Equalizer e = equalizer(f, f);
  EXPECT_TRUE(e.category->same_as(*m.category));
}

TEST(Equalizer, DistinctCharacters) {
  MatCategory c({{"x", 2}});
  c.set_hom(0, 0, Subspace::span({Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}}));
  auto a = share(c);
  auto b = full_cat({{"p", 1}});
  auto chi = [&](std::size_t k) {
    return StarFunctor::from_action(a, b, {0}, [k](std::size_t, std::size_t, const Matrix& m) {
      return Matrix{{m(k, k)}};
    });
  };
  const Equalizer e = equalizer(chi(0), chi(1));
  // kernel oracle: diag(s, t) with s = t is the line of scalars
  EXPECT_EQ(e.category->hom(0, 0).dimension(), 1u);
  EXPECT_TRUE(e.category->hom(0, 0).contains(Matrix::identity(2)));
  EXPECT_TRUE(validate_category(*e.category).ok());
  EXPECT_TRUE(validate_functor(e.inclusion).ok());
}

TEST(Equalizer, DropsObjectsWithDifferentImages) {
  auto a = full_cat({{"x", 1}, {"y", 1}});
  auto b = full_cat({{"p", 1}, {"q", 1}});
  const auto f = StarFunctor::identity(a);
  const auto swap = StarFunctor::from_action(a, a, {1, 0}, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  const Equalizer e = equalizer(f, swap);
  EXPECT_EQ(e.category->size(), 0u);
  (void)b;
}

TEST(Exponential, UnitCase) {
  auto a = full_cat({{"x", 2}});
  auto unit = share(MatCategory::unit());
  auto t = share(tensor_max(*a, *unit));
  const auto id = StarFunctor::identity(t);
  const CurriedFunctor g = curry(id, a, unit);
  ASSERT_EQ(g.on_objects.size(), 1u);
  // F(1_x (x) -) embeds scalars as multiples of the identity
  EXPECT_LT(distance(g.on_objects[0].images(0, 0)[0], Matrix::identity(2)), 1e-12);
  EXPECT_LT(functor_residual(uncurry(g, t), id), 1e-12);
}

TEST(Exponential, RoundTripAndBound) {
  Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const BlockModel a = random_block_model(rng, 2, 2);
    const BlockModel b = random_block_model(rng, 2, 2);
    const BlockModel tb = tensor_block_model(a, b);
    RandomFunctorOptions opt;
    opt.max_dim = 6;
    const BlockFunctor bf = random_block_functor(rng, tb, opt);
    auto t = share(tensor_max(*a.category, *b.category));
    const StarFunctor f = StarFunctor::from_action(t, bf.functor.target(), bf.functor.object_map(),
                                                   [&](std::size_t x, std::size_t y, const Matrix& m) {
                                                     return bf.functor.apply(x, y, m);
                                                   });
    ASSERT_TRUE(validate_functor(f).ok());
    const CurriedFunctor g = curry(f, a.category, b.category);
    EXPECT_LT(functor_residual(uncurry(g, t), f), 1e-9);
    EXPECT_LT(curried_residual(curry(uncurry(g, t), a.category, b.category), g), 1e-9);
    for (std::size_t x = 0; x < a.objects(); ++x)
      for (std::size_t x2 = 0; x2 < a.objects(); ++x2) {
        if (a.category->hom(x, x2).dimension() == 0) continue;
        const Matrix m = a.random_arrow(rng, x, x2);
        EXPECT_LE(sup_norm(g.apply(x, x2, m)), op_norm(m) + 1e-9);
      }
  }
}

TEST(FunctorProperties, NormDecreasingAndIsometricWhenFaithful) {
  Rng rng(41);
  for (int k = 0; k < 30; ++k) {
    const BlockModel m = random_block_model(rng, 3, 3);
    const BlockFunctor bf = random_block_functor(rng, m);
    const auto& f = bf.functor;
    for (std::size_t x = 0; x < m.objects(); ++x)
      for (std::size_t y = 0; y < m.objects(); ++y) {
        if (m.category->hom(x, y).dimension() == 0) continue;
        const Matrix a = m.random_arrow(rng, x, y);
        const double fa = op_norm(f.apply(x, y, a));
        EXPECT_LE(fa, op_norm(a) + 1e-9);
        if (hom_rank(f, x, y) == m.category->hom(x, y).dimension()) {
          EXPECT_NEAR(fa, op_norm(a), 1e-8);
        }
      }
  }
}
