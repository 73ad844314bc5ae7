#include <gtest/gtest.h>

#include <thread>

#include "ucstar/gpd.hpp"
#include "ucstar/model.hpp"

using namespace ucstar;

namespace {

CategoryPtr unit_category() { return share(MatCategory::unit("pt")); }

/// The interval's C*-category, with the functor picking out object 0.
struct IntervalPick {
  CStarMax interval = cstar_max(groupoids::interval());
  CategoryPtr point = unit_category();
  StarFunctor zero = StarFunctor::from_action(point, interval.category, {0}, [](std::size_t, std::size_t, const Matrix& m) {
    return Complex(m(0, 0)) * Matrix::identity(2);
  });
  Matrix generator() const { return interval.embed(interval.groupoid.arrow_index("u")); }
};

/// Scalars into the 2x2 matrices on one object.
StarFunctor scalar_inclusion() {
  auto m2 = share(MatCategory::full({{"x", 2}}));
  return StarFunctor::from_action(unit_category(), m2, {0},
                                  [](std::size_t, std::size_t, const Matrix& m) { return Complex(m(0, 0)) * Matrix::identity(2); });
}

/// Diagonal 2x2 matrices onto their first entry.
StarFunctor first_entry() {
  MatCategory d({{"x", 2}});
  d.set_hom(0, 0, Subspace::from_orthonormal({2, 2}, {Matrix{{1, 0}, {0, 0}}, Matrix{{0, 0}, {0, 1}}}));
  auto dp = share(std::move(d));
  return StarFunctor::from_action(dp, unit_category(), {0}, [](std::size_t, std::size_t, const Matrix& m) { return Matrix{{m(0, 0)}}; });
}

double worst_naturality(const StarFunctor& f, const StarFunctor& g, const NatTransform& t) {
  return naturality_residual(f, g, t);
}

}  // namespace

TEST(Predicates, Identity) {
  auto a = share(MatCategory::full({{"x", 2}, {"y", 1}}));
  const auto id = StarFunctor::identity(a);
  EXPECT_TRUE(is_cofibration(id));
  EXPECT_TRUE(is_weak_equivalence(id).yes());
  EXPECT_TRUE(is_trivial_fibration(id));
  for (auto g : {Generator::U, Generator::V, Generator::W}) EXPECT_TRUE(rlp_generating(id, g).holds);
}

TEST(Predicates, FoldIsNotCofibration) {
  auto f = unit_category();
  const CategoryCoproduct c = coproduct(f, f);
  const auto fold = copair(c, StarFunctor::identity(f), StarFunctor::identity(f));
  EXPECT_FALSE(is_cofibration(fold));
  // surjective and faithful but hom(0:pt, 1:pt) = 0 misses the scalars
  EXPECT_FALSE(is_trivial_fibration(fold));
  EXPECT_TRUE(rlp_generating(fold, Generator::U).holds);
  EXPECT_FALSE(rlp_generating(fold, Generator::V).holds);
  EXPECT_TRUE(rlp_generating(fold, Generator::W).holds);
}

TEST(Predicates, PointIntoInterval) {
  const IntervalPick p;
  EXPECT_TRUE(validate_functor(p.zero).ok());
  EXPECT_TRUE(is_cofibration(p.zero));
  const auto w = is_weak_equivalence(p.zero, 3);
  ASSERT_TRUE(w.yes()) << w.witness;
  EXPECT_EQ(w.preimage, (std::vector<std::size_t>{0, 0}));
  EXPECT_TRUE(is_unitary(w.unitaries[1]));
  EXPECT_TRUE(p.interval.category->hom(0, 1).contains(w.unitaries[1]));
  EXPECT_FALSE(is_trivial_fibration(p.zero));
}

TEST(Predicates, ScalarInclusion) {
  const auto f = scalar_inclusion();
  const auto w = is_weak_equivalence(f);
  EXPECT_EQ(w.verdict, Verdict::No);
  EXPECT_NE(w.witness.find("rank 1"), std::string::npos);
  EXPECT_TRUE(rlp_generating(f, Generator::U).holds);
  EXPECT_FALSE(rlp_generating(f, Generator::V).holds);
  EXPECT_TRUE(rlp_generating(f, Generator::W).holds);
  EXPECT_FALSE(is_trivial_fibration(f));
}

TEST(Predicates, KernelWitness) {
  const auto f = first_entry();
  const auto w = rlp_generating(f, Generator::W);
  EXPECT_FALSE(w.holds);
  ASSERT_TRUE(w.kernel_element.has_value());
  EXPECT_NEAR(w.kernel_element->frobenius_norm(), 1.0, 1e-12);
  EXPECT_LT(f.apply(0, 0, *w.kernel_element).frobenius_norm(), 1e-12);
  EXPECT_TRUE(rlp_generating(f, Generator::V).holds);
}

TEST(Predicates, DimensionObstructionIsCertain) {
  // a second object of another dimension is never reached
  auto b = share(MatCategory::full({{"x", 1}, {"y", 2}}));
  const auto f = StarFunctor::from_action(unit_category(), b, {0}, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  const auto w = is_weak_equivalence(f);
  EXPECT_EQ(w.verdict, Verdict::No);
  EXPECT_NE(w.witness.find("object y"), std::string::npos);
}

TEST(Predicates, TrivialFibrationMatchesGenerators) {
  Rng rng(17);
  const auto r = [&] {
    std::vector<StarFunctor> fs;
    for (int k = 0; k < 60; ++k) fs.push_back(random_zoo_functor(rng));
    return rlp_equiv(fs);
  }();
  EXPECT_TRUE(r.ok()) << r.violations.front();
}

TEST(UnitaryLift, IdentityReturnsDatum) {
  Rng rng(2);
  auto a = share(MatCategory::full({{"x", 2}, {"y", 2}}));
  const Matrix v = random_unitary(rng, 2);
  const auto up = solve_unitary_lift(StarFunctor::identity(a), 0, v, 1);
  ASSERT_TRUE(up);
  EXPECT_EQ(up->target, 1u);
  EXPECT_LT(distance(up->unitary, v), 1e-9);
}

TEST(UnitaryLift, CollapseLiftsGenerator) {
  const auto i = cstar_max(groupoids::interval());
  const auto t = cstar_max(groupoids::terminal());
  const auto collapse = cstar_map(i, t, GroupoidFunctor{{0, 0}, {0, 0, 0, 0}});
  const Matrix one{{1}};
  const auto up = solve_unitary_lift(collapse, 0, one, 0, {}, 1);
  ASSERT_TRUE(up);
  EXPECT_EQ(up->target, 1u);
  EXPECT_LT(distance(up->unitary, i.embed(i.groupoid.arrow_index("u"))), 1e-9);
  // first preimage in declaration order is object 0 itself
  const auto first = solve_unitary_lift(collapse, 0, one, 0);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->target, 0u);
}

TEST(UnitaryLift, EmptyFibreAndMismatch) {
  const IntervalPick p;
  EXPECT_FALSE(solve_unitary_lift(p.zero, 0, p.generator(), 1));
  try {
    (void)solve_unitary_lift(p.zero, 0, Matrix::identity(1), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SquareMismatch);
  }
}

TEST(QuasiInverse, Identity) {
  auto a = share(MatCategory::full({{"x", 2}, {"y", 3}}));
  const auto id = StarFunctor::identity(a);
  const auto q = quasi_inverse(id);
  EXPECT_LT(functor_residual(q.functor, id), 1e-12);
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_LT(distance(q.unit[x], Matrix::identity(a->dim(x))), 1e-12);
    EXPECT_LT(distance(q.counit[x], Matrix::identity(a->dim(x))), 1e-12);
  }
}

TEST(QuasiInverse, PointIntoInterval) {
  const IntervalPick p;
  const auto q = quasi_inverse(p.zero, 5);
  EXPECT_EQ(q.functor.object_map(), (std::vector<std::size_t>{0, 0}));
  EXPECT_LT(distance(q.counit[0], Matrix::identity(2)), 1e-12);
  // the counit at 1 is the generating unitary up to a phase
  EXPECT_NEAR(std::abs(hs_inner(p.generator(), q.counit[1])), 2.0, 1e-9);
  EXPECT_TRUE(validate_functor(q.functor).ok());
}

TEST(QuasiInverse, RandomWeakEquivalences) {
  Rng rng(23);
  for (int k = 0; k < 30; ++k) {
    const BlockModel a = random_block_model(rng, 3, 4);
    const auto f = random_weak_equivalence(rng, a).functor;
    const auto q = quasi_inverse(f, k);
    EXPECT_TRUE(validate_functor(q.functor).ok());
    const auto gf = compose(q.functor, f);
    const auto fg = compose(f, q.functor);
    EXPECT_LE(worst_naturality(gf, StarFunctor::identity(f.source()), q.unit), 1e-8);
    EXPECT_LE(worst_naturality(fg, StarFunctor::identity(f.target()), q.counit), 1e-8);
    EXPECT_TRUE(is_unitary_transform(q.unit));
    EXPECT_TRUE(is_unitary_transform(q.counit));
    if (is_cofibration(f)) {
      for (std::size_t x = 0; x < f.source()->size(); ++x) {
        EXPECT_EQ(gf.object(x), x);
        EXPECT_LT(distance(q.counit[f.object(x)], Matrix::identity(f.target()->dim(f.object(x)))), 1e-12);
      }
    }
  }
}

TEST(QuasiInverse, RequiresWitnesses) {
  try {
    (void)quasi_inverse(scalar_inclusion());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAWeakEquivalence);
  }
}

TEST(LiftTcofFib, IdentityLegs) {
  const IntervalPick p;
  const auto ic = p.interval.category;
  // left = identity: the lift is the top leg
  const LiftingSquare s1{p.zero, StarFunctor::identity(p.point), StarFunctor::identity(ic), p.zero};
  const auto l1 = lift_tcof_fib(s1);
  EXPECT_LT(functor_residual(l1.lift, p.zero), 1e-12);
  // right = identity: the lift is the bottom leg
  const auto bottom = StarFunctor::identity(ic);
  const LiftingSquare s2{p.zero, p.zero, StarFunctor::identity(ic), bottom};
  const auto l2 = lift_tcof_fib(s2, 9);
  EXPECT_LT(functor_residual(l2.lift, bottom), 1e-9);
  EXPECT_LT(l2.upper_residual, 1e-9);
  EXPECT_LT(l2.lower_residual, 1e-9);
}

TEST(LiftTcofFib, Obstruction) {
  const IntervalPick p;
  const LiftingSquare s{StarFunctor::identity(p.point), p.zero, p.zero, StarFunctor::identity(p.interval.category)};
  try {
    (void)lift_tcof_fib(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LiftObstruction);
    EXPECT_STREQ(e.what(), "LiftObstruction: 1");
  }
}

TEST(LiftTcofFib, GeneratorSquare) {
  const auto i = cstar_max(groupoids::interval());
  const auto t = cstar_max(groupoids::connected(2, 1));
  // the interval onto the two-object codiscrete groupoid, a bijection
  const auto iso = find_isomorphism(i.groupoid, t.groupoid);
  ASSERT_TRUE(iso);
  const auto f = cstar_map(i, t, *iso);
  const auto g = lift_generator(f, 0, t.embed(iso->arrow_map[i.groupoid.arrow_index("u")]), iso->object_map[1]);
  EXPECT_LT(g.residual, 1e-9);
  EXPECT_EQ(g.lift.object_map(), (std::vector<std::size_t>{0, 1}));
  EXPECT_LT(distance(g.lift.apply(0, 1, g.interval.embed(2)), i.embed(i.groupoid.arrow_index("u"))), 1e-9);
}

TEST(LiftTcofFib, RandomSquares) {
  Rng rng(101);
  for (int k = 0; k < 25; ++k) {
    const auto inst = random_tcof_fib_square(rng);
    const auto l = lift_tcof_fib(inst.square, inst.oracle, k);
    EXPECT_LE(l.upper_residual, 1e-8) << inst.shape;
    EXPECT_LE(l.lower_residual, 1e-8) << inst.shape;
    EXPECT_TRUE(validate_functor(l.lift).ok());
    for (std::size_t z = 0; z < inst.square.left.source()->size(); ++z)
      EXPECT_EQ(l.lift.object(inst.square.left.object(z)), l.top.object(z));
  }
}

TEST(LiftCofTfib, IdentityLegs) {
  Rng rng(4);
  const BlockModel a = random_block_model(rng, 2, 3);
  const auto f = random_weak_equivalence(rng, a, 4, 0).functor;  // a trivial fibration
  ASSERT_TRUE(is_trivial_fibration(f));
  const auto id_a = StarFunctor::identity(f.source());
  const auto id_b = StarFunctor::identity(f.target());
  // right = identity: L = bottom
  const LiftingSquare s1{f, id_a, id_b, f};
  EXPECT_LT(functor_residual(lift_cof_tfib(s1).lift, f), 1e-9);
  // left = identity: L is the hom inverse of the right leg after the bottom
  const LiftingSquare s2{id_a, id_a, f, f};
  const auto l2 = lift_cof_tfib(s2);
  EXPECT_LT(l2.upper_residual, 1e-9);
  EXPECT_LT(l2.lower_residual, 1e-9);
}

TEST(LiftCofTfib, FirstPreimageChoice) {
  // B has two objects over the same object of D; the lift takes the first
  auto d = share(MatCategory::full({{"d", 2}}));
  auto c = share(MatCategory::full({{"c0", 2}, {"c1", 2}}));
  const auto right = StarFunctor::from_action(c, d, {0, 0}, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  ASSERT_TRUE(is_trivial_fibration(right));
  auto b = share(MatCategory::full({{"b", 2}}));
  auto empty = share(MatCategory{});
  const auto e_b = StarFunctor::from_action(empty, b, {}, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  const auto e_c = StarFunctor::from_action(empty, c, {}, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  const auto bottom = StarFunctor::from_action(b, d, {0}, [](std::size_t, std::size_t, const Matrix& m) { return m; });
  const auto l = lift_cof_tfib({e_c, e_b, right, bottom});
  EXPECT_EQ(l.lift.object(0), 0u);
  EXPECT_LT(l.lower_residual, 1e-9);
}

TEST(LiftCofTfib, Preconditions) {
  const IntervalPick p;
  const LiftingSquare s{StarFunctor::identity(p.point), p.zero, p.zero, StarFunctor::identity(p.interval.category)};
  try {
    (void)lift_cof_tfib(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(LiftCofTfib, RandomSquares) {
  Rng rng(202);
  for (int k = 0; k < 25; ++k) {
    const auto inst = random_cof_tfib_square(rng);
    const auto l = lift_cof_tfib(inst.square);
    EXPECT_LE(l.upper_residual, 1e-8) << inst.shape;
    EXPECT_LE(l.lower_residual, 1e-8) << inst.shape;
    EXPECT_TRUE(validate_functor(l.lift).ok());
  }
}

TEST(FactorPath, IdentityOfPoint) {
  auto f = unit_category();
  const auto id = StarFunctor::identity(f);
  const auto r = factor_path(id);
  ASSERT_EQ(r.midway->size(), 1u);
  EXPECT_EQ(r.midway->name(0), "(pt,1,pt)");
  EXPECT_LT(functor_residual(compose(r.second, r.first), id), 1e-12);
}

TEST(FactorPath, PointIntoInterval) {
  const IntervalPick p;
  auto r = factor_path(p.zero, {{0, p.generator(), 1}});
  ASSERT_EQ(r.midway->size(), 2u);
  EXPECT_EQ(r.second.object(1), 1u);
  // P(a) = u' F(a) u* on a : (pt,1,0) -> (pt,g,1)
  const Matrix a{{Complex(0.3, -0.7)}};
  const Matrix want = p.generator() * p.zero.apply(0, 0, a);
  EXPECT_LT(distance(r.second.apply(0, 1, a), want), 1e-12);
  EXPECT_TRUE(validate_category(*r.midway).ok());
  EXPECT_TRUE(validate_functor(r.second).ok());
}

TEST(FactorPath, RandomFunctors) {
  Rng rng(55);
  for (int k = 0; k < 25; ++k) {
    const BlockModel a = random_block_model(rng, 3, 4);
    const auto f = random_block_functor(rng, a).functor;
    const auto r = factor_path(f, random_path_objects(rng, f, 2, k));
    EXPECT_LE(r.residual, 1e-8);
    EXPECT_TRUE(is_cofibration(r.first));
    EXPECT_TRUE(is_weak_equivalence(r.first, k).yes());
    EXPECT_TRUE(validate_category(*r.midway).ok());
    EXPECT_TRUE(validate_functor(r.second).ok());
  }
}

TEST(FactorPath, OracleMaterializes) {
  const IntervalPick p;
  auto r = factor_path(p.zero);
  const auto oracle = path_oracle(r.path);
  const auto up = oracle.lift(0, p.generator(), 1);
  ASSERT_TRUE(up);
  EXPECT_EQ(up->target, 1u);
  EXPECT_EQ(oracle.source()->size(), 2u);
  // asking again reuses the object
  EXPECT_EQ(oracle.lift(0, p.generator(), 1)->target, 1u);
  const auto proj = oracle.functor();
  EXPECT_LT(distance(proj.apply(0, 1, up->unitary), p.generator()), 1e-12);
}

TEST(FactorPath, ConcurrentMaterialization) {
  Rng rng(8);
  auto b = share(MatCategory::full({{"y", 2}}));
  const auto id = StarFunctor::identity(b);
  auto r = factor_path(id);
  std::vector<Matrix> us;
  for (int k = 0; k < 16; ++k) us.push_back(random_unitary(rng, 2));
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&] {
      for (const auto& u : us) r.path->materialize(0, u, 0);
    });
  for (auto& t : threads) t.join();
  EXPECT_EQ(r.path->size(), 17u);
  refresh(r, id);
  EXPECT_TRUE(validate_category(*r.midway).ok());
  EXPECT_LE(r.residual, 1e-12);
}

TEST(FactorCylinder, IdentityGivesFold) {
  auto a = share(MatCategory::full({{"x", 2}, {"y", 1}}));
  const auto r = factor_cylinder(StarFunctor::identity(a));
  EXPECT_EQ(r.midway->size(), 4u);
  EXPECT_EQ(r.second.object_map(), (std::vector<std::size_t>{0, 1, 0, 1}));
  EXPECT_TRUE(is_trivial_fibration(r.second));
}

TEST(FactorCylinder, PointIntoInterval) {
  const IntervalPick p;
  const auto r = factor_cylinder(p.zero);
  ASSERT_EQ(r.midway->size(), 3u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(r.midway->hom(i, j).dimension(), 1u);
  EXPECT_TRUE(is_cofibration(r.first));
  EXPECT_TRUE(is_trivial_fibration(r.second));
  EXPECT_LE(r.residual, 1e-12);
}

TEST(FactorCylinder, RandomFunctors) {
  Rng rng(66);
  for (int k = 0; k < 25; ++k) {
    const BlockModel a = random_block_model(rng, 3, 4);
    const auto f = random_block_functor(rng, a).functor;
    const auto r = factor_cylinder(f);
    EXPECT_LE(r.residual, 1e-8);
    EXPECT_TRUE(is_cofibration(r.first));
    EXPECT_TRUE(is_trivial_fibration(r.second));
    EXPECT_TRUE(validate_category(*r.midway).ok());
    const std::size_t na = f.source()->size();
    for (std::size_t y = 0; y < f.target()->size(); ++y)
      for (std::size_t x = 0; x < na; ++x)
        EXPECT_EQ(r.midway->hom(na + y, x).dimension(), f.target()->hom(y, f.object(x)).dimension());
  }
}

TEST(PushoutProduct, PointIntoIntervalTwice) {
  const IntervalPick p;
  const auto v = pushout_product_objects(p.zero, p.zero);
  EXPECT_EQ(v.pushout_size(), 3u);
  EXPECT_TRUE(v.injective);
}

TEST(PushoutProduct, InjectiveAgainstCollapse) {
  const IntervalPick p;
  const CategoryCoproduct c = coproduct(p.point, p.point);
  const auto fold = copair(c, StarFunctor::identity(p.point), StarFunctor::identity(p.point));
  const auto v = pushout_product_objects(p.zero, fold);
  // {(pt,pt) ~ (0,0:pt) ~ (0,1:pt)}, {(1,0:pt)}, {(1,1:pt)}
  EXPECT_EQ(v.pushout_size(), 3u);
  EXPECT_FALSE(v.injective);
  EXPECT_NE(v.witness.find("(1,pt)"), std::string::npos);
}

TEST(PushoutProduct, IdentityGivesBijection) {
  const IntervalPick p;
  auto a = share(MatCategory::full({{"x", 1}, {"y", 1}}));
  const auto v = pushout_product_objects(StarFunctor::identity(a), p.zero);
  EXPECT_EQ(v.pushout_size(), 4u);
  EXPECT_TRUE(v.injective);
}

TEST(Harness, IdentityInstances) {
  auto a = share(MatCategory::full({{"x", 2}}));
  const auto id = StarFunctor::identity(a);
  EXPECT_TRUE(two_of_three({{id, id}}).ok());
  EXPECT_TRUE(retract({{id, id, id, id, id, id}}).ok());
  EXPECT_TRUE(factor_roundtrip({id}).ok());
  EXPECT_TRUE(rlp_equiv({id}).ok());
}

TEST(Harness, RandomTwoOfThreeAndRetracts) {
  Rng rng(77);
  std::vector<std::pair<StarFunctor, StarFunctor>> pairs;
  for (int k = 0; k < 30; ++k) pairs.push_back(random_composable_pair(rng));
  const auto r = two_of_three(pairs, 1);
  EXPECT_TRUE(r.ok()) << r.violations.front();
  std::vector<RetractDiagram> ds;
  for (int k = 0; k < 10; ++k) ds.push_back(random_retract(rng));
  const auto rr = retract(ds, 2);
  EXPECT_TRUE(rr.ok()) << rr.violations.front();
  EXPECT_EQ(rr.unknown, 0u);
}

TEST(Harness, NonFullBothSidesFalse) {
  const auto f = scalar_inclusion();
  EXPECT_FALSE(is_trivial_fibration(f));
  EXPECT_FALSE(rlp_generating(f, Generator::V).holds);
  EXPECT_TRUE(rlp_equiv({f}).ok());
}

TEST(Harness, BrokenRetractReported) {
  // i = r = identity but f and g disagree
  const IntervalPick p;
  auto ic = p.interval.category;
  const auto id = StarFunctor::identity(ic);
  const auto r = retract({{id, conjugation(ic, {Matrix::identity(2), Complex(0, 1) * Matrix::identity(2)}), id, id, id, id}});
  EXPECT_FALSE(r.ok());
}
