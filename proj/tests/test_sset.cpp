#include <gtest/gtest.h>

#include "ucstar/gpd.hpp"
#include "ucstar/matcat/random.hpp"
#include "ucstar/sset.hpp"

using namespace ucstar;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Nondegenerate m-simplices of the horn or boundary: (m+1)-subsets of
/// {0..n} minus the omitted faces.
std::size_t subcomplex_count(std::size_t n, std::size_t m, std::size_t omitted_codim_one) {
  std::size_t c = binomial(n + 1, m + 1);
  if (m == n) c -= 1;
  if (m + 1 == n) c -= omitted_codim_one;
  return c;
}

}  // namespace

TEST(Standard, TriangleCounts) {
  const auto d = standard(StandardKind::Delta, 2, 2);
  EXPECT_EQ(d.nondegenerate_count(0), 3u);
  EXPECT_EQ(d.nondegenerate_count(1), 3u);
  EXPECT_EQ(d.nondegenerate_count(2), 1u);
  const auto h = standard(StandardKind::Horn, 2, 2, 1);
  EXPECT_EQ(h.nondegenerate_count(0), 3u);
  EXPECT_EQ(h.nondegenerate_count(1), 2u);
  EXPECT_EQ(h.nondegenerate_count(2), 0u);
  EXPECT_THROW((void)h.find(1, "02"), Error);
  const auto b = standard(StandardKind::Boundary, 2, 2);
  EXPECT_EQ(b.nondegenerate_count(1), 3u);
  EXPECT_EQ(b.nondegenerate_count(2), 0u);
}

TEST(Standard, CountsMatchSubsets) {
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t cap = 0; cap <= 4; ++cap) {
      const auto d = standard(StandardKind::Delta, n, cap);
      for (std::size_t m = 0; m <= cap; ++m) {
        // all m-simplices: nondecreasing sequences of length m+1 in n+1 values
        EXPECT_EQ(d.count(m), binomial(n + m + 1, m + 1));
        EXPECT_EQ(d.nondegenerate_count(m), m <= n ? binomial(n + 1, m + 1) : 0u);
      }
      if (n >= 1)
        for (std::size_t k = 0; k <= n; ++k) {
          const auto h = standard(StandardKind::Horn, n, cap, k);
          for (std::size_t m = 0; m <= std::min(cap, n); ++m) EXPECT_EQ(h.nondegenerate_count(m), subcomplex_count(n, m, 1));
        }
      const auto b = standard(StandardKind::Boundary, n, cap);
      for (std::size_t m = 0; m <= std::min(cap, n); ++m) EXPECT_EQ(b.nondegenerate_count(m), subcomplex_count(n, m, 0));
    }
}

TEST(Standard, InvalidParams) {
  for (auto bad : {std::pair<std::size_t, std::size_t>{0, 0}, {2, 3}}) {
    try {
      (void)standard(StandardKind::Horn, bad.first, 2, bad.second);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidParams);
    }
  }
}

TEST(SimplicialSet, IdentityViolationDetected) {
  FiniteSimplicialSet k(2);
  for (auto v : {"a", "b", "c"}) k.add(0, v, {});
  k.add(1, "ab", {1, 0});
  k.add(1, "bc", {2, 1});
  k.add(1, "ac", {2, 0});
  k.add(2, "abc", {0, 2, 1});  // d0 and d2 swapped
  try {
    k.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSimplicialSet);
  }
}

TEST(SimplicialSet, NerveSatisfiesIdentities) {
  EXPECT_NO_THROW(nerve(groupoids::connected(2, 2), 3).validate());
  EXPECT_NO_THROW(nerve(groupoids::ordinal(3), 4).validate());
}

TEST(SimplicialMap, HornInclusion) {
  const auto h = standard(StandardKind::Horn, 3, 3, 1);
  const auto d = standard(StandardKind::Delta, 3, 3);
  const auto f = inclusion_by_name(h, d);
  EXPECT_NO_THROW(validate_simplicial_map(f, h, d));
  SimplicialMap bad = f;
  std::swap(bad.maps[0][0], bad.maps[0][1]);
  EXPECT_THROW(validate_simplicial_map(bad, h, d), Error);
}

TEST(Pi, PointIsUnit) {
  EXPECT_TRUE(pi(standard(StandardKind::Delta, 0, 2)).category()->same_as(MatCategory::unit("0")));
}

TEST(Pi, EdgeIsInterval) {
  const auto p = pi(standard(StandardKind::Delta, 1, 2));
  EXPECT_TRUE(find_isomorphism(*p.normalization.groupoid, groupoids::interval()));
  const auto i = cstar_max(groupoids::interval());
  for (std::size_t x = 0; x < 2; ++x) {
    EXPECT_EQ(p.category()->dim(x), i.category->dim(x));
    for (std::size_t y = 0; y < 2; ++y) EXPECT_EQ(p.category()->hom(x, y).dimension(), i.category->hom(x, y).dimension());
  }
}

TEST(Pi, CircleIsInfinite) {
  try {
    (void)pi(standard(StandardKind::Boundary, 2, 2), 10000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFiniteWithinBound);
  }
}

TEST(Pi, HornsAndSimplicesAgree) {
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto d = standard(StandardKind::Delta, n, 2);
    const auto nd = normalize_fp(fundamental_groupoid(d));
    ASSERT_TRUE(nd.finite());
    for (std::size_t k = 0; k <= n; ++k) {
      const auto h = standard(StandardKind::Horn, n, 2, k);
      const auto nh = normalize_fp(fundamental_groupoid(h));
      ASSERT_TRUE(nh.finite());
      EXPECT_TRUE(find_isomorphism(*nh.groupoid, *nd.groupoid));
      // the inclusion itself induces an isomorphism
      const auto v = isomorphism_verdict(pi_map(inclusion_by_name(h, d), h, d));
      EXPECT_TRUE(v.isomorphism()) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Pi, EdgeHornInclusionIsObjectPick) {
  const auto d = standard(StandardKind::Delta, 1, 2);
  for (std::size_t k = 0; k <= 1; ++k) {
    const auto h = standard(StandardKind::Horn, 1, 2, k);
    const auto f = pi_map(inclusion_by_name(h, d), h, d);
    ASSERT_EQ(f.source()->size(), 1u);
    EXPECT_EQ(f.source()->dim(0), 1u);
    EXPECT_EQ(f.target()->size(), 2u);
    EXPECT_EQ(f.object(0), k);
    EXPECT_TRUE(validate_functor(f).ok());
  }
}

TEST(Tensor, WithPointAndEdge) {
  const auto a = MatCategory::full({{"x", 2}, {"y", 1}});
  const auto t0 = tensor_with_sset(a, standard(StandardKind::Delta, 0, 2));
  ASSERT_EQ(t0.size(), a.size());
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) EXPECT_EQ(t0.hom(x, y).dimension(), a.hom(x, y).dimension());
  const auto t1 = tensor_with_sset(a, standard(StandardKind::Delta, 1, 2));
  const auto ref = tensor_max(a, *cstar_max(groupoids::interval()).category);
  ASSERT_EQ(t1.size(), ref.size());
  for (std::size_t x = 0; x < t1.size(); ++x)
    for (std::size_t y = 0; y < t1.size(); ++y) {
      // Kronecker counting: dim A(x1, y1) * dim I(x2, y2) = dim A(x1, y1)
      EXPECT_EQ(t1.hom(x, y).dimension(), ref.hom(x, y).dimension());
      EXPECT_EQ(t1.hom(x, y).dimension(), a.hom(x / 2, y / 2).dimension());
    }
}

TEST(Cotensor, PointProbesAreObjects) {
  auto a = share(MatCategory::full({{"x", 2}, {"y", 3}}));
  const auto p = pi(standard(StandardKind::Delta, 0, 2));
  std::vector<StarFunctor> probes;
  for (std::size_t x = 0; x < a->size(); ++x)
    probes.push_back(adjunction_extend(p.cstar, a, {{x}, {Matrix::identity(a->dim(x))}}));
  const auto homs = cotensor(p, probes);
  ASSERT_EQ(homs.size(), 4u);
  for (const auto& h : homs) EXPECT_EQ(h.space.dimension(), a->hom(h.from, h.to).dimension());
}

TEST(MapSimplex, Examples) {
  auto f = share(MatCategory::unit());
  const auto id = StarFunctor::identity(f);
  EXPECT_TRUE(map_simplex_check(f, f, 0, {id}, {}));
  EXPECT_TRUE(map_simplex_check(f, f, 1, {id, id}, {identity_transform(id)}));
  NatTransform two{{Matrix{{2}}}};
  EXPECT_FALSE(map_simplex_check(f, f, 1, {id, id}, {two}));
  EXPECT_THROW(map_simplex_check(f, f, 2, {id, id}, {two}), Error);
}

TEST(MapSimplex, ClosedUnderComposition) {
  Rng rng(41);
  for (int k = 0; k < 20; ++k) {
    const auto g = groupoids::cyclic(rng.index(2, 3));
    const auto c = cstar_max(g);
    auto a = share(MatCategory::full({{"v", 3}}));
    // conjugate one representation by unitaries u then w
    const Matrix u = random_unitary(rng, 3), w = random_unitary(rng, 3);
    UnitaryAssignment phi{{0}, {}};
    const Matrix frame = random_unitary(rng, 3);
    for (std::size_t h = 0; h < g.arrows(); ++h) {
      Matrix perm(3, 3);
      // trivial plus sign-free rotation: h acts by a cyclic power on a 3-dim permutation module when |G| = 3
      for (std::size_t i = 0; i < 3; ++i) perm((i + (g.arrows() == 3 ? h : 0)) % 3, i) = 1.0;
      phi.arrow_images.push_back(frame * perm * frame.adjoint());
    }
    auto conj = [&](const UnitaryAssignment& p, const Matrix& v) {
      UnitaryAssignment out{p.object_map, {}};
      for (const auto& m : p.arrow_images) out.arrow_images.push_back(v * m * v.adjoint());
      return out;
    };
    const auto f0 = adjunction_extend(c, a, phi);
    const auto f1 = adjunction_extend(c, a, conj(phi, u));
    const auto f2 = adjunction_extend(c, a, conj(conj(phi, u), w));
    const NatTransform t01{{u}}, t12{{w}};
    EXPECT_TRUE(map_simplex_check(c.category, a, 1, {f0, f1}, {t01}));
    EXPECT_TRUE(map_simplex_check(c.category, a, 1, {f1, f2}, {t12}));
    EXPECT_TRUE(map_simplex_check(c.category, a, 1, {f0, f2}, {nat::compose(t12, t01)}));
    EXPECT_TRUE(map_simplex_check(c.category, a, 2, {f0, f1, f2}, {t01, t12}));
  }
}
