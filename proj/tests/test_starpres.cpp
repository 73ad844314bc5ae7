#include <gtest/gtest.h>

#include "ucstar/starpres.hpp"
#include "ucstar/starpres/random.hpp"

using namespace ucstar;
using E = StarExpr;

namespace {

Quiver two_arrows() { return Quiver{{"x", "y", "z"}, {{"a", "x", "y"}, {"b", "y", "z"}}}; }

Presentation one_object(const std::string& x) { return Presentation{Quiver{{x}, {}}, {}, {}}; }

Presentation interval_presentation() {
  Quiver q{{"0", "1"}, {{"u", "0", "1"}}};
  const auto u = FreeStarElement::generator(q, "u");
  return Presentation{q,
                      {{compose(u.adjoint(), u), FreeStarElement::identity("0")},
                       {compose(u, u.adjoint()), FreeStarElement::identity("1")}},
                      {}};
}

}  // namespace

TEST(Reduce, DoubleAdjoint) {
  const auto q = two_arrows();
  const auto r = reduce(q, E::adj(E::adj(E::gen("a"))), 1);
  EXPECT_EQ(r.element, FreeStarElement::generator(q, "a"));
}

TEST(Reduce, AdjointOfComposite) {
  const auto q = two_arrows();
  const auto r = reduce(q, E::adj(E::comp(E::gen("b"), E::gen("a"))), 2);
  EXPECT_EQ(r.element, FreeStarElement::word(q, {{"a", true}, {"b", true}}));
  EXPECT_EQ(r.element.src(), "z");
  EXPECT_EQ(r.element.tgt(), "x");
}

TEST(Reduce, UnitElimination) {
  const auto q = two_arrows();
  const auto r = reduce(q, E::comp(E::id("y"), E::comp(E::gen("a"), E::id("x"))), 3);
  EXPECT_EQ(r.element, FreeStarElement::generator(q, "a"));
}

TEST(Reduce, ConfluenceAcrossInterleavings) {
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    const Quiver q = random_quiver(rng);
    const auto [e, t] = random_expr(rng, q, q.objects.front(), 4);
    const FreeStarElement direct = to_element(q, e);
    EXPECT_EQ(direct.tgt(), t);
    for (std::uint64_t seed = 0; seed < 4; ++seed) EXPECT_EQ(reduce(q, e, seed).element, direct);
  }
}

TEST(Element, InvolutionHasPeriodTwo) {
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    const Quiver q = random_quiver(rng);
    const auto e = to_element(q, random_expr(rng, q, q.objects.back(), 3).first);
    EXPECT_EQ(e.adjoint().adjoint(), e);
  }
}

TEST(Element, NonParallelSumRejected) {
  const auto q = two_arrows();
  try {
    (void)(FreeStarElement::generator(q, "a") + FreeStarElement::generator(q, "b"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParallel);
  }
}

TEST(NormBound, Examples) {
  const auto q = two_arrows();
  EXPECT_DOUBLE_EQ(norm_bound(FreeStarElement::identity("x"), {{"a", 5.0}}), 1.0);
  const auto ba = Complex(2.0) * compose(FreeStarElement::generator(q, "b"), FreeStarElement::generator(q, "a"));
  EXPECT_DOUBLE_EQ(norm_bound(ba, {{"a", 1.0}, {"b", 3.0}}), 6.0);
  const auto a = FreeStarElement::generator(q, "a");
  EXPECT_DOUBLE_EQ(norm_bound(a + a, {{"a", 1.0}}), 2.0);
}

TEST(NormBound, MissingBound) {
  const auto q = two_arrows();
  try {
    (void)norm_bound(FreeStarElement::generator(q, "b"), {{"a", 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnboundedGenerator);
  }
}

TEST(NormBound, HoldsUnderEvaluation) {
  Rng rng(7);
  for (int k = 0; k < 300; ++k) {
    const auto inst = random_bounded_instance(rng);
    const Evaluation ev = evaluate(inst.presentation, inst.representation);
    EXPECT_LE(op_norm(ev(inst.element)), norm_bound(inst.element, inst.presentation.bounds) + 1e-9);
  }
}

TEST(Evaluate, SwapUnitaryAccepted) {
  Representation rep{{{"0", 2}, {"1", 2}}, {{"u", Matrix{{0, 1}, {1, 0}}}}};
  const auto p = interval_presentation();
  const auto ev = evaluate(p, rep);
  const Matrix uu = ev(compose(FreeStarElement::generator(p.quiver, "u", true), FreeStarElement::generator(p.quiver, "u")));
  EXPECT_LE(distance(uu, Matrix::identity(2)), 1e-12);
}

TEST(Evaluate, RelationFailure) {
  Quiver q{{"x"}, {{"a", "x", "x"}}};
  const auto a = FreeStarElement::generator(q, "a");
  Presentation p{q, {{compose(a.adjoint(), a), FreeStarElement::identity("x")}}, {}};
  try {
    (void)evaluate(p, {{{"x", 1}}, {{"a", Matrix{{2}}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RelationFailed);
  }
}

TEST(Evaluate, BoundExactlyAttained) {
  Quiver q{{"x"}, {{"a", "x", "x"}}};
  Presentation p{q, {}, {{"a", 1.0}}};
  EXPECT_NO_THROW((void)evaluate(p, {{{"x", 1}}, {{"a", Matrix{{1}}}}}));
  try {
    (void)evaluate(p, {{{"x", 1}}, {{"a", Matrix{{1.001}}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundFailed);
  }
}

TEST(Evaluate, ShapeMismatch) {
  try {
    (void)evaluate(interval_presentation(), {{{"0", 2}, {"1", 3}}, {{"u", Matrix{{0, 1}, {1, 0}}}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(Coproduct, ThreeOneObjectParts) {
  const auto c = coproduct({one_object("*"), one_object("*"), one_object("*")}, RenamePolicy::PrefixPart);
  const auto& q = c.presentation.quiver;
  ASSERT_EQ(q.objects.size(), 3u);
  // zero cross homs: no word joins distinct parts
  std::size_t zero_pairs = 0;
  for (const auto& x : q.objects)
    for (const auto& y : q.objects)
      if (x != y && !q.connected(x, y)) ++zero_pairs;
  EXPECT_EQ(zero_pairs, 6u);
  EXPECT_EQ(c.injections[2].object("*"), "2.*");
}

TEST(Coproduct, NameClashRejected) {
  try {
    (void)coproduct({one_object("*"), one_object("*")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NameClash);
  }
}

TEST(Coproduct, RelationsAndBoundsCarried) {
  const auto c = coproduct({interval_presentation(), interval_presentation()}, RenamePolicy::PrefixPart);
  EXPECT_EQ(c.presentation.relations.size(), 4u);
  EXPECT_TRUE(c.presentation.quiver.has_arrow("1.u"));
  EXPECT_EQ(c.presentation.relations[2].lhs.src(), "1.0");
}

TEST(Coequalizer, EqualMorphismsGiveCodomain) {
  const Presentation b{Quiver{{"p", "q"}, {{"f", "p", "q"}}}, {}, {}};
  const Presentation c = interval_presentation();
  PresentationMorphism f{{{"p", "0"}, {"q", "1"}}, {{"f", FreeStarElement::generator(c.quiver, "u")}}};
  const auto r = coequalizer(f, f, b, c);
  EXPECT_EQ(r.presentation, c);
}

TEST(Coequalizer, IdentifiesTwoDiscreteObjects) {
  const Presentation b = one_object("p");
  const Presentation c{Quiver{{"0", "1"}, {}}, {}, {}};
  const auto r = coequalizer({{{"p", "0"}}, {}}, {{{"p", "1"}}, {}}, b, c);
  EXPECT_EQ(r.presentation.quiver.objects, std::vector<std::string>{"0"});
  EXPECT_EQ(r.quotient.object("1"), "0");
}

TEST(Coequalizer, EndpointsOfAnArrowGiveALoop) {
  const Presentation b = one_object("p");
  const Presentation c{Quiver{{"0", "1"}, {{"a", "0", "1"}}}, {}, {{"a", 2.0}}};
  const auto r = coequalizer({{{"p", "0"}}, {}}, {{{"p", "1"}}, {}}, b, c);
  // hand-computed quotient quiver: one object, a : 0 -> 0
  const Quiver want{{"0"}, {{"a", "0", "0"}}};
  EXPECT_EQ(r.presentation.quiver, want);
  EXPECT_TRUE(r.presentation.relations.empty());
  EXPECT_DOUBLE_EQ(r.presentation.bounds.at("a"), 2.0);
}

TEST(Coequalizer, NonLetterImagesBecomeRelations) {
  const Presentation b{Quiver{{"p"}, {{"f", "p", "p"}}}, {}, {}};
  Quiver cq{{"x"}, {{"g", "x", "x"}}};
  const Presentation c{cq, {}, {}};
  const auto g = FreeStarElement::generator(cq, "g");
  PresentationMorphism f1{{{"p", "x"}}, {{"f", compose(g, g)}}};
  PresentationMorphism f2{{{"p", "x"}}, {{"f", FreeStarElement::identity("x")}}};
  const auto r = coequalizer(f1, f2, b, c);
  ASSERT_EQ(r.presentation.relations.size(), 1u);
  // a representation equalizing f1 and f2 factors through the quotient
  EXPECT_NO_THROW((void)evaluate(r.presentation, {{{"x", 2}}, {{"g", Matrix{{0, 1}, {1, 0}}}}}));
  EXPECT_THROW((void)evaluate(r.presentation, {{{"x", 1}}, {{"g", Matrix{{2}}}}}), Error);
}

TEST(Coequalizer, NotParallel) {
  const Presentation b = one_object("p");
  const Presentation c{Quiver{{"0", "1"}, {}}, {}, {}};
  try {
    (void)coequalizer({{{"p", "0"}}, {}}, {{{"q", "1"}}, {}}, b, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotParallel);
  }
}

TEST(Ism, Terminal) {
  const auto p = ism_presentation(groupoids::terminal());
  EXPECT_EQ(p.quiver.objects.size(), 1u);
  // i i = i from the table, i* i = 1 from isometry
  ASSERT_EQ(p.relations.size(), 2u);
  EXPECT_EQ(p.relations[1].rhs, FreeStarElement::identity("*"));
}

TEST(Ism, OneArrowOrdinal) {
  const auto c = groupoids::ordinal(1);
  const auto p = ism_presentation(c);
  const auto arrow = FreeStarElement::generator(p.quiver, "0<=1");
  const Relation iso{compose(arrow.adjoint(), arrow), FreeStarElement::identity("0")};
  const Relation coiso{compose(arrow, arrow.adjoint()), FreeStarElement::identity("1")};
  EXPECT_NE(std::find(p.relations.begin(), p.relations.end(), iso), p.relations.end());
  EXPECT_EQ(std::find(p.relations.begin(), p.relations.end(), coiso), p.relations.end());

  Representation ok{{{"0", 1}, {"1", 2}},
                    {{"0<=0", Matrix{{1}}}, {"1<=1", Matrix::identity(2)}, {"0<=1", Matrix{{1}, {0}}}}};
  EXPECT_NO_THROW((void)evaluate(p, ok));
  Representation bad = ok;
  bad.gens["0<=1"] = Matrix{{1}, {1}};
  EXPECT_THROW((void)evaluate(p, bad), Error);
}

TEST(Ism, InconsistentTable) {
  FiniteCategory c;
  c.add_object("x");
  const auto i = c.add_arrow("1", 0, 0);
  const auto f = c.add_arrow("f", 0, 0);
  c.set_identity(0, i);
  c.set_compose(i, i, i);
  c.set_compose(i, f, f);
  c.set_compose(f, i, i);  // violates the identity law
  c.set_compose(f, f, f);
  try {
    (void)ism_presentation(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidCategory);
  }
}
