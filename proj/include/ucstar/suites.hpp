#pragma once

#include <string>
#include <vector>

#include "ucstar/gpd.hpp"
#include "ucstar/gpd/random.hpp"
#include "ucstar/model.hpp"
#include "ucstar/report.hpp"
#include "ucstar/sset.hpp"
#include "ucstar/starpres.hpp"
#include "ucstar/starpres/random.hpp"

namespace ucstar::suites {

/// Accumulates per-instance outcomes into one Check.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  /// Records `r` against `bound`; the first excess becomes the witness.
  bool residual(double r, double bound, const std::string& where) {
    if (r > worst_ || r != r) worst_ = r;
    if (r <= bound) return true;
    fail(where + ": residual " + std::to_string(r));
    return false;
  }
  void fail(const std::string& what) {
    if (failures_++ == 0) first_ = what;
  }
  void unknown(const std::string& what) {
    if (unknown_++ == 0) first_unknown_ = what;
  }
  void instance() { ++instances_; }

  Check done(const std::string& summary = {}) const {
    Check c{name_, CheckStatus::Pass, worst_, {}};
    std::string base = std::to_string(instances_) + " instances";
    if (!summary.empty()) base += ", " + summary;
    if (failures_ > 0) {
      c.status = CheckStatus::Fail;
      c.witness = std::to_string(failures_) + " failed of " + base + "; first: " + first_;
    } else if (unknown_ > 0) {
      c.status = CheckStatus::Unknown;
      c.witness = std::to_string(unknown_) + " inconclusive of " + base + "; first: " + first_unknown_;
    } else {
      c.witness = base;
    }
    return c;
  }

 private:
  std::string name_;
  double worst_ = 0.0;
  std::size_t instances_ = 0, failures_ = 0, unknown_ = 0;
  std::string first_, first_unknown_;
};

/// Runs `body`, turning a thrown Error into a failure of the instance.
template <class F>
void guarded(Tally& t, const std::string& where, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    t.fail(where + ": " + e.what());
  }
}

inline std::string at(std::size_t k) { return "instance " + std::to_string(k); }

/// Polar parts of random invertible arrows in validated hom spaces.
inline Check unitarization(std::uint64_t seed, std::size_t instances = 500) {
  Tally t("unitarization");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const BlockModel m = random_block_model(rng, 3, 6);
      const MatCategory& c = *m.category;
      if (!validate_category(c).ok()) return t.fail(at(k) + ": generated category invalid");
      const std::size_t x = rng.index(0, m.objects() - 1);
      std::vector<std::size_t> ys;
      for (std::size_t y = 0; y < m.objects(); ++y)
        if (m.mult[y] == m.mult[x]) ys.push_back(y);
      const std::size_t y = ys[rng.index(0, ys.size() - 1)];
      Matrix a = m.random_arrow(rng, x, y);
      while (smallest_singular_value(a) < 1e-6) a = m.random_arrow(rng, x, y);
      const Matrix u = unitarize(c, x, y, a);
      const double r = std::max({op_norm(u.adjoint() * u - Matrix::identity(u.cols())),
                                 op_norm(u * u.adjoint() - Matrix::identity(u.rows())), c.hom(x, y).residual(u)});
      t.residual(r, 1e-8, at(k));
    });
  }
  return t.done();
}

inline std::vector<std::pair<std::string, FiniteGroupoid>> comparison_menu() {
  return {{"terminal", groupoids::terminal()},
          {"interval", groupoids::interval()},
          {"Z2", groupoids::cyclic(2)},
          {"Z3", groupoids::cyclic(3)},
          {"connected(2,Z2)", groupoids::connected(2, 2)}};
}

/// C*_max(G1 x G2) -> C*_max G1 (x) C*_max G2 is an isomorphism.
inline Check monoidality() {
  Tally t("monoidality");
  const auto menu = comparison_menu();
  for (const auto& [n1, g1] : menu)
    for (const auto& [n2, g2] : menu) {
      t.instance();
      const std::string where = n1 + " x " + n2;
      guarded(t, where, [&] {
        const Comparison c = comparison_functor(g1, g2);
        const std::size_t m = g2.objects();
        bool dims = c.tensor->size() == g1.objects() * m;
        for (std::size_t x = 0; x < g1.objects() && dims; ++x)
          for (std::size_t y = 0; y < g1.objects(); ++y)
            for (std::size_t u = 0; u < m; ++u)
              for (std::size_t v = 0; v < m; ++v)
                dims = dims && c.tensor->hom(x * m + u, y * m + v).dimension() == g1.hom(x, y).size() * g2.hom(u, v).size();
        if (!dims) t.fail(where + ": hom dimensions do not multiply");
        if (!c.verdict.objects_bijective) t.fail(where + ": objects not bijective");
        if (!c.verdict.isomorphism()) t.fail(where + ": comparison is not an isomorphism");
        t.residual(c.verdict.max_residual, 1e-8, where);
      });
    }
  return t.done();
}

/// restrict . extend = id and extend . restrict = id.
inline Check adjunction(std::uint64_t seed, std::size_t instances = 200) {
  Tally t("adjunction_round_trip");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const FiniteGroupoid g = random_groupoid(rng);
      const CStarMax c = cstar_max(g);
      const RandomAssignment inst = random_unitary_assignment(rng, g);
      const StarFunctor f = adjunction_extend(c, inst.target, inst.phi);
      t.residual(assignment_residual(adjunction_restrict(c, f), inst.phi), 1e-9, at(k) + " restrict.extend");
      t.residual(functor_residual(adjunction_extend(c, inst.target, adjunction_restrict(c, f)), f), 1e-9,
                 at(k) + " extend.restrict");
    });
  }
  return t.done();
}

/// Horns and simplices have isomorphic fundamental groupoids; the edge gives
/// the interval; the circle is not finite within the budget.
inline Check fundamental_groupoids(std::size_t budget = default_coset_budget) {
  Tally t("fundamental_groupoid");
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto nd = normalize_fp(fundamental_groupoid(standard(StandardKind::Delta, n, 2)), budget);
    for (std::size_t k = 0; k <= n; ++k) {
      t.instance();
      const std::string where = "horn(" + std::to_string(n) + "," + std::to_string(k) + ")";
      guarded(t, where, [&] {
        const auto nh = normalize_fp(fundamental_groupoid(standard(StandardKind::Horn, n, 2, k)), budget);
        if (!nd.finite() || !nh.finite()) return t.fail(where + ": not finite");
        if (!find_isomorphism(*nh.groupoid, *nd.groupoid)) t.fail(where + ": not isomorphic to the simplex");
      });
    }
  }
  t.instance();
  guarded(t, "edge", [&] {
    const auto e = normalize_fp(fundamental_groupoid(standard(StandardKind::Delta, 1, 2)), budget);
    if (!e.finite() || !find_isomorphism(*e.groupoid, groupoids::interval())) t.fail("edge: not the interval");
  });
  t.instance();
  try {
    (void)pi(standard(StandardKind::Boundary, 2, 2), budget);
    t.fail("boundary: finite within budget");
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFiniteWithinBound) t.fail(std::string("boundary: ") + e.what());
  }
  return t.done("boundary NotFiniteWithinBound at budget " + std::to_string(budget));
}

/// The fundamental groupoid of the nerve recovers the groupoid.
inline Check nerve_pi(std::size_t budget = default_coset_budget) {
  Tally t("nerve_pi");
  const std::vector<std::pair<std::string, FiniteGroupoid>> menu{
      {"terminal", groupoids::terminal()},       {"interval", groupoids::interval()},
      {"Z2", groupoids::cyclic(2)},              {"Z3", groupoids::cyclic(3)},
      {"connected(2,Z2)", groupoids::connected(2, 2)}, {"interval x Z2", groupoids::product(groupoids::interval(), groupoids::cyclic(2))}};
  for (const auto& [name, g] : menu) {
    t.instance();
    guarded(t, name, [&] {
      const auto n = normalize_fp(fundamental_groupoid(nerve(g, 2)), budget);
      if (!n.finite() || !find_isomorphism(*n.groupoid, g)) t.fail(name + ": not recovered");
    });
  }
  return t.done();
}

/// Horn inclusions induce weak equivalences of groupoid C*-categories, and
/// isomorphisms once the horn contains every vertex (n >= 2).
inline Check horn_inclusions(std::uint64_t seed, std::size_t budget = default_coset_budget) {
  Tally t("horn_inclusions");
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      t.instance();
      const std::string where = "horn(" + std::to_string(n) + "," + std::to_string(k) + ")";
      guarded(t, where, [&] {
        const auto h = standard(StandardKind::Horn, n, 2, k);
        const auto d = standard(StandardKind::Delta, n, 2);
        const StarFunctor f = pi_map(inclusion_by_name(h, d), h, d, budget);
        const WeqResult w = is_weak_equivalence(f, seed + 7 * n + k);
        if (w.verdict == Verdict::No) t.fail(where + ": " + w.witness);
        if (w.verdict == Verdict::NoEvidence) t.unknown(where + ": " + w.witness);
        if (n < 2) return;
        const FunctorIsoVerdict v = isomorphism_verdict(f);
        if (!v.isomorphism()) t.fail(where + ": induced functor is not an isomorphism");
        t.residual(v.max_residual, 1e-8, where);
      });
    }
  return t.done();
}

inline StarFunctor random_functor(Rng& rng, std::size_t max_objects = 4, std::size_t max_dim = 4) {
  const BlockModel a = random_block_model(rng, max_objects, max_dim);
  RandomFunctorOptions opt;
  opt.max_dim = max_dim;
  opt.max_objects = max_objects;
  opt.max_extra_objects = rng.index(0, 1);
  return random_block_functor(rng, a, opt).functor;
}

/// Path and cylinder factorizations with legs in the right classes.
inline Check factorizations(std::uint64_t seed, std::size_t instances = 100) {
  Tally t("factorizations");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const StarFunctor f = random_functor(rng);
      const Factorization p = factor_path(f);
      t.residual(p.residual, 1e-8, at(k) + " P.I");
      if (!is_cofibration(p.first)) t.fail(at(k) + ": I not a cofibration");
      const WeqResult w = is_weak_equivalence(p.first, rng.next());
      if (w.verdict == Verdict::No) t.fail(at(k) + ": I not a weak equivalence, " + w.witness);
      if (w.verdict == Verdict::NoEvidence) t.unknown(at(k) + ": I " + w.witness);
      if (!validate_category(*p.midway).ok()) t.fail(at(k) + ": path snapshot invalid");
      const Factorization c = factor_cylinder(f);
      t.residual(c.residual, 1e-8, at(k) + " Q.J");
      if (!is_cofibration(c.first)) t.fail(at(k) + ": J not a cofibration");
      if (!is_trivial_fibration(c.second)) t.fail(at(k) + ": Q not a trivial fibration");
      if (!validate_category(*c.midway).ok()) t.fail(at(k) + ": cylinder invalid");
    });
  }
  return t.done();
}

/// Object-level commutation of both triangles.
inline bool objects_commute(const LiftingSquare& s, const LiftResult& r) {
  for (std::size_t z = 0; z < s.left.source()->size(); ++z)
    if (r.lift.object(s.left.object(z)) != r.top.object(z)) return false;
  for (std::size_t x = 0; x < s.left.target()->size(); ++x)
    if (r.right.object(r.lift.object(x)) != s.bottom.object(x)) return false;
  return true;
}

/// Diagonal fillers for squares built from factorizations, alternating the
/// two lifting problems.
inline Check lifts(std::uint64_t seed, std::size_t instances = 100) {
  Tally t("lifts");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const bool tcof = k % 2 == 0;
      const SquareInstance s = tcof ? random_tcof_fib_square(rng) : random_cof_tfib_square(rng);
      const std::string where = at(k) + (tcof ? " tcof-fib " : " cof-tfib ") + s.shape;
      const LiftResult r = tcof ? lift_tcof_fib(s.square, s.oracle, rng.next()) : lift_cof_tfib(s.square);
      t.residual(std::max(r.upper_residual, r.lower_residual), 1e-8, where);
      if (!objects_commute(s.square, r)) t.fail(where + ": objects do not commute");
    });
  }
  return t.done();
}

/// Is every hom map surjective (full) or injective (faithful)?
inline std::pair<bool, bool> full_faithful(const StarFunctor& f) {
  bool full = true, faithful = true;
  const MatCategory& a = *f.source();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      const std::size_t r = hom_rank(f, x, y);
      full = full && r == f.target()->hom(f.object(x), f.object(y)).dimension();
      faithful = faithful && r == a.hom(x, y).dimension();
    }
  return {full, faithful};
}

/// Trivial fibrations are exactly the maps with the generating lifts; the
/// sample must contain every kind of functor.
inline Check rlp_coherence(std::uint64_t seed, std::size_t instances = 200) {
  Tally t("rlp_coherence");
  Rng rng(seed);
  std::vector<StarFunctor> zoo;
  std::size_t seen[6] = {0, 0, 0, 0, 0, 0};  // full, non-full, faithful, non-faithful, surjective, non-surjective
  for (std::size_t k = 0; k < instances; ++k) {
    zoo.push_back(random_zoo_functor(rng));
    const auto [full, faithful] = full_faithful(zoo.back());
    ++seen[full ? 0 : 1];
    ++seen[faithful ? 2 : 3];
    ++seen[objects_surjective(zoo.back()) ? 4 : 5];
  }
  const HarnessReport r = rlp_equiv(zoo);
  for (std::size_t k = 0; k < r.instances; ++k) t.instance();
  for (const auto& v : r.violations) t.fail(v);
  static const char* kinds[6] = {"full", "non-full", "faithful", "non-faithful", "surjective", "non-surjective"};
  std::string mix;
  for (int i = 0; i < 6; ++i) {
    if (seen[i] == 0) t.fail(std::string("no ") + kinds[i] + " functor in the sample");
    mix += (i ? " " : "") + std::string(kinds[i]) + "=" + std::to_string(seen[i]);
  }
  return t.done(mix);
}

inline Check two_out_of_three(std::uint64_t seed, std::size_t instances = 100) {
  Tally t("two_of_three");
  Rng rng(seed);
  std::vector<std::pair<StarFunctor, StarFunctor>> pairs;
  for (std::size_t k = 0; k < instances; ++k) pairs.push_back(random_composable_pair(rng));
  const HarnessReport r = two_of_three(pairs, rng.next());
  for (std::size_t k = 0; k < r.instances; ++k) t.instance();
  for (const auto& v : r.violations) t.fail(v);
  if (r.unknown > 0) t.unknown(std::to_string(r.unknown) + " pairs with NO_EVIDENCE verdicts");
  return t.done();
}

/// Retracts of weak equivalences: the diagrams commute and both maps test YES.
inline Check retracts(std::uint64_t seed, std::size_t instances = 50) {
  Tally t("retracts");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const RetractDiagram d = random_retract(rng);
      t.residual(retract_residual(d), 1e-8, at(k) + " diagram");
      for (const auto* f : {&d.f, &d.g}) {
        const WeqResult w = is_weak_equivalence(*f, rng.next());
        const std::string which = f == &d.f ? " f: " : " g: ";
        if (w.verdict == Verdict::No) t.fail(at(k) + which + w.witness);
        if (w.verdict == Verdict::NoEvidence) t.unknown(at(k) + which + w.witness);
      }
    });
  }
  return t.done();
}

/// *-functors are norm-decreasing, and isometric on injective hom maps.
inline Check norm_decreasing(std::uint64_t seed, std::size_t pairs = 1000) {
  Tally t("norm_decreasing");
  Rng rng(seed);
  std::size_t isometric = 0;
  while (pairs > 0) {
    const BlockModel m = random_block_model(rng, 3, 4);
    RandomFunctorOptions opt;
    opt.max_dim = 4;
    const StarFunctor f = random_block_functor(rng, m, opt).functor;
    for (std::size_t x = 0; x < m.objects() && pairs > 0; ++x)
      for (std::size_t y = 0; y < m.objects() && pairs > 0; ++y) {
        if (m.category->hom(x, y).dimension() == 0) continue;
        --pairs;
        t.instance();
        const Matrix a = m.random_arrow(rng, x, y);
        const double na = op_norm(a), nfa = op_norm(f.apply(x, y, a));
        const std::string where = "arrow " + m.category->pair_name(x, y);
        t.residual(std::max(0.0, nfa - na), 1e-9, where + " norm increase");
        if (hom_rank(f, x, y) == m.category->hom(x, y).dimension()) {
          ++isometric;
          t.residual(std::abs(nfa - na), 1e-8, where + " isometry");
        }
      }
  }
  return t.done(std::to_string(isometric) + " on injective hom maps");
}

/// The norm of a represented element never exceeds its presentation bound.
inline Check norm_bounds(std::uint64_t seed, std::size_t instances = 500) {
  Tally t("norm_bounds");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const BoundedInstance inst = random_bounded_instance(rng);
      const Evaluation ev = evaluate(inst.presentation, inst.representation);
      const double excess = op_norm(ev(inst.element)) - norm_bound(inst.element, inst.presentation.bounds);
      t.residual(std::max(0.0, excess), 1e-9, at(k));
    });
  }
  return t.done();
}

/// Curry/uncurry round trips for functors out of A (x)max B, with the
/// sup-norm bound on curried arrows.
inline Check exponential_law(std::uint64_t seed, std::size_t instances = 100) {
  Tally t("exponential_law");
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    t.instance();
    guarded(t, at(k), [&] {
      const BlockModel a = random_block_model(rng, 2, 2);
      const BlockModel b = random_block_model(rng, 2, 2);
      const BlockModel tb = tensor_block_model(a, b);
      RandomFunctorOptions opt;
      opt.max_dim = 6;
      const StarFunctor bf = random_block_functor(rng, tb, opt).functor;
      const CategoryPtr tensor = share(tensor_max(*a.category, *b.category));
      const StarFunctor f = StarFunctor::from_action(tensor, bf.target(), bf.object_map(),
                                                     [&](std::size_t x, std::size_t y, const Matrix& m) { return bf.apply(x, y, m); });
      const CurriedFunctor g = curry(f, a.category, b.category);
      t.residual(functor_residual(uncurry(g, tensor), f), 1e-9, at(k) + " uncurry.curry");
      t.residual(curried_residual(curry(uncurry(g, tensor), a.category, b.category), g), 1e-9, at(k) + " curry.uncurry");
      for (std::size_t x = 0; x < a.objects(); ++x)
        for (std::size_t x2 = 0; x2 < a.objects(); ++x2) {
          if (a.category->hom(x, x2).dimension() == 0) continue;
          const Matrix m = a.random_arrow(rng, x, x2);
          t.residual(std::max(0.0, sup_norm(g.apply(x, x2, m)) - op_norm(m)), 1e-9, at(k) + " sup-norm bound");
        }
    });
  }
  return t.done();
}

/// Instance counts scale with `scale` (1 = the full sizes).
struct SuiteOptions {
  std::uint64_t seed = 1;
  double scale = 1.0;
  std::size_t coset_budget = default_coset_budget;
};

inline std::size_t scaled(std::size_t n, double scale) {
  const auto m = static_cast<std::size_t>(static_cast<double>(n) * scale);
  return m == 0 ? 1 : m;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mc", "monoidal", "simplicial", "adjunctions"};
  return names;
}

/// Each check draws from its own stream derived from the suite seed.
inline RunReport run_suite(const std::string& suite, const SuiteOptions& o) {
  RunReport r{"verify-axioms --suite " + suite, {}, std::nullopt};
  auto s = [&](std::uint64_t k) { return o.seed * 1000003ULL + k; };
  if (suite == "mc") {
    r.add(unitarization(s(1), scaled(500, o.scale)));
    r.add(factorizations(s(2), scaled(100, o.scale)));
    r.add(lifts(s(3), scaled(100, o.scale)));
    r.add(rlp_coherence(s(4), scaled(200, o.scale)));
    r.add(two_out_of_three(s(5), scaled(100, o.scale)));
    r.add(retracts(s(6), scaled(50, o.scale)));
    r.add(norm_decreasing(s(7), scaled(1000, o.scale)));
  } else if (suite == "monoidal") {
    r.add(monoidality());
    r.add(exponential_law(s(11), scaled(100, o.scale)));
  } else if (suite == "simplicial") {
    r.add(fundamental_groupoids(o.coset_budget));
    r.add(nerve_pi(o.coset_budget));
    r.add(horn_inclusions(s(31), o.coset_budget));
  } else if (suite == "adjunctions") {
    r.add(adjunction(s(21), scaled(200, o.scale)));
    r.add(norm_bounds(s(22), scaled(500, o.scale)));
  } else {
    throw Error(ErrorKind::InvalidParams, "unknown suite " + suite);
  }
  r.sort();
  return r;
}

}  // namespace ucstar::suites
