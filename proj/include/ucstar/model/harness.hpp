#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ucstar/model/factor.hpp"

namespace ucstar {

/// Object level of F [] F': the set pushout of ob(A x B') <- ob(A x A') ->
/// ob(B x A') and its map into ob(B x B').
struct PushoutProductVerdict {
  std::vector<std::string> classes;                      // one representative name per pushout element
  std::vector<std::pair<std::size_t, std::size_t>> map;  // class -> (b, b')
  bool injective = true;
  std::string witness;

  std::size_t pushout_size() const noexcept { return classes.size(); }
};

inline PushoutProductVerdict pushout_product_objects(const StarFunctor& f, const StarFunctor& g) {
  const MatCategory& a = *f.source();
  const MatCategory& b = *f.target();
  const MatCategory& a2 = *g.source();
  const MatCategory& b2 = *g.target();
  // elements (x, y') of A x B' first, then (y, x') of B x A'
  const std::size_t left = a.size() * b2.size();
  const std::size_t total = left + b.size() * a2.size();
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t x2 = 0; x2 < a2.size(); ++x2) {
      const std::size_t p = find(x * b2.size() + g.object(x2));
      const std::size_t q = find(left + f.object(x) * a2.size() + x2);
      if (p != q) parent[std::max(p, q)] = std::min(p, q);
    }
  auto name = [&](std::size_t i) {
    return i < left ? pair_object_name(a.name(i / b2.size()), b2.name(i % b2.size()))
                    : pair_object_name(b.name((i - left) / a2.size()), a2.name((i - left) % a2.size()));
  };
  auto image = [&](std::size_t i) -> std::pair<std::size_t, std::size_t> {
    if (i < left) return {f.object(i / b2.size()), i % b2.size()};
    return {(i - left) / a2.size(), g.object((i - left) % a2.size())};
  };
  PushoutProductVerdict v;
  for (std::size_t i = 0; i < total; ++i) {
    if (find(i) != i) continue;
    const auto im = image(i);
    for (std::size_t k = 0; k < v.map.size() && v.injective; ++k)
      if (v.map[k] == im) {
        v.injective = false;
        v.witness = v.classes[k] + " and " + name(i) + " both go to " + pair_object_name(b.name(im.first), b2.name(im.second));
      }
    v.classes.push_back(name(i));
    v.map.push_back(im);
  }
  return v;
}

/// Outcome of one axiom harness run.
struct HarnessReport {
  std::string kind;
  std::size_t instances = 0;
  std::size_t unknown = 0;  // instances where some verdict was NO_EVIDENCE
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Whenever two of F, G, GF are weak equivalences so is the third.
inline HarnessReport two_of_three(const std::vector<std::pair<StarFunctor, StarFunctor>>& pairs, std::uint64_t seed = 0,
                                  const Tolerance& tol = {}) {
  HarnessReport r{"two_of_three", 0, 0, {}};
  for (const auto& [f, g] : pairs) {
    const std::size_t i = r.instances++;
    const Verdict v[3] = {is_weak_equivalence(f, seed + 3 * i, tol).verdict,
                          is_weak_equivalence(g, seed + 3 * i + 1, tol).verdict,
                          is_weak_equivalence(compose(g, f), seed + 3 * i + 2, tol).verdict};
    int yes = 0, unsure = 0;
    for (auto x : v) {
      yes += x == Verdict::Yes;
      unsure += x == Verdict::NoEvidence;
    }
    // undecided only if reading some NO_EVIDENCE as YES could leave exactly two YES
    if (unsure > 0 && yes + unsure >= 2) ++r.unknown;
    if (yes == 2 && unsure == 0) {
      static const char* names[3] = {"F", "G", "GF"};
      for (int k = 0; k < 3; ++k)
        if (v[k] == Verdict::No) r.violations.push_back("pair " + std::to_string(i) + ": " + names[k] + " is not a weak equivalence");
    }
  }
  return r;
}

/// g : A' -> B' is a retract of f : A -> B:
///   A' -i-> A -r-> A',  B' -j-> B -s-> B',  r i = 1, s j = 1,
///   f i = j g, g r = s f.
struct RetractDiagram {
  StarFunctor f, g;
  StarFunctor i, r;
  StarFunctor j, s;
};

inline double retract_residual(const RetractDiagram& d) {
  double worst = 0.0;
  worst = std::max(worst, functor_residual(compose(d.r, d.i), StarFunctor::identity(d.g.source())));
  worst = std::max(worst, functor_residual(compose(d.s, d.j), StarFunctor::identity(d.g.target())));
  worst = std::max(worst, functor_residual(compose(d.f, d.i), compose(d.j, d.g)));
  worst = std::max(worst, functor_residual(compose(d.g, d.r), compose(d.s, d.f)));
  return worst;
}

inline HarnessReport retract(const std::vector<RetractDiagram>& diagrams, std::uint64_t seed = 0, const Tolerance& tol = {}) {
  HarnessReport r{"retract", 0, 0, {}};
  for (const auto& d : diagrams) {
    const std::size_t k = r.instances++;
    const double res = retract_residual(d);
    if (!(res <= certify_eps)) {
      r.violations.push_back("diagram " + std::to_string(k) + ": does not commute, residual " + std::to_string(res));
      continue;
    }
    const Verdict vf = is_weak_equivalence(d.f, seed + 2 * k, tol).verdict;
    if (vf != Verdict::Yes) {
      if (vf == Verdict::NoEvidence) ++r.unknown;
      continue;
    }
    const WeqResult vg = is_weak_equivalence(d.g, seed + 2 * k + 1, tol);
    if (vg.verdict == Verdict::NoEvidence) ++r.unknown;
    if (vg.verdict == Verdict::No) r.violations.push_back("diagram " + std::to_string(k) + ": retract fails, " + vg.witness);
  }
  return r;
}

/// Both factorizations compose back to F, with legs in the right classes.
inline HarnessReport factor_roundtrip(const std::vector<StarFunctor>& functors, std::uint64_t seed = 0,
                                      const Tolerance& tol = {}) {
  HarnessReport r{"factor_roundtrip", 0, 0, {}};
  for (const auto& f : functors) {
    const std::string tag = "functor " + std::to_string(r.instances++) + ": ";
    const Factorization p = factor_path(f, {}, tol);
    if (!(p.residual <= certify_eps)) r.violations.push_back(tag + "P.I differs from F");
    if (!is_cofibration(p.first)) r.violations.push_back(tag + "I not a cofibration");
    const Verdict vi = is_weak_equivalence(p.first, seed, tol).verdict;
    if (vi == Verdict::NoEvidence) ++r.unknown;
    if (vi == Verdict::No) r.violations.push_back(tag + "I not a weak equivalence");
    if (!validate_category(*p.midway, tol).ok()) r.violations.push_back(tag + "path snapshot invalid");
    const Factorization c = factor_cylinder(f);
    if (!(c.residual <= certify_eps)) r.violations.push_back(tag + "Q.J differs from F");
    if (!is_cofibration(c.first)) r.violations.push_back(tag + "J not a cofibration");
    if (!is_trivial_fibration(c.second, tol)) r.violations.push_back(tag + "Q not a trivial fibration");
    if (!validate_category(*c.midway, tol).ok()) r.violations.push_back(tag + "cylinder invalid");
  }
  return r;
}

/// Trivial fibration exactly when all three generating lifts exist.
inline HarnessReport rlp_equiv(const std::vector<StarFunctor>& functors, const Tolerance& tol = {}) {
  HarnessReport r{"rlp_equiv", 0, 0, {}};
  for (const auto& f : functors) {
    const std::size_t k = r.instances++;
    const bool lhs = is_trivial_fibration(f, tol);
    const bool rhs = rlp_generating(f, Generator::U, tol).holds && rlp_generating(f, Generator::V, tol).holds &&
                     rlp_generating(f, Generator::W, tol).holds;
    if (lhs != rhs)
      r.violations.push_back("functor " + std::to_string(k) + ": trivial fibration " + (lhs ? "true" : "false") +
                             ", generating lifts " + (rhs ? "true" : "false"));
  }
  return r;
}

}  // namespace ucstar
