#pragma once

#include <map>
#include <numeric>
#include <optional>

#include "ucstar/starpres/element.hpp"

namespace ucstar {

struct Relation {
  FreeStarElement lhs;
  FreeStarElement rhs;
  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Quiver, equations between parallel elements, and norm bounds ||g|| <= c.
struct Presentation {
  Quiver quiver;
  std::vector<Relation> relations;
  std::map<std::string, double> bounds;

  friend bool operator==(const Presentation&, const Presentation&) = default;

  void validate() const {
    quiver.validate();
    for (const auto& r : relations) {
      if (r.lhs.src() != r.rhs.src() || r.lhs.tgt() != r.rhs.tgt()) {
        throw Error(ErrorKind::NotParallel, "relation sides " + to_string(r.lhs) + " and " + to_string(r.rhs));
      }
      if (!quiver.has_object(r.lhs.src()) || !quiver.has_object(r.lhs.tgt())) {
        throw Error(ErrorKind::InvalidQuiver, "relation on an undeclared object");
      }
      for (const auto* side : {&r.lhs, &r.rhs})
        for (const auto& [w, c] : side->terms())
          for (const auto& l : w)
            if (!quiver.has_arrow(l.gen)) throw Error(ErrorKind::InvalidQuiver, "relation uses unknown " + l.gen);
    }
    for (const auto& [g, c] : bounds) {
      if (!quiver.has_arrow(g)) throw Error(ErrorKind::InvalidQuiver, "bound on unknown arrow " + g);
      if (!(c >= 0.0)) throw Error(ErrorKind::InvalidParams, "negative bound on " + g);
    }
  }
};

inline Presentation free_star_category(const Quiver& q) {
  q.validate();
  return Presentation{q, {}, {}};
}

/// c(e) = sum_i |z_i| prod (bounds of the letters of word i); identities count 1.
inline double norm_bound(const FreeStarElement& e, const std::map<std::string, double>& bounds) {
  double total = 0.0;
  for (const auto& [w, c] : e.terms()) {
    double p = std::abs(c);
    for (const auto& l : w) {
      auto it = bounds.find(l.gen);
      if (it == bounds.end()) throw Error(ErrorKind::UnboundedGenerator, "no bound for " + l.gen);
      p *= it->second;
    }
    total += p;
  }
  return total;
}

/// Presentation-level *-functor: objects to objects, generators to elements.
struct PresentationMorphism {
  std::map<std::string, std::string> object_map;
  std::map<std::string, FreeStarElement> arrow_map;

  friend bool operator==(const PresentationMorphism&, const PresentationMorphism&) = default;

  const std::string& object(const std::string& x) const {
    auto it = object_map.find(x);
    if (it == object_map.end()) throw Error(ErrorKind::InvalidFunctor, "object " + x + " not mapped");
    return it->second;
  }

  /// Substitutes images for generators, extended as a *-functor.
  FreeStarElement apply(const FreeStarElement& e) const {
    FreeStarElement out = FreeStarElement::zero(object(e.src()), object(e.tgt()));
    for (const auto& [w, c] : e.terms()) {
      FreeStarElement term = FreeStarElement::identity(object(e.src()));
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        auto img = arrow_map.find(it->gen);
        if (img == arrow_map.end()) throw Error(ErrorKind::InvalidFunctor, "generator " + it->gen + " not mapped");
        term = compose(it->adj ? img->second.adjoint() : img->second, term);
      }
      out = out + c * term;
    }
    return out;
  }
};

/// Checks that every generator and object is mapped compatibly with endpoints.
inline void check_morphism(const PresentationMorphism& f, const Presentation& src, const Presentation& tgt) {
  for (const auto& x : src.quiver.objects)
    if (!tgt.quiver.has_object(f.object(x))) throw Error(ErrorKind::InvalidFunctor, "object image outside target");
  for (const auto& a : src.quiver.arrows) {
    auto it = f.arrow_map.find(a.name);
    if (it == f.arrow_map.end()) throw Error(ErrorKind::InvalidFunctor, "generator " + a.name + " not mapped");
    if (it->second.src() != f.object(a.src) || it->second.tgt() != f.object(a.tgt)) {
      throw Error(ErrorKind::InvalidFunctor, "image of " + a.name + " has wrong endpoints");
    }
  }
}

enum class RenamePolicy { Reject, PrefixPart };

struct Coproduct {
  Presentation presentation;
  std::vector<PresentationMorphism> injections;
};

/// Disjoint union; cross-part homs are zero because no word crosses parts.
inline Coproduct coproduct(const std::vector<Presentation>& parts, RenamePolicy policy = RenamePolicy::Reject) {
  Coproduct out;
  Presentation& p = out.presentation;
  std::set<std::string> objects, arrows;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Presentation& part = parts[i];
    part.validate();
    const std::string prefix = policy == RenamePolicy::PrefixPart ? std::to_string(i) + "." : "";
    auto rename = [&](const std::string& s) { return prefix + s; };
    PresentationMorphism inj;
    for (const auto& x : part.quiver.objects) {
      if (!objects.insert(rename(x)).second) throw Error(ErrorKind::NameClash, "object " + rename(x));
      p.quiver.objects.push_back(rename(x));
      inj.object_map[x] = rename(x);
    }
    for (const auto& a : part.quiver.arrows) {
      if (!arrows.insert(rename(a.name)).second) throw Error(ErrorKind::NameClash, "arrow " + rename(a.name));
      p.quiver.arrows.push_back({rename(a.name), rename(a.src), rename(a.tgt)});
    }
    for (const auto& a : part.quiver.arrows)
      inj.arrow_map[a.name] = FreeStarElement::generator(p.quiver, rename(a.name));
    for (const auto& [g, c] : part.bounds) p.bounds[rename(g)] = c;
    for (const auto& r : part.relations) p.relations.push_back({inj.apply(r.lhs), inj.apply(r.rhs)});
    out.injections.push_back(std::move(inj));
  }
  return out;
}

struct Coequalizer {
  Presentation presentation;
  PresentationMorphism quotient;  // codomain -> coequalizer
};

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  // the smaller index (earlier declaration) stays the representative
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

inline std::optional<Letter> single_letter(const FreeStarElement& e) {
  if (e.terms().size() != 1) return std::nullopt;
  const auto& [w, c] = *e.terms().begin();
  if (w.size() != 1 || c != Complex(1.0)) return std::nullopt;
  return w.front();
}

}  // namespace detail

/// Coequalizer of F1, F2 : B -> C. Objects of C are identified along
/// F1(x) ~ F2(x); generators g, h are merged when F1(f) = g and F2(f) = h
/// (same adjoint marking); every other pair F1(f) ~ F2(f) becomes a relation.
inline Coequalizer coequalizer(const PresentationMorphism& f1, const PresentationMorphism& f2, const Presentation& b,
                               const Presentation& c) {
  for (const auto* f : {&f1, &f2}) {
    bool keys = f->object_map.size() == b.quiver.objects.size() && f->arrow_map.size() == b.quiver.arrows.size();
    for (const auto& x : b.quiver.objects) keys = keys && f->object_map.count(x);
    for (const auto& a : b.quiver.arrows) keys = keys && f->arrow_map.count(a.name);
    if (!keys) throw Error(ErrorKind::NotParallel, "morphism domain differs from the given source");
    try {
      check_morphism(*f, b, c);
    } catch (const Error& e) {
      throw Error(ErrorKind::NotParallel, e.what());
    }
  }
  b.validate();
  c.validate();
  const auto& objs = c.quiver.objects;
  const auto& arrs = c.quiver.arrows;
  auto obj_index = [&](const std::string& x) {
    for (std::size_t i = 0; i < objs.size(); ++i)
      if (objs[i] == x) return i;
    throw Error(ErrorKind::InvalidQuiver, "unknown object " + x);
  };
  auto arr_index = [&](const std::string& g) {
    for (std::size_t i = 0; i < arrs.size(); ++i)
      if (arrs[i].name == g) return i;
    throw Error(ErrorKind::InvalidQuiver, "unknown arrow " + g);
  };

  detail::UnionFind ouf(objs.size());
  for (const auto& x : b.quiver.objects) ouf.unite(obj_index(f1.object(x)), obj_index(f2.object(x)));

  detail::UnionFind auf(arrs.size());
  std::vector<std::size_t> pending;  // generators of B whose images become relations
  for (std::size_t k = 0; k < b.quiver.arrows.size(); ++k) {
    const auto& f = b.quiver.arrows[k];
    const auto l1 = detail::single_letter(f1.arrow_map.at(f.name));
    const auto l2 = detail::single_letter(f2.arrow_map.at(f.name));
    if (l1 && l2 && l1->adj == l2->adj) {
      auf.unite(arr_index(l1->gen), arr_index(l2->gen));
    } else {
      pending.push_back(k);
    }
  }

  Coequalizer out;
  Presentation& p = out.presentation;
  PresentationMorphism& q = out.quotient;
  for (std::size_t i = 0; i < objs.size(); ++i)
    if (ouf.find(i) == i) p.quiver.objects.push_back(objs[i]);
  for (std::size_t i = 0; i < objs.size(); ++i) q.object_map[objs[i]] = objs[ouf.find(i)];
  for (std::size_t i = 0; i < arrs.size(); ++i)
    if (auf.find(i) == i) {
      p.quiver.arrows.push_back({arrs[i].name, q.object(arrs[i].src), q.object(arrs[i].tgt)});
    }
  for (std::size_t i = 0; i < arrs.size(); ++i) {
    const std::size_t rep = auf.find(i);
    q.arrow_map[arrs[i].name] = FreeStarElement::generator(p.quiver, arrs[rep].name);
    auto it = c.bounds.find(arrs[i].name);
    if (it != c.bounds.end()) {
      auto [slot, fresh] = p.bounds.emplace(arrs[rep].name, it->second);
      if (!fresh) slot->second = std::min(slot->second, it->second);
    }
  }
  for (const auto& r : c.relations) p.relations.push_back({q.apply(r.lhs), q.apply(r.rhs)});
  for (std::size_t k : pending) {
    const auto& name = b.quiver.arrows[k].name;
    p.relations.push_back({q.apply(f1.arrow_map.at(name)), q.apply(f2.arrow_map.at(name))});
  }
  p.validate();
  return out;
}

}  // namespace ucstar
