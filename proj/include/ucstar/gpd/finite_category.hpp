#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ucstar/error.hpp"

namespace ucstar {

/// Fully enumerated small category with a composition table.
class FiniteCategory {
 public:
  struct Arrow {
    std::string name;
    std::size_t src = 0;
    std::size_t tgt = 0;
    friend bool operator==(const Arrow&, const Arrow&) = default;
  };

  FiniteCategory() = default;

  std::size_t add_object(const std::string& name) {
    if (object_index_.count(name)) throw Error(ErrorKind::NameClash, "object " + name);
    object_index_[name] = objects_.size();
    objects_.push_back(name);
    identity_.push_back(npos);
    return objects_.size() - 1;
  }

  std::size_t add_arrow(const std::string& name, std::size_t src, std::size_t tgt) {
    if (arrow_index_.count(name)) throw Error(ErrorKind::NameClash, "arrow " + name);
    if (src >= objects_.size() || tgt >= objects_.size()) throw Error(ErrorKind::InvalidCategory, "arrow endpoint");
    arrow_index_[name] = arrows_.size();
    arrows_.push_back({name, src, tgt});
    return arrows_.size() - 1;
  }

  void set_identity(std::size_t x, std::size_t arrow) { identity_.at(x) = arrow; }

  /// Records g after f.
  void set_compose(std::size_t g, std::size_t f, std::size_t h) { table_[{g, f}] = h; }

  std::size_t objects() const noexcept { return objects_.size(); }
  std::size_t arrows() const noexcept { return arrows_.size(); }
  const std::string& object_name(std::size_t x) const { return objects_.at(x); }
  const Arrow& arrow(std::size_t g) const { return arrows_.at(g); }
  const std::vector<Arrow>& arrow_list() const noexcept { return arrows_; }
  const std::vector<std::string>& object_names() const noexcept { return objects_; }
  std::size_t identity(std::size_t x) const { return identity_.at(x); }

  std::size_t object_index(const std::string& n) const {
    auto it = object_index_.find(n);
    if (it == object_index_.end()) throw Error(ErrorKind::InvalidCategory, "unknown object " + n);
    return it->second;
  }
  std::size_t arrow_index(const std::string& n) const {
    auto it = arrow_index_.find(n);
    if (it == arrow_index_.end()) throw Error(ErrorKind::InvalidCategory, "unknown arrow " + n);
    return it->second;
  }
  bool has_arrow(const std::string& n) const { return arrow_index_.count(n) > 0; }

  /// g after f; requires tgt(f) = src(g).
  std::size_t compose(std::size_t g, std::size_t f) const {
    if (arrows_.at(f).tgt != arrows_.at(g).src) {
      throw Error(ErrorKind::InvalidCategory, arrows_[g].name + " after " + arrows_[f].name + " not composable");
    }
    auto it = table_.find({g, f});
    const std::size_t h = it == table_.end() ? npos : it->second;
    if (h == npos) throw Error(ErrorKind::InvalidCategory, "missing composite " + arrows_[g].name + "." + arrows_[f].name);
    return h;
  }

  std::vector<std::size_t> hom(std::size_t x, std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < arrows_.size(); ++g)
      if (arrows_[g].src == x && arrows_[g].tgt == y) out.push_back(g);
    return out;
  }

  /// Exhaustive check of identities, endpoints of composites and associativity.
  void validate() const {
    const std::size_t n = arrows_.size();
    for (std::size_t x = 0; x < objects_.size(); ++x) {
      const std::size_t i = identity_[x];
      if (i == npos || i >= n || arrows_[i].src != x || arrows_[i].tgt != x) {
        throw Error(ErrorKind::InvalidCategory, "object " + objects_[x] + " lacks an identity");
      }
    }
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        if (arrows_[f].tgt != arrows_[g].src) continue;
        const std::size_t h = compose(g, f);
        if (arrows_[h].src != arrows_[f].src || arrows_[h].tgt != arrows_[g].tgt) {
          throw Error(ErrorKind::InvalidCategory, "composite " + arrows_[h].name + " has wrong endpoints");
        }
      }
    for (std::size_t f = 0; f < n; ++f) {
      if (compose(identity_[arrows_[f].tgt], f) != f || compose(f, identity_[arrows_[f].src]) != f) {
        throw Error(ErrorKind::InvalidCategory, "identity law fails at " + arrows_[f].name);
      }
    }
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        if (arrows_[f].tgt != arrows_[g].src) continue;
        const std::size_t gf = compose(g, f);
        for (std::size_t h = 0; h < n; ++h) {
          if (arrows_[g].tgt != arrows_[h].src) continue;
          if (compose(h, gf) != compose(compose(h, g), f)) {
            throw Error(ErrorKind::InvalidCategory, "associativity fails at " + arrows_[h].name + "," +
                                                        arrows_[g].name + "," + arrows_[f].name);
          }
        }
      }
  }

  /// Inverse of g, if any.
  std::optional<std::size_t> inverse(std::size_t g) const {
    const auto& a = arrows_.at(g);
    for (std::size_t h : hom(a.tgt, a.src))
      if (compose(h, g) == identity_[a.src] && compose(g, h) == identity_[a.tgt]) return h;
    return std::nullopt;
  }

  bool is_groupoid() const {
    for (std::size_t g = 0; g < arrows_.size(); ++g)
      if (!inverse(g)) return false;
    return true;
  }

  friend bool operator==(const FiniteCategory&, const FiniteCategory&) = default;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<std::size_t> identity_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table_;  // (g, f) -> g after f
  std::map<std::string, std::size_t> object_index_;
  std::map<std::string, std::size_t> arrow_index_;
};

/// A finite category in which every arrow is invertible.
using FiniteGroupoid = FiniteCategory;

inline void validate_groupoid(const FiniteGroupoid& g) {
  try {
    g.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidGroupoid, e.what());
  }
  for (std::size_t a = 0; a < g.arrows(); ++a)
    if (!g.inverse(a)) throw Error(ErrorKind::InvalidGroupoid, "arrow " + g.arrow(a).name + " has no inverse");
}

namespace groupoids {

inline FiniteGroupoid terminal() {
  FiniteGroupoid g;
  g.add_object("*");
  g.set_identity(0, g.add_arrow("1_*", 0, 0));
  g.set_compose(0, 0, 0);
  return g;
}

/// Objects 0 and 1 with a single isomorphism u : 0 -> 1.
inline FiniteGroupoid interval() {
  FiniteGroupoid g;
  g.add_object("0");
  g.add_object("1");
  const auto i0 = g.add_arrow("1_0", 0, 0);
  const auto i1 = g.add_arrow("1_1", 1, 1);
  const auto u = g.add_arrow("u", 0, 1);
  const auto v = g.add_arrow("u^-1", 1, 0);
  g.set_identity(0, i0);
  g.set_identity(1, i1);
  for (auto f : {i0, i1, u, v}) {
    const auto& a = g.arrow(f);
    g.set_compose(g.identity(a.tgt), f, f);
    g.set_compose(f, g.identity(a.src), f);
  }
  g.set_compose(v, u, i0);
  g.set_compose(u, v, i1);
  return g;
}

/// Connected groupoid on k objects with vertex group Z/n: arrows (i, j, m)
/// compose as (j, l, m') after (i, j, m) = (i, l, m + m').
inline FiniteGroupoid connected(std::size_t k, std::size_t n) {
  if (k == 0 || n == 0) throw Error(ErrorKind::InvalidParams, "connected groupoid needs k, n >= 1");
  FiniteGroupoid g;
  for (std::size_t i = 0; i < k; ++i) g.add_object(k == 1 ? "*" : std::to_string(i));
  auto id = [&](std::size_t i, std::size_t j, std::size_t m) { return (i * k + j) * n + m; };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        std::string name = k == 1 ? "g" + std::to_string(m)
                                  : "g" + std::to_string(m) + "_" + std::to_string(i) + std::to_string(j);
        g.add_arrow(name, i, j);
      }
  for (std::size_t i = 0; i < k; ++i) g.set_identity(i, id(i, i, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l)
        for (std::size_t m = 0; m < n; ++m)
          for (std::size_t m2 = 0; m2 < n; ++m2) g.set_compose(id(j, l, m2), id(i, j, m), id(i, l, (m + m2) % n));
  return g;
}

/// Cyclic group Z/n as a one-object groupoid; arrows g0 (identity), g1, ...
inline FiniteGroupoid cyclic(std::size_t n) { return connected(1, n); }

/// Discrete groupoid on the given objects.
inline FiniteGroupoid discrete(const std::vector<std::string>& objects) {
  FiniteGroupoid g;
  for (const auto& o : objects) {
    const auto x = g.add_object(o);
    const auto i = g.add_arrow("1_" + o, x, x);
    g.set_identity(x, i);
    g.set_compose(i, i, i);
  }
  return g;
}

inline FiniteGroupoid product(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid g;
  for (std::size_t x = 0; x < a.objects(); ++x)
    for (std::size_t y = 0; y < b.objects(); ++y) g.add_object("(" + a.object_name(x) + "," + b.object_name(y) + ")");
  const std::size_t nb = b.objects(), mb = b.arrows();
  for (std::size_t f = 0; f < a.arrows(); ++f)
    for (std::size_t h = 0; h < mb; ++h)
      g.add_arrow("(" + a.arrow(f).name + "," + b.arrow(h).name + ")", a.arrow(f).src * nb + b.arrow(h).src,
                  a.arrow(f).tgt * nb + b.arrow(h).tgt);
  for (std::size_t x = 0; x < a.objects(); ++x)
    for (std::size_t y = 0; y < nb; ++y) g.set_identity(x * nb + y, a.identity(x) * mb + b.identity(y));
  for (std::size_t f = 0; f < a.arrows(); ++f)
    for (std::size_t f2 = 0; f2 < a.arrows(); ++f2) {
      if (a.arrow(f).tgt != a.arrow(f2).src) continue;
      const std::size_t af = a.compose(f2, f);
      for (std::size_t h = 0; h < mb; ++h)
        for (std::size_t h2 = 0; h2 < mb; ++h2) {
          if (b.arrow(h).tgt != b.arrow(h2).src) continue;
          g.set_compose(f2 * mb + h2, f * mb + h, af * mb + b.compose(h2, h));
        }
    }
  return g;
}

/// The poset [n] = {0 < 1 < ... < n} as a category; arrows "i<=j".
inline FiniteCategory ordinal(std::size_t n) {
  FiniteCategory c;
  for (std::size_t i = 0; i <= n; ++i) c.add_object(std::to_string(i));
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> arr;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) arr[{i, j}] = c.add_arrow(std::to_string(i) + "<=" + std::to_string(j), i, j);
  for (std::size_t i = 0; i <= n; ++i) c.set_identity(i, arr[{i, i}]);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j)
      for (std::size_t k = j; k <= n; ++k) c.set_compose(arr[{j, k}], arr[{i, j}], arr[{i, k}]);
  return c;
}

}  // namespace groupoids

/// Functor between finite categories, by object and arrow indices.
struct GroupoidFunctor {
  std::vector<std::size_t> object_map;
  std::vector<std::size_t> arrow_map;
  friend bool operator==(const GroupoidFunctor&, const GroupoidFunctor&) = default;
};

inline void validate_groupoid_functor(const GroupoidFunctor& f, const FiniteCategory& a, const FiniteCategory& b) {
  if (f.object_map.size() != a.objects() || f.arrow_map.size() != a.arrows()) {
    throw Error(ErrorKind::InvalidFunctor, "functor table sizes");
  }
  for (std::size_t g = 0; g < a.arrows(); ++g) {
    const auto& img = b.arrow(f.arrow_map[g]);
    if (img.src != f.object_map[a.arrow(g).src] || img.tgt != f.object_map[a.arrow(g).tgt]) {
      throw Error(ErrorKind::InvalidFunctor, "arrow " + a.arrow(g).name + " endpoints not preserved");
    }
  }
  for (std::size_t x = 0; x < a.objects(); ++x)
    if (f.arrow_map[a.identity(x)] != b.identity(f.object_map[x])) {
      throw Error(ErrorKind::InvalidFunctor, "identity of " + a.object_name(x) + " not preserved");
    }
  for (std::size_t g = 0; g < a.arrows(); ++g)
    for (std::size_t h = 0; h < a.arrows(); ++h) {
      if (a.arrow(g).tgt != a.arrow(h).src) continue;
      if (f.arrow_map[a.compose(h, g)] != b.compose(f.arrow_map[h], f.arrow_map[g])) {
        throw Error(ErrorKind::InvalidFunctor, "composition not preserved");
      }
    }
}

}  // namespace ucstar
