#pragma once

#include <functional>
#include <optional>

#include "ucstar/gpd/finite_category.hpp"

namespace ucstar {

/// Isomorphism of finite categories by backtracking: objects first, pruned by
/// hom-set sizes, then arrows hom by hom, checked against the composition table.
inline std::optional<GroupoidFunctor> find_isomorphism(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.objects() != b.objects() || a.arrows() != b.arrows()) return std::nullopt;
  const std::size_t n = a.objects();
  std::vector<std::size_t> sa(n * n), sb(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      sa[x * n + y] = a.hom(x, y).size();
      sb[x * n + y] = b.hom(x, y).size();
    }
  constexpr std::size_t none = FiniteCategory::npos;
  GroupoidFunctor f{std::vector<std::size_t>(n, none), std::vector<std::size_t>(a.arrows(), none)};
  std::vector<bool> used_obj(n, false), used_arrow(b.arrows(), false);

  auto consistent = [&](std::size_t g) {
    const auto& ag = a.arrow(g);
    for (std::size_t h = 0; h < a.arrows(); ++h) {
      if (f.arrow_map[h] == none) continue;
      if (ag.tgt == a.arrow(h).src) {
        const std::size_t c = a.compose(h, g);
        if (f.arrow_map[c] != none && f.arrow_map[c] != b.compose(f.arrow_map[h], f.arrow_map[g])) return false;
      }
      if (a.arrow(h).tgt == ag.src) {
        const std::size_t c = a.compose(g, h);
        if (f.arrow_map[c] != none && f.arrow_map[c] != b.compose(f.arrow_map[g], f.arrow_map[h])) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> assign_arrow = [&](std::size_t g) -> bool {
    if (g == a.arrows()) return true;
    const auto& ag = a.arrow(g);
    for (std::size_t c : b.hom(f.object_map[ag.src], f.object_map[ag.tgt])) {
      if (used_arrow[c]) continue;
      const bool is_id = a.identity(ag.src) == g;
      if (is_id != (b.identity(f.object_map[ag.src]) == c)) continue;
      f.arrow_map[g] = c;
      used_arrow[c] = true;
      if (consistent(g) && assign_arrow(g + 1)) return true;
      used_arrow[c] = false;
      f.arrow_map[g] = none;
    }
    return false;
  };

  std::function<bool(std::size_t)> assign_object = [&](std::size_t x) -> bool {
    if (x == n) return assign_arrow(0);
    for (std::size_t y = 0; y < n; ++y) {
      if (used_obj[y]) continue;
      bool ok = true;
      for (std::size_t z = 0; z <= x && ok; ++z) {
        const std::size_t w = z == x ? y : f.object_map[z];
        ok = sa[x * n + z] == sb[y * n + w] && sa[z * n + x] == sb[w * n + y];
      }
      if (!ok) continue;
      f.object_map[x] = y;
      used_obj[y] = true;
      if (assign_object(x + 1)) return true;
      used_obj[y] = false;
      f.object_map[x] = none;
    }
    return false;
  };

  if (!assign_object(0)) return std::nullopt;
  validate_groupoid_functor(f, a, b);
  return f;
}

}  // namespace ucstar
