#pragma once

#include <map>

#include "ucstar/gpd/finite_category.hpp"
#include "ucstar/sset/simplicial.hpp"

namespace ucstar {

/// Composable strings (f1, ..., fn), f1 applied first; d0 drops f1, dn drops
/// fn and the inner faces compose neighbours. A string is degenerate when it
/// contains an identity. Names join arrow names with '|'.
inline FiniteSimplicialSet nerve(const FiniteCategory& c, std::size_t dim_cap) {
  c.validate();
  FiniteSimplicialSet out(dim_cap);
  for (std::size_t x = 0; x < c.objects(); ++x) out.add(0, c.object_name(x), {});
  if (dim_cap == 0) return out;

  auto is_identity = [&](std::size_t f) { return c.identity(c.arrow(f).src) == f; };
  std::map<std::vector<std::size_t>, std::size_t> prev;
  std::vector<std::vector<std::size_t>> strings;
  for (std::size_t f = 0; f < c.arrows(); ++f) {
    out.add(1, c.arrow(f).name, {c.arrow(f).tgt, c.arrow(f).src}, is_identity(f));
    prev[{f}] = f;
    strings.push_back({f});
  }
  for (std::size_t n = 2; n <= dim_cap; ++n) {
    std::map<std::vector<std::size_t>, std::size_t> cur;
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : strings)
      for (std::size_t f = 0; f < c.arrows(); ++f) {
        if (c.arrow(f).src != c.arrow(s.back()).tgt) continue;
        auto t = s;
        t.push_back(f);
        std::vector<std::size_t> faces;
        for (std::size_t i = 0; i <= n; ++i) {
          std::vector<std::size_t> d;
          if (i == 0) {
            d.assign(t.begin() + 1, t.end());
          } else if (i == n) {
            d.assign(t.begin(), t.end() - 1);
          } else {
            d.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i - 1));
            d.push_back(c.compose(t[i], t[i - 1]));
            d.insert(d.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 1), t.end());
          }
          faces.push_back(prev.at(d));
        }
        std::string name;
        bool degenerate = false;
        for (std::size_t k = 0; k < t.size(); ++k) {
          name += (k ? "|" : "") + c.arrow(t[k]).name;
          degenerate = degenerate || is_identity(t[k]);
        }
        cur[t] = out.add(n, name, faces, degenerate);
        next.push_back(std::move(t));
      }
    prev = std::move(cur);
    strings = std::move(next);
  }
  out.validate();
  return out;
}

}  // namespace ucstar
