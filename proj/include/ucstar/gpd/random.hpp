#pragma once

#include <map>
#include <tuple>

#include "ucstar/gpd/cstar.hpp"
#include "ucstar/matcat/random.hpp"

namespace ucstar {

/// One of a fixed menu of small groupoids.
inline FiniteGroupoid random_groupoid(Rng& rng) {
  switch (rng.index(0, 7)) {
    case 0: return groupoids::terminal();
    case 1: return groupoids::interval();
    case 2: return groupoids::cyclic(rng.index(2, 4));
    case 3: return groupoids::connected(2, 2);
    case 4: return groupoids::product(groupoids::interval(), groupoids::cyclic(2));
    case 5: return groupoids::connected(3, 1);
    case 6: return groupoids::discrete({"p", "q"});
    default: return groupoids::product(groupoids::cyclic(2), groupoids::cyclic(3));
  }
}

/// Disjoint union of connected groupoids on `objects` objects x0, x1, ...,
/// each with a cyclic vertex group of order at most `max_order`. Arrow
/// "g{m}_{i}_{j}" goes from xi to xj with group label m.
inline FiniteGroupoid random_groupoid(Rng& rng, std::size_t objects, std::size_t max_order) {
  if (objects == 0 || objects > 5 || max_order == 0 || max_order > 8) {
    throw Error(ErrorKind::InvalidParams, "random groupoid needs 1..5 objects and order 1..8");
  }
  FiniteGroupoid g;
  for (std::size_t i = 0; i < objects; ++i) g.add_object("x" + std::to_string(i));
  std::size_t start = 0;
  while (start < objects) {
    const std::size_t k = rng.index(1, objects - start);
    const std::size_t n = rng.index(1, max_order);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> id;
    for (std::size_t i = start; i < start + k; ++i)
      for (std::size_t j = start; j < start + k; ++j)
        for (std::size_t m = 0; m < n; ++m)
          id[{i, j, m}] = g.add_arrow("g" + std::to_string(m) + "_" + std::to_string(i) + "_" + std::to_string(j), i, j);
    for (std::size_t i = start; i < start + k; ++i) {
      g.set_identity(i, id[{i, i, 0}]);
      for (std::size_t j = start; j < start + k; ++j)
        for (std::size_t l = start; l < start + k; ++l)
          for (std::size_t m = 0; m < n; ++m)
            for (std::size_t m2 = 0; m2 < n; ++m2) g.set_compose(id[{j, l, m2}], id[{i, j, m}], id[{i, l, (m + m2) % n}]);
    }
    start += k;
  }
  validate_groupoid(g);
  return g;
}

struct RandomAssignment {
  CategoryPtr target;
  UnitaryAssignment phi;
};

/// Random unitary functor G -> uni A into a full matrix category. Each
/// component gets a vertex-group representation made of trivial and regular
/// summands, conjugated by random unitaries along chosen arrows from a root.
inline RandomAssignment random_unitary_assignment(Rng& rng, const FiniteGroupoid& g, std::size_t max_copies = 2) {
  validate_groupoid(g);
  const std::size_t n = g.objects();
  constexpr std::size_t none = FiniteGroupoid::npos;
  std::vector<std::size_t> root(n, none), path(n, none);
  std::vector<MatObject> objects;
  std::vector<std::vector<std::size_t>> slots(n);  // target objects available to each root
  std::vector<std::size_t> dim(n);
  std::map<std::size_t, std::vector<Matrix>> rep;  // root -> images of G(r, r), in hom order
  for (std::size_t r = 0; r < n; ++r) {
    if (root[r] != none) continue;
    for (std::size_t x = 0; x < n; ++x) {
      const auto h = g.hom(r, x);
      if (!h.empty() && root[x] == none) {
        root[x] = r;
        path[x] = h.front();
      }
    }
    const auto group = g.hom(r, r);
    const std::size_t trivial = rng.index(0, max_copies), regular = rng.index(trivial == 0 ? 1 : 0, max_copies);
    const std::size_t d = trivial + regular * group.size();
    dim[r] = d;
    std::vector<Matrix> images;
    const Matrix w = random_unitary(rng, d);
    for (std::size_t h : group) {
      Matrix m(d, d);
      for (std::size_t i = 0; i < trivial; ++i) m(i, i) = 1.0;
      for (std::size_t c = 0; c < regular; ++c)
        for (std::size_t k = 0; k < group.size(); ++k) {
          const std::size_t target = std::find(group.begin(), group.end(), g.compose(h, group[k])) - group.begin();
          m(trivial + c * group.size() + target, trivial + c * group.size() + k) = 1.0;
        }
      images.push_back(w * m * w.adjoint());
    }
    rep[r] = std::move(images);
    const std::size_t count = rng.index(1, 2);
    for (std::size_t i = 0; i < count; ++i) {
      slots[r].push_back(objects.size());
      objects.push_back({"a" + std::to_string(objects.size()), d});
    }
  }
  if (rng.coin()) objects.push_back({"a" + std::to_string(objects.size()), rng.index(1, 3)});

  RandomAssignment out;
  out.target = share(MatCategory::full(objects));
  std::vector<Matrix> frame(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& s = slots[root[x]];
    out.phi.object_map.push_back(s[rng.index(0, s.size() - 1)]);
    frame[x] = random_unitary(rng, dim[root[x]]);
  }
  for (std::size_t k = 0; k < g.arrows(); ++k) {
    const auto& a = g.arrow(k);
    const std::size_t r = root[a.src];
    // loop at the root: path[tgt]^-1 . a . path[src]
    const std::size_t loop = g.compose(*g.inverse(path[a.tgt]), g.compose(k, path[a.src]));
    const auto group = g.hom(r, r);
    const std::size_t idx = std::find(group.begin(), group.end(), loop) - group.begin();
    out.phi.arrow_images.push_back(frame[a.tgt] * rep[r][idx] * frame[a.src].adjoint());
  }
  return out;
}

}  // namespace ucstar
