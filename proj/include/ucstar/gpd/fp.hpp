#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ucstar/gpd/finite_category.hpp"
#include "ucstar/sset/simplicial.hpp"

namespace ucstar {

/// A generator or its inverse, listed in the order the path is traversed.
struct PathLetter {
  std::size_t gen = 0;
  bool inv = false;
  friend bool operator==(const PathLetter&, const PathLetter&) = default;
};
using Path = std::vector<PathLetter>;

struct FPGenerator {
  std::string name;
  std::size_t src = 0;
  std::size_t tgt = 0;
  friend bool operator==(const FPGenerator&, const FPGenerator&) = default;
};

/// Two parallel paths from src to tgt; an empty path is the identity.
struct FPRelation {
  std::size_t src = 0;
  std::size_t tgt = 0;
  Path lhs;
  Path rhs;
  friend bool operator==(const FPRelation&, const FPRelation&) = default;
};

/// Groupoid presented by generator isomorphisms and path relations.
struct FPGroupoid {
  std::vector<std::string> objects;
  std::vector<FPGenerator> generators;
  std::vector<FPRelation> relations;

  friend bool operator==(const FPGroupoid&, const FPGroupoid&) = default;

  /// Endpoint of `p` started at x; throws when a letter does not start where the path is.
  std::size_t walk(std::size_t x, const Path& p) const {
    for (const auto& l : p) {
      const auto& g = generators.at(l.gen);
      const std::size_t from = l.inv ? g.tgt : g.src;
      if (from != x) throw Error(ErrorKind::InvalidGroupoid, "path is not composable at " + g.name);
      x = l.inv ? g.src : g.tgt;
    }
    return x;
  }

  void validate() const {
    for (const auto& g : generators)
      if (g.src >= objects.size() || g.tgt >= objects.size()) {
        throw Error(ErrorKind::InvalidGroupoid, "generator " + g.name + " endpoint");
      }
    for (const auto& r : relations) {
      if (r.src >= objects.size() || r.tgt >= objects.size()) throw Error(ErrorKind::InvalidGroupoid, "relation endpoint");
      if (walk(r.src, r.lhs) != r.tgt || walk(r.src, r.rhs) != r.tgt) {
        throw Error(ErrorKind::InvalidGroupoid, "relation sides are not parallel");
      }
    }
  }
};

/// Vertices as objects, nondegenerate edges k : d1 k -> d0 k as generators and
/// d0 l . d2 l = d1 l for every nondegenerate triangle l. Degenerate edges are
/// identities.
inline FPGroupoid fundamental_groupoid(const FiniteSimplicialSet& k) {
  k.validate();
  FPGroupoid p;
  for (const auto& v : k.level(0)) p.objects.push_back(v.name);
  if (k.dim_cap() == 0) return p;
  std::vector<std::optional<std::size_t>> edge_gen(k.count(1));
  for (std::size_t e = 0; e < k.count(1); ++e) {
    const auto& s = k.simplex(1, e);
    if (s.degenerate) {
      if (s.faces[0] != s.faces[1]) throw Error(ErrorKind::InvalidSimplicialSet, "degenerate edge " + s.name + " is not a loop");
      continue;
    }
    edge_gen[e] = p.generators.size();
    p.generators.push_back({s.name, s.faces[1], s.faces[0]});
  }
  auto as_path = [&](std::size_t e) {
    return edge_gen[e] ? Path{{*edge_gen[e], false}} : Path{};
  };
  if (k.dim_cap() >= 2)
    for (std::size_t t = 0; t < k.count(2); ++t) {
      const auto& s = k.simplex(2, t);
      if (s.degenerate) continue;
      Path lhs = as_path(s.faces[2]);
      const Path second = as_path(s.faces[0]);
      lhs.insert(lhs.end(), second.begin(), second.end());
      const std::size_t src = k.face(1, s.faces[2], 1);
      const std::size_t tgt = k.face(1, s.faces[0], 0);
      p.relations.push_back({src, tgt, std::move(lhs), as_path(s.faces[1])});
    }
  p.validate();
  return p;
}

/// Complete coset table of a finite group, with cosets renumbered so that
/// coset 0 is the identity and each coset carries a word reaching it.
struct CosetTable {
  std::size_t generators = 0;
  std::vector<std::vector<std::size_t>> table;  // [coset][2 g + inv]
  std::vector<std::vector<std::size_t>> words;  // column sequence from coset 0
  std::size_t defined = 0;                      // cosets defined during enumeration

  std::size_t order() const noexcept { return table.size(); }
  std::size_t act(std::size_t c, const std::vector<std::size_t>& columns) const {
    for (auto x : columns) c = table[c][x];
    return c;
  }
  /// Product in traversal order: first a, then b.
  std::size_t multiply(std::size_t a, std::size_t b) const { return act(a, words[b]); }
};

/// Result of enumeration: the table, or the number of cosets defined when
/// the budget ran out.
struct Enumeration {
  std::optional<CosetTable> table;
  std::size_t defined = 0;
};

/// HLT coset enumeration over the trivial subgroup. Relators are column
/// sequences (column 2 g is g, 2 g + 1 its inverse).
inline Enumeration enumerate_cosets(std::size_t gens, const std::vector<std::vector<std::size_t>>& relators,
                                    std::size_t budget) {
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  const std::size_t cols = 2 * gens;
  std::vector<std::vector<std::size_t>> t(1, std::vector<std::size_t>(cols, none));
  std::vector<std::size_t> parent{0};
  bool overflow = false;

  auto inv = [](std::size_t x) { return x ^ 1u; };
  auto rep = [&](std::size_t c) {
    std::size_t r = c;
    while (parent[r] != r) r = parent[r];
    while (parent[c] != r) {
      const std::size_t next = parent[c];
      parent[c] = r;
      c = next;
    }
    return r;
  };
  auto alive = [&](std::size_t c) { return parent[c] == c; };
  auto define = [&](std::size_t c, std::size_t x) {
    if (t.size() >= budget) {
      overflow = true;
      return;
    }
    const std::size_t d = t.size();
    t.emplace_back(cols, none);
    parent.push_back(d);
    t[c][x] = d;
    t[d][inv(x)] = c;
  };
  auto merge = [&](std::size_t k, std::size_t l, std::deque<std::size_t>& q) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (l < k) std::swap(k, l);
    parent[l] = k;
    q.push_back(l);
  };
  auto coincidence = [&](std::size_t a, std::size_t b) {
    std::deque<std::size_t> q;
    merge(a, b, q);
    while (!q.empty()) {
      const std::size_t e = q.front();
      q.pop_front();
      for (std::size_t x = 0; x < cols; ++x) {
        if (t[e][x] == none) continue;
        const std::size_t f = t[e][x];
        if (t[f][inv(x)] == e) t[f][inv(x)] = none;
        const std::size_t e1 = rep(e), f1 = rep(f);
        if (t[e1][x] != none) {
          merge(f1, t[e1][x], q);
        } else if (t[f1][inv(x)] != none) {
          merge(e1, t[f1][inv(x)], q);
        } else {
          t[e1][x] = f1;
          t[f1][inv(x)] = e1;
        }
      }
    }
  };
  auto scan_and_fill = [&](std::size_t c, const std::vector<std::size_t>& w) {
    std::size_t f = c, b = c;
    std::size_t i = 0, j = w.size();  // unscanned part is w[i, j)
    for (;;) {
      while (i < j && t[f][w[i]] != none) f = t[f][w[i++]];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && t[b][inv(w[j - 1])] != none) b = t[b][inv(w[--j])];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (i + 1 == j) {
        t[f][w[i]] = b;
        t[b][inv(w[i])] = f;
        return;
      }
      define(f, w[i]);
      if (overflow) return;
    }
  };

  for (std::size_t c = 0; c < t.size() && !overflow; ++c) {
    for (const auto& r : relators) {
      if (!alive(c) || overflow) break;
      if (!r.empty()) scan_and_fill(c, r);
    }
    for (std::size_t x = 0; x < cols && alive(c) && !overflow; ++x)
      if (t[c][x] == none) define(c, x);
  }
  Enumeration out;
  out.defined = t.size();
  if (overflow) return out;

  // renumber live cosets breadth first from the identity
  std::vector<std::size_t> index(t.size(), none);
  CosetTable ct;
  ct.generators = gens;
  ct.defined = t.size();
  std::vector<std::size_t> order{0};
  index[0] = 0;
  ct.words.push_back({});
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t x = 0; x < cols; ++x) {
      const std::size_t d = rep(t[order[k]][x]);
      if (index[d] == none) {
        index[d] = order.size();
        order.push_back(d);
        auto w = ct.words[k];
        w.push_back(x);
        ct.words.push_back(std::move(w));
      }
    }
  for (std::size_t c : order) {
    std::vector<std::size_t> row(cols);
    for (std::size_t x = 0; x < cols; ++x) row[x] = index[rep(t[c][x])];
    ct.table.push_back(std::move(row));
  }
  out.table = std::move(ct);
  return out;
}

/// Finite groupoid equivalent to a presentation, with each generator's image
/// and a path for every arrow.
struct FPNormalization {
  std::optional<FiniteGroupoid> groupoid;
  std::vector<std::size_t> generator_images;  // generator -> arrow
  std::vector<Path> arrow_paths;              // arrow -> path of generators
  std::size_t cosets_defined = 0;
  std::string detail;

  bool finite() const noexcept { return groupoid.has_value(); }
};

inline constexpr std::size_t default_coset_budget = 10000;

/// Spanning tree per component, vertex-group presentation at the root, then
/// bounded coset enumeration of each vertex group.
inline FPNormalization normalize_fp(const FPGroupoid& p, std::size_t budget = default_coset_budget) {
  if (budget == 0) throw Error(ErrorKind::InvalidParams, "coset budget must be at least 1");
  p.validate();
  const std::size_t n = p.objects.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  // BFS trees: root[x], path_from_root[x] and tree membership of generators
  std::vector<std::size_t> root(n, none);
  std::vector<Path> from_root(n);
  std::vector<bool> in_tree(p.generators.size(), false);
  std::vector<std::size_t> roots;
  for (std::size_t r = 0; r < n; ++r) {
    if (root[r] != none) continue;
    roots.push_back(r);
    root[r] = r;
    std::vector<std::size_t> queue{r};
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const std::size_t x = queue[k];
      for (std::size_t g = 0; g < p.generators.size(); ++g) {
        const auto& gen = p.generators[g];
        for (bool inv : {false, true}) {
          const std::size_t from = inv ? gen.tgt : gen.src, to = inv ? gen.src : gen.tgt;
          if (from != x || root[to] != none) continue;
          root[to] = r;
          in_tree[g] = true;
          from_root[to] = from_root[x];
          from_root[to].push_back({g, inv});
          queue.push_back(to);
        }
      }
    }
  }

  FPNormalization out;
  // per component: local generator numbering of the non-tree generators
  std::map<std::size_t, std::vector<std::size_t>> local_gens;
  std::vector<std::size_t> local_index(p.generators.size(), none);
  for (std::size_t g = 0; g < p.generators.size(); ++g)
    if (!in_tree[g]) {
      auto& v = local_gens[root[p.generators[g].src]];
      local_index[g] = v.size();
      v.push_back(g);
    }
  auto to_columns = [&](const Path& path) {
    std::vector<std::size_t> cols;
    for (const auto& l : path)
      if (!in_tree[l.gen]) cols.push_back(2 * local_index[l.gen] + (l.inv ? 1 : 0));
    return cols;
  };
  auto inverse_columns = [](std::vector<std::size_t> cols) {
    std::reverse(cols.begin(), cols.end());
    for (auto& c : cols) c ^= 1u;
    return cols;
  };

  std::map<std::size_t, CosetTable> groups;
  for (std::size_t r : roots) {
    std::vector<std::vector<std::size_t>> relators;
    for (const auto& rel : p.relations) {
      if (root[rel.src] != r) continue;
      auto w = to_columns(rel.lhs);
      const auto back = inverse_columns(to_columns(rel.rhs));
      w.insert(w.end(), back.begin(), back.end());
      if (!w.empty()) relators.push_back(std::move(w));
    }
    const std::size_t gens = local_gens.count(r) ? local_gens[r].size() : 0;
    auto e = enumerate_cosets(gens, relators, budget);
    out.cosets_defined += e.defined;
    if (!e.table) {
      out.detail = "vertex group at " + p.objects[r] + " exceeded " + std::to_string(budget) + " cosets";
      return out;
    }
    groups.emplace(r, std::move(*e.table));
  }

  // arrows (x, y, c): x back to the root, the loop c, then out to y
  FiniteGroupoid g;
  for (const auto& o : p.objects) g.add_object(o);
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> arrow_of;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (root[x] != root[y]) continue;
      const CosetTable& ct = groups.at(root[x]);
      for (std::size_t c = 0; c < ct.order(); ++c) {
        std::string name = "[" + p.objects[x] + "," + p.objects[y] + "]";
        if (ct.order() > 1) name += "#" + std::to_string(c);
        arrow_of[{x, y, c}] = g.add_arrow(name, x, y);
        Path path;
        for (auto it = from_root[x].rbegin(); it != from_root[x].rend(); ++it) path.push_back({it->gen, !it->inv});
        for (auto col : ct.words[c]) {
          const std::size_t gen = local_gens[root[x]][col / 2];
          const bool inv = col % 2 == 1;
          // the loop of gen is from_root[src] . gen . from_root[tgt]^-1, reversed when inverted
          const auto& gg = p.generators[gen];
          const Path& first = from_root[inv ? gg.tgt : gg.src];
          const Path& last = from_root[inv ? gg.src : gg.tgt];
          path.insert(path.end(), first.begin(), first.end());
          path.push_back({gen, inv});
          for (auto it = last.rbegin(); it != last.rend(); ++it) path.push_back({it->gen, !it->inv});
        }
        path.insert(path.end(), from_root[y].begin(), from_root[y].end());
        out.arrow_paths.push_back(std::move(path));
      }
    }
  for (std::size_t x = 0; x < n; ++x) g.set_identity(x, arrow_of.at({x, x, 0}));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (root[x] != root[y]) continue;
      const CosetTable& ct = groups.at(root[x]);
      for (std::size_t z = 0; z < n; ++z) {
        if (root[z] != root[x]) continue;
        for (std::size_t c = 0; c < ct.order(); ++c)
          for (std::size_t d = 0; d < ct.order(); ++d)
            g.set_compose(arrow_of.at({y, z, d}), arrow_of.at({x, y, c}), arrow_of.at({x, z, ct.multiply(c, d)}));
      }
    }
  for (std::size_t k = 0; k < p.generators.size(); ++k) {
    const auto& gen = p.generators[k];
    std::size_t c = 0;
    if (!in_tree[k]) c = groups.at(root[gen.src]).table[0][2 * local_index[k]];
    out.generator_images.push_back(arrow_of.at({gen.src, gen.tgt, c}));
  }
  validate_groupoid(g);
  out.groupoid = std::move(g);
  return out;
}

/// Arrow reached by following a path of generator images in a groupoid.
inline std::size_t follow(const FiniteGroupoid& g, std::size_t start, const Path& path,
                          const std::vector<std::size_t>& images) {
  std::size_t a = g.identity(start);
  for (const auto& l : path) {
    std::size_t step = images.at(l.gen);
    if (l.inv) step = *g.inverse(step);
    a = g.compose(step, a);
  }
  return a;
}

}  // namespace ucstar
