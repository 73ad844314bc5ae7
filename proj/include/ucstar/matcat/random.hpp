#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ucstar/matcat/functor.hpp"
#include "ucstar/matcat/unitary.hpp"

namespace ucstar {

inline Matrix random_unitary(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix m = rng.matrix(n, n);
    if (smallest_singular_value(m) > 1e-3) return unitarize(m);
  }
}

/// Finite-dimensional C*-category in block form. Object x is
/// C^dim(x) = U_x ( (+)_t C^{mult[x][t]} (x) C^{sizes[t]} ), and hom(x, y)
/// consists of U_y ( (+)_t B_t (x) 1_{sizes[t]} ) U_x^* with B_t arbitrary.
struct BlockModel {
  std::vector<std::size_t> sizes;
  std::vector<std::vector<std::size_t>> mult;
  std::vector<Matrix> frames;
  std::vector<std::string> names;
  CategoryPtr category;

  std::size_t types() const noexcept { return sizes.size(); }
  std::size_t objects() const noexcept { return mult.size(); }

  std::size_t dim(std::size_t x) const {
    std::size_t d = 0;
    for (std::size_t t = 0; t < types(); ++t) d += mult[x][t] * sizes[t];
    return d;
  }

  std::size_t offset(std::size_t x, std::size_t t) const {
    std::size_t o = 0;
    for (std::size_t u = 0; u < t; ++u) o += mult[x][u] * sizes[u];
    return o;
  }

  /// Assemble an arrow x -> y from per-type blocks B_t of shape mult[y][t] x mult[x][t].
  Matrix embed(std::size_t x, std::size_t y, const std::vector<Matrix>& blocks) const {
    Matrix m(dim(y), dim(x));
    for (std::size_t t = 0; t < types(); ++t) {
      const std::size_t s = sizes[t], ox = offset(x, t), oy = offset(y, t);
      for (std::size_t i = 0; i < mult[y][t]; ++i)
        for (std::size_t j = 0; j < mult[x][t]; ++j)
          for (std::size_t k = 0; k < s; ++k) m(oy + i * s + k, ox + j * s + k) = blocks[t](i, j);
    }
    return frames[y] * m * frames[x].adjoint();
  }

  std::vector<Matrix> blocks(std::size_t x, std::size_t y, const Matrix& a) const {
    const Matrix m = frames[y].adjoint() * a * frames[x];
    std::vector<Matrix> out;
    for (std::size_t t = 0; t < types(); ++t) {
      const std::size_t s = sizes[t], ox = offset(x, t), oy = offset(y, t);
      Matrix b(mult[y][t], mult[x][t]);
      for (std::size_t i = 0; i < mult[y][t]; ++i)
        for (std::size_t j = 0; j < mult[x][t]; ++j) b(i, j) = m(oy + i * s, ox + j * s);
      out.push_back(std::move(b));
    }
    return out;
  }

  std::vector<Matrix> zero_blocks(std::size_t x, std::size_t y) const {
    std::vector<Matrix> out;
    for (std::size_t t = 0; t < types(); ++t) out.emplace_back(mult[y][t], mult[x][t]);
    return out;
  }

  /// Random element of hom(x, y).
  Matrix random_arrow(Rng& rng, std::size_t x, std::size_t y) const {
    std::vector<Matrix> b;
    for (std::size_t t = 0; t < types(); ++t) b.push_back(rng.matrix(mult[y][t], mult[x][t]));
    return embed(x, y, b);
  }

  void build() {
    MatCategory c;
    for (std::size_t x = 0; x < objects(); ++x) c.add_object(names[x], dim(x));
    for (std::size_t x = 0; x < objects(); ++x)
      for (std::size_t y = 0; y < objects(); ++y) {
        std::vector<Matrix> basis;
        for (std::size_t t = 0; t < types(); ++t)
          for (std::size_t i = 0; i < mult[y][t]; ++i)
            for (std::size_t j = 0; j < mult[x][t]; ++j) {
              auto b = zero_blocks(x, y);
              b[t](i, j) = 1.0 / std::sqrt(static_cast<double>(sizes[t]));
              basis.push_back(embed(x, y, b));
            }
        c.set_hom(x, y, Subspace::from_orthonormal({dim(y), dim(x)}, std::move(basis)));
      }
    category = share(std::move(c));
  }
};

inline BlockModel make_block_model(Rng& rng, std::vector<std::size_t> sizes, std::vector<std::vector<std::size_t>> mult,
                                   std::vector<std::string> names = {}) {
  BlockModel m{std::move(sizes), std::move(mult), {}, std::move(names), nullptr};
  if (m.names.empty())
    for (std::size_t x = 0; x < m.objects(); ++x) m.names.push_back("o" + std::to_string(x));
  for (std::size_t x = 0; x < m.objects(); ++x) {
    if (m.mult[x].size() != m.types()) throw Error(ErrorKind::InvalidParams, "multiplicity row length");
    if (m.dim(x) == 0) throw Error(ErrorKind::InvalidParams, "object of dimension 0");
    m.frames.push_back(random_unitary(rng, m.dim(x)));
  }
  m.build();
  return m;
}

/// Random block model whose objects have exactly the requested dimensions.
/// Type 0 always has size 1 so every dimension is reachable.
inline BlockModel random_block_model(Rng& rng, const std::vector<std::size_t>& dims, std::size_t max_types = 3) {
  const std::size_t types = 1 + rng.index(0, max_types - 1);
  std::vector<std::size_t> sizes{1};
  for (std::size_t t = 1; t < types; ++t) sizes.push_back(1 + rng.index(0, 1));
  std::vector<std::vector<std::size_t>> mult;
  for (std::size_t d : dims) {
    std::vector<std::size_t> row(types, 0);
    std::size_t left = d;
    while (left > 0) {
      const std::size_t t = rng.index(0, types - 1);
      if (sizes[t] > left) continue;
      row[t] += 1;
      left -= sizes[t];
    }
    mult.push_back(std::move(row));
  }
  return make_block_model(rng, std::move(sizes), std::move(mult));
}

/// Random block model with at most `max_objects` objects and dims in [1, max_dim].
inline BlockModel random_block_model(Rng& rng, std::size_t max_objects, std::size_t max_dim) {
  std::vector<std::size_t> dims(1 + rng.index(0, max_objects - 1));
  for (auto& d : dims) d = 1 + rng.index(0, max_dim - 1);
  // repeat a dimension now and then so that collapsing functors have room
  if (dims.size() > 1 && rng.coin(0.5)) dims.back() = dims.front();
  return random_block_model(rng, dims);
}

/// Block form of A (x) B: types are pairs (t, u) in t-major order. Its
/// category has the same hom spaces as tensor_max(A, B) with another basis.
inline BlockModel tensor_block_model(const BlockModel& a, const BlockModel& b) {
  BlockModel m;
  for (std::size_t t = 0; t < a.types(); ++t)
    for (std::size_t u = 0; u < b.types(); ++u) m.sizes.push_back(a.sizes[t] * b.sizes[u]);
  for (std::size_t x = 0; x < a.objects(); ++x)
    for (std::size_t y = 0; y < b.objects(); ++y) {
      std::vector<std::size_t> row;
      for (std::size_t t = 0; t < a.types(); ++t)
        for (std::size_t u = 0; u < b.types(); ++u) row.push_back(a.mult[x][t] * b.mult[y][u]);
      m.mult.push_back(std::move(row));
      m.names.push_back("(" + a.names[x] + "," + b.names[y] + ")");
      // permutation from the block layout to the Kronecker layout
      const std::size_t dx = a.dim(x), dy = b.dim(y);
      Matrix p(dx * dy, dx * dy);
      std::size_t col = 0;
      for (std::size_t t = 0; t < a.types(); ++t)
        for (std::size_t u = 0; u < b.types(); ++u)
          for (std::size_t i = 0; i < a.mult[x][t]; ++i)
            for (std::size_t j = 0; j < b.mult[y][u]; ++j)
              for (std::size_t k = 0; k < a.sizes[t]; ++k)
                for (std::size_t l = 0; l < b.sizes[u]; ++l) {
                  const std::size_t ix = a.offset(x, t) + i * a.sizes[t] + k;
                  const std::size_t iy = b.offset(y, u) + j * b.sizes[u] + l;
                  p(ix * dy + iy, col++) = 1.0;
                }
      m.frames.push_back(kron(a.frames[x], b.frames[y]) * p);
    }
  m.build();
  return m;
}

/// Block functor data: target type t' receives r[t'][t] copies of source type t.
struct BlockFunctor {
  BlockModel source;
  BlockModel target;
  std::vector<std::vector<std::size_t>> r;
  StarFunctor functor;
};

inline StarFunctor block_functor(const BlockModel& src, const BlockModel& tgt, const std::vector<std::vector<std::size_t>>& r,
                                 const std::vector<std::size_t>& object_map) {
  return StarFunctor::from_action(
      src.category, tgt.category, object_map, [&](std::size_t x, std::size_t y, const Matrix& a) {
        const auto b = src.blocks(x, y, a);
        const std::size_t fx = object_map[x], fy = object_map[y];
        std::vector<Matrix> out;
        for (std::size_t u = 0; u < tgt.types(); ++u) {
          Matrix blk(tgt.mult[fy][u], tgt.mult[fx][u]);
          std::size_t ri = 0, ci = 0;
          for (std::size_t t = 0; t < src.types(); ++t)
            for (std::size_t c = 0; c < r[u][t]; ++c) {
              for (std::size_t i = 0; i < b[t].rows(); ++i)
                for (std::size_t j = 0; j < b[t].cols(); ++j) blk(ri + i, ci + j) = b[t](i, j);
              ri += b[t].rows();
              ci += b[t].cols();
            }
          out.push_back(std::move(blk));
        }
        return tgt.embed(fx, fy, out);
      });
}

struct RandomFunctorOptions {
  std::size_t max_dim = 4;
  std::size_t max_objects = 4;
  std::size_t max_copies = 2;         // entries of r range over [0, max_copies]
  double collapse_probability = 0.3;  // merge source objects with equal image data
  std::size_t max_extra_objects = 1;
  bool weak_equivalence = false;      // r a permutation, extras duplicate images
};

/// Random *-functor out of `src`, with a freshly generated target.
inline BlockFunctor random_block_functor(Rng& rng, const BlockModel& src, const RandomFunctorOptions& opt = {}) {
  for (;;) {
    const std::size_t ts = src.types();
    std::vector<std::size_t> tsizes;
    std::vector<std::vector<std::size_t>> r;
    if (opt.weak_equivalence) {
      std::vector<std::size_t> perm(ts);
      for (std::size_t t = 0; t < ts; ++t) perm[t] = t;
      for (std::size_t t = ts; t > 1; --t) std::swap(perm[t - 1], perm[rng.index(0, t - 1)]);
      tsizes.resize(ts);
      r.assign(ts, std::vector<std::size_t>(ts, 0));
      for (std::size_t t = 0; t < ts; ++t) {
        tsizes[perm[t]] = src.sizes[t];
        r[perm[t]][t] = 1;
      }
    } else {
      const std::size_t tt = 1 + rng.index(0, 2);
      for (std::size_t u = 0; u < tt; ++u) tsizes.push_back(1 + rng.index(0, 1));
      r.assign(tt, std::vector<std::size_t>(ts, 0));
      for (auto& row : r)
        for (auto& v : row) v = rng.coin(0.5) ? rng.index(0, opt.max_copies) : 0;
    }
    // multiplicities of the image of each source object
    std::vector<std::vector<std::size_t>> image(src.objects(), std::vector<std::size_t>(tsizes.size(), 0));
    for (std::size_t x = 0; x < src.objects(); ++x)
      for (std::size_t u = 0; u < tsizes.size(); ++u)
        for (std::size_t t = 0; t < ts; ++t) image[x][u] += r[u][t] * src.mult[x][t];
    auto dim_of = [&](const std::vector<std::size_t>& m) {
      std::size_t d = 0;
      for (std::size_t u = 0; u < tsizes.size(); ++u) d += m[u] * tsizes[u];
      return d;
    };
    bool ok = true;
    for (const auto& m : image) ok = ok && dim_of(m) >= 1 && dim_of(m) <= opt.max_dim;
    if (!ok) continue;

    std::vector<std::vector<std::size_t>> tmult;
    std::vector<std::size_t> om(src.objects());
    for (std::size_t x = 0; x < src.objects(); ++x) {
      std::size_t hit = tmult.size();
      for (std::size_t k = 0; k < tmult.size(); ++k)
        if (tmult[k] == image[x] && rng.coin(opt.collapse_probability)) hit = k;
      if (hit == tmult.size()) tmult.push_back(image[x]);
      om[x] = hit;
    }
    const std::size_t room = opt.max_objects > tmult.size() ? opt.max_objects - tmult.size() : 0;
    const std::size_t extras = rng.index(0, std::min(room, opt.max_extra_objects));
    for (std::size_t e = 0; e < extras; ++e) {
      if (opt.weak_equivalence) {
        tmult.push_back(tmult[rng.index(0, tmult.size() - 1)]);
        continue;
      }
      std::vector<std::size_t> m(tsizes.size());
      for (auto& v : m) v = rng.index(0, 2);
      if (dim_of(m) == 0) m[0] = 1;
      if (dim_of(m) > opt.max_dim) continue;
      tmult.push_back(std::move(m));
    }
    BlockFunctor out;
    out.source = src;
    out.target = make_block_model(rng, tsizes, tmult);
    out.r = r;
    out.functor = block_functor(src, out.target, r, om);
    return out;
  }
}

}  // namespace ucstar
