#pragma once

#include "ucstar/gpd/finite_category.hpp"
#include "ucstar/starpres/presentation.hpp"

namespace ucstar {

/// Presentation realizing every arrow of C as an isometry: one generator per
/// arrow (identities included), the composition table as relations, and
/// c* c = 1 for every arrow c.
inline Presentation ism_presentation(const FiniteCategory& c) {
  c.validate();
  Presentation p;
  for (const auto& o : c.object_names()) p.quiver.objects.push_back(o);
  for (const auto& a : c.arrow_list()) p.quiver.arrows.push_back({a.name, c.object_name(a.src), c.object_name(a.tgt)});
  auto gen = [&](std::size_t g) { return FreeStarElement::generator(p.quiver, c.arrow(g).name); };
  for (std::size_t g = 0; g < c.arrows(); ++g)
    for (std::size_t f = 0; f < c.arrows(); ++f) {
      if (c.arrow(f).tgt != c.arrow(g).src) continue;
      p.relations.push_back({compose(gen(g), gen(f)), gen(c.compose(g, f))});
    }
  for (std::size_t g = 0; g < c.arrows(); ++g) {
    p.relations.push_back(
        {compose(gen(g).adjoint(), gen(g)), FreeStarElement::identity(c.object_name(c.arrow(g).src))});
  }
  p.validate();
  return p;
}

}  // namespace ucstar
