#include "orbifold/morphism.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbifold {

MorphismFlags check_morphism(const Category& src, const Category& dst,
                             const CatMorphism& m) {
  MorphismFlags flags;
  if (m.vmap.size() != src.vertex_count() ||
      m.amap.size() != src.arrow_count()) {
    flags.witness = "map sizes do not match the source category";
    return flags;
  }

  flags.valid = true;
  for (ArrowId a = 0; a < static_cast<ArrowId>(src.arrow_count()); ++a) {
    ArrowId fa = m.amap[a];
    if (fa < 0 || fa >= static_cast<ArrowId>(dst.arrow_count())) {
      flags.valid = false;
      flags.witness = "arrow image out of range: " + src.arrow_name(a);
      return flags;
    }
    if (dst.src(fa) != m.vmap[src.src(a)] ||
        dst.dst(fa) != m.vmap[src.dst(a)]) {
      flags.valid = false;
      flags.witness = "endpoints not preserved at " + src.arrow_name(a);
    }
  }
  for (VertexId v = 0; v < static_cast<VertexId>(src.vertex_count()); ++v) {
    if (m.amap[src.identity(v)] != dst.identity(m.vmap[v])) {
      flags.valid = false;
      flags.witness = "identity not preserved at " + src.vertex_name(v);
    }
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(src.arrow_count()); ++a) {
    for (ArrowId b : src.arrows_from(src.dst(a))) {
      auto ab = src.compose(a, b);
      if (!ab) continue;
      auto fab = dst.compose(m.amap[a], m.amap[b]);
      if (!fab || *fab != m.amap[*ab]) {
        flags.valid = false;
        flags.witness = "composition not preserved at " + src.arrow_name(a) +
                        "*" + src.arrow_name(b);
      }
    }
  }
  if (!flags.valid) return flags;

  // Full as in the projection lemma: every target arrow between image
  // vertices has a preimage. Faithful: injective on every hom set.
  flags.full = true;
  flags.faithful = true;
  for (VertexId x = 0; x < static_cast<VertexId>(src.vertex_count()); ++x) {
    for (VertexId y = 0; y < static_cast<VertexId>(src.vertex_count()); ++y) {
      auto source_hom = src.hom(x, y);
      std::set<ArrowId> images;
      for (ArrowId a : source_hom) images.insert(m.amap[a]);
      if (images.size() != source_hom.size()) {
        flags.faithful = false;
        flags.witness = "hom(" + src.vertex_name(x) + "," +
                        src.vertex_name(y) + ") collapses";
      }
    }
  }
  {
    std::set<VertexId> vimage(m.vmap.begin(), m.vmap.end());
    std::set<ArrowId> aimage(m.amap.begin(), m.amap.end());
    for (ArrowId t = 0; t < static_cast<ArrowId>(dst.arrow_count()); ++t)
      if (vimage.count(dst.src(t)) && vimage.count(dst.dst(t)) &&
          !aimage.count(t)) {
        flags.full = false;
        flags.witness = "arrow " + dst.arrow_name(t) + " has no preimage";
      }
  }
  return flags;
}

CatMorphism identity_morphism(const Category& c) {
  CatMorphism m;
  m.vmap.resize(c.vertex_count());
  m.amap.resize(c.arrow_count());
  for (std::size_t v = 0; v < c.vertex_count(); ++v)
    m.vmap[v] = static_cast<VertexId>(v);
  for (std::size_t a = 0; a < c.arrow_count(); ++a)
    m.amap[a] = static_cast<ArrowId>(a);
  return m;
}

CatMorphism compose_morphisms(const CatMorphism& first,
                              const CatMorphism& second) {
  CatMorphism m;
  m.vmap.reserve(first.vmap.size());
  m.amap.reserve(first.amap.size());
  for (VertexId v : first.vmap) m.vmap.push_back(second.vmap[v]);
  for (ArrowId a : first.amap) m.amap.push_back(second.amap[a]);
  return m;
}

std::optional<CatMorphism> invert_isomorphism(const Category& c,
                                              const Category& d,
                                              const CatMorphism& m) {
  if (c.vertex_count() != d.vertex_count() ||
      c.arrow_count() != d.arrow_count())
    return std::nullopt;
  CatMorphism inv;
  inv.vmap.assign(d.vertex_count(), kNoVertex);
  inv.amap.assign(d.arrow_count(), kNoArrow);
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    if (inv.vmap[m.vmap[v]] != kNoVertex) return std::nullopt;
    inv.vmap[m.vmap[v]] = v;
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    if (inv.amap[m.amap[a]] != kNoArrow) return std::nullopt;
    inv.amap[m.amap[a]] = a;
  }
  return inv;
}

bool check_isomorphism(const Category& c, const Category& d,
                       const CatMorphism& m, std::string* why) {
  auto fail = [&](const std::string& w) {
    if (why) *why = w;
    return false;
  };
  auto inv = invert_isomorphism(c, d, m);
  if (!inv) return fail("not bijective");
  auto fwd = check_morphism(c, d, m);
  if (!fwd.valid) return fail("forward: " + fwd.witness);
  auto bwd = check_morphism(d, c, *inv);
  if (!bwd.valid) return fail("inverse: " + bwd.witness);
  return true;
}

namespace {

// Iteratively refined vertex invariant (degree profile + neighbourhood).
std::vector<std::string> vertex_invariants(const Category& c) {
  std::vector<std::string> inv(c.vertex_count());
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    int loops = 0;
    for (ArrowId a : c.arrows_from(v))
      if (c.dst(a) == v) ++loops;
    inv[v] = std::to_string(c.arrows_from(v).size()) + "/" +
             std::to_string(c.arrows_into(v).size()) + "/" +
             std::to_string(loops);
  }
  for (int round = 0; round < 2; ++round) {
    std::vector<std::string> next(c.vertex_count());
    for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
      std::vector<std::string> out, in;
      for (ArrowId a : c.arrows_from(v)) out.push_back(inv[c.dst(a)]);
      for (ArrowId a : c.arrows_into(v)) in.push_back(inv[c.src(a)]);
      std::sort(out.begin(), out.end());
      std::sort(in.begin(), in.end());
      next[v] = inv[v] + "|";
      for (auto& s : out) next[v] += s + ",";
      next[v] += ";";
      for (auto& s : in) next[v] += s + ",";
    }
    inv = std::move(next);
  }
  return inv;
}

std::uint64_t count_defined_compositions(const Category& c) {
  std::uint64_t n = 0;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    for (ArrowId b : c.arrows_from(c.dst(a)))
      if (c.compose_defined(a, b)) ++n;
  return n;
}

struct IsoSearch {
  const Category& c;
  const Category& d;
  Budget budget;
  std::vector<std::string> inv_c, inv_d;
  std::vector<VertexId> vmap;          // c vertex -> d vertex
  std::vector<char> vused;             // d vertex taken
  std::vector<ArrowId> amap;           // c arrow -> d arrow
  std::vector<char> aused;             // d arrow taken
  std::vector<VertexId> vertex_order;  // most-constrained first
  bool exhausted = false;

  IsoSearch(const Category& c_, const Category& d_, std::uint64_t b)
      : c(c_), d(d_), budget(b) {
    inv_c = vertex_invariants(c);
    inv_d = vertex_invariants(d);
    vmap.assign(c.vertex_count(), kNoVertex);
    vused.assign(d.vertex_count(), 0);
    amap.assign(c.arrow_count(), kNoArrow);
    aused.assign(d.arrow_count(), 0);
    for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
      vertex_order.push_back(v);
    std::map<std::string, int> rarity;
    for (auto& s : inv_c) ++rarity[s];
    std::stable_sort(vertex_order.begin(), vertex_order.end(),
                     [&](VertexId a, VertexId b) {
                       return rarity[inv_c[a]] < rarity[inv_c[b]];
                     });
  }

  bool hom_sizes_fit(VertexId v) {
    // Once both endpoints of a hom set are placed, the sizes must agree.
    for (VertexId u = 0; u < static_cast<VertexId>(c.vertex_count()); ++u) {
      if (vmap[u] == kNoVertex) continue;
      if (c.hom(v, u).size() != d.hom(vmap[v], vmap[u]).size()) return false;
      if (c.hom(u, v).size() != d.hom(vmap[u], vmap[v]).size()) return false;
    }
    return true;
  }

  bool assign_vertices(std::size_t idx) {
    if (!budget.step()) {
      exhausted = true;
      return false;
    }
    if (idx == vertex_order.size()) return assign_arrows(0);
    VertexId v = vertex_order[idx];
    for (VertexId w = 0; w < static_cast<VertexId>(d.vertex_count()); ++w) {
      if (vused[w] || inv_c[v] != inv_d[w]) continue;
      vmap[v] = w;
      vused[w] = 1;
      if (hom_sizes_fit(v) && assign_vertices(idx + 1)) return true;
      if (exhausted) return false;
      vmap[v] = kNoVertex;
      vused[w] = 0;
    }
    return false;
  }

  bool composition_consistent(ArrowId a) {
    // Check every defined composition both of whose factors are assigned and
    // that involves arrow a.
    for (ArrowId b = 0; b < static_cast<ArrowId>(c.arrow_count()); ++b) {
      if (amap[b] == kNoArrow) continue;
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        if (c.dst(x) != c.src(y)) continue;
        auto xy = c.compose(x, y);
        auto fxy = d.compose(amap[x], amap[y]);
        if (xy.has_value() != fxy.has_value()) return false;
        if (xy && amap[*xy] != kNoArrow && amap[*xy] != *fxy) return false;
      }
    }
    return true;
  }

  bool assign_arrows(ArrowId a) {
    if (!budget.step()) {
      exhausted = true;
      return false;
    }
    if (a == static_cast<ArrowId>(c.arrow_count())) return finish();
    if (c.is_identity(a)) {
      ArrowId img = d.identity(vmap[c.src(a)]);
      if (aused[img]) return false;
      amap[a] = img;
      aused[img] = 1;
      bool ok = composition_consistent(a) && assign_arrows(a + 1);
      if (!ok) {
        amap[a] = kNoArrow;
        aused[img] = 0;
      }
      return ok;
    }
    for (ArrowId t : d.hom(vmap[c.src(a)], vmap[c.dst(a)])) {
      if (aused[t] || d.is_identity(t)) continue;
      amap[a] = t;
      aused[t] = 1;
      if (composition_consistent(a) && assign_arrows(a + 1)) return true;
      if (exhausted) return false;
      amap[a] = kNoArrow;
      aused[t] = 0;
    }
    return false;
  }

  bool finish() {
    CatMorphism m{vmap, amap};
    return check_isomorphism(c, d, m);
  }
};

}  // namespace

IsoResult find_isomorphism(const Category& c, const Category& d,
                           std::uint64_t budget) {
  IsoResult res;
  if (c.vertex_count() != d.vertex_count() ||
      c.arrow_count() != d.arrow_count() ||
      count_defined_compositions(c) != count_defined_compositions(d)) {
    res.status = SearchStatus::NoIso;
    return res;
  }
  {
    auto ic = vertex_invariants(c);
    auto id = vertex_invariants(d);
    std::sort(ic.begin(), ic.end());
    std::sort(id.begin(), id.end());
    if (ic != id) {
      res.status = SearchStatus::NoIso;
      return res;
    }
  }
  IsoSearch search(c, d, budget);
  bool found = search.assign_vertices(0);
  res.steps = search.budget.used();
  if (found) {
    res.status = SearchStatus::Found;
    res.iso = CatMorphism{search.vmap, search.amap};
  } else {
    res.status =
        search.exhausted ? SearchStatus::Exhausted : SearchStatus::NoIso;
  }
  return res;
}

}  // namespace orbifold
