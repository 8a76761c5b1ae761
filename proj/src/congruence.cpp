#include "orbifold/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace orbifold {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

Congruence congruence_closure(
    const Category& c, const std::vector<std::pair<ArrowId, ArrowId>>& seeds) {
  Dsu arrows(c.arrow_count());
  Dsu vertices(c.vertex_count());
  for (auto [a, b] : seeds) arrows.unite(a, b);

  bool changed = true;
  while (changed) {
    changed = false;

    // Equal arrow classes force equal endpoint classes.
    std::map<int, ArrowId> arrow_rep;
    for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
      int root = arrows.find(a);
      auto [it, fresh] = arrow_rep.try_emplace(root, a);
      if (!fresh) {
        changed |= vertices.unite(c.src(a), c.src(it->second));
        changed |= vertices.unite(c.dst(a), c.dst(it->second));
      }
    }

    // Equal vertex classes force equal identity classes.
    std::map<int, VertexId> vertex_rep;
    for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
      int root = vertices.find(v);
      auto [it, fresh] = vertex_rep.try_emplace(root, v);
      if (!fresh)
        changed |= arrows.unite(c.identity(v), c.identity(it->second));
    }

    // Composition compatibility: all defined compositions of a class pair
    // land in one class.
    std::map<std::pair<int, int>, int> composite;
    for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
      for (ArrowId b : c.arrows_from(c.dst(a))) {
        auto ab = c.compose(a, b);
        if (!ab) continue;
        std::pair<int, int> key{arrows.find(a), arrows.find(b)};
        auto [it, fresh] = composite.try_emplace(key, arrows.find(*ab));
        if (!fresh) changed |= arrows.unite(*ab, it->second);
      }
    }
  }

  Congruence out;
  out.arrow_class.resize(c.arrow_count());
  out.vertex_class.resize(c.vertex_count());
  std::map<int, int> arrow_ids, vertex_ids;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    int root = arrows.find(a);
    auto [it, fresh] = arrow_ids.try_emplace(root, (int)arrow_ids.size());
    out.arrow_class[a] = it->second;
  }
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    int root = vertices.find(v);
    auto [it, fresh] = vertex_ids.try_emplace(root, (int)vertex_ids.size());
    out.vertex_class[v] = it->second;
  }
  out.n_arrow_classes = static_cast<int>(arrow_ids.size());
  out.n_vertex_classes = static_cast<int>(vertex_ids.size());
  return out;
}

QuotientResult quotient_by_congruence(
    const Category& c, const std::vector<std::pair<ArrowId, ArrowId>>& seeds) {
  Congruence cong = congruence_closure(c, seeds);

  // Class names: lexicographically least member, for reproducible output.
  std::vector<std::string> vnames(cong.n_vertex_classes);
  std::vector<std::string> anames(cong.n_arrow_classes);
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    auto& name = vnames[cong.vertex_class[v]];
    if (name.empty() || c.vertex_name(v) < name) name = c.vertex_name(v);
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    auto& name = anames[cong.arrow_class[a]];
    if (name.empty() || c.arrow_name(a) < name) name = c.arrow_name(a);
  }

  CategoryBuilder b;
  for (const auto& n : vnames) b.add_vertex(n);
  std::vector<std::pair<VertexId, VertexId>> endpoints(cong.n_arrow_classes,
                                                       {kNoVertex, kNoVertex});
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    endpoints[cong.arrow_class[a]] = {cong.vertex_class[c.src(a)],
                                      cong.vertex_class[c.dst(a)]};
  for (int k = 0; k < cong.n_arrow_classes; ++k)
    b.add_arrow(anames[k], endpoints[k].first, endpoints[k].second);
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    b.set_identity(cong.vertex_class[v], cong.arrow_class[c.identity(v)]);

  // Composition classes from all defined representative compositions.
  std::map<std::pair<int, int>, int> comp;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    for (ArrowId x : c.arrows_from(c.dst(a))) {
      auto ax = c.compose(a, x);
      if (!ax) continue;
      comp[{cong.arrow_class[a], cong.arrow_class[x]}] =
          cong.arrow_class[*ax];
    }
  for (const auto& [key, value] : comp)
    b.set_compose(key.first, key.second, value);

  // The quotient is total when every composable class pair is covered.
  bool total = true;
  for (int a = 0; a < cong.n_arrow_classes && total; ++a)
    for (int x = 0; x < cong.n_arrow_classes && total; ++x) {
      if (endpoints[a].second != endpoints[x].first) continue;
      if (!comp.count({a, x})) {
        // Identity shortcuts still apply.
        bool a_is_id = false, x_is_id = false;
        for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
          if (cong.arrow_class[c.identity(v)] == a &&
              cong.vertex_class[v] == endpoints[x].first)
            a_is_id = true;
          if (cong.arrow_class[c.identity(v)] == x &&
              cong.vertex_class[v] == endpoints[a].second)
            x_is_id = true;
        }
        if (!a_is_id && !x_is_id) total = false;
      }
    }

  QuotientResult out;
  out.quotient = b.build(/*partial=*/!total);
  out.projection.vmap.assign(cong.vertex_class.begin(),
                             cong.vertex_class.end());
  out.projection.amap.assign(cong.arrow_class.begin(),
                             cong.arrow_class.end());
  out.congruence = std::move(cong);
  return out;
}

}  // namespace orbifold
