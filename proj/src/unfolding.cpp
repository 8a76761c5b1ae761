#include "orbifold/unfolding.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbifold {

namespace {

Unfolding unfold_over(const Representation& rep,
                      const std::vector<GroupElem>& layers, bool windowed) {
  const auto& k = rep.cat;
  const auto& g = rep.ann.group;

  Unfolding u;
  u.rep = rep;
  CategoryBuilder b;

  std::map<std::pair<VertexId, GroupElem>, VertexId> vindex;
  std::set<GroupElem> window(layers.begin(), layers.end());
  for (VertexId x = 0; x < static_cast<VertexId>(k.vertex_count()); ++x)
    for (const auto& h : layers) {
      VertexId v = b.add_vertex(k.vertex_name(x) + "@" + g.to_string(h));
      vindex[{x, h}] = v;
      u.vertex_base.push_back(x);
      u.vertex_layer.push_back(h);
    }

  std::map<std::pair<ArrowId, GroupElem>, ArrowId> aindex;
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (const auto& h : layers) {
      GroupElem out_layer = g.mul(rep.ann.label[a], h);
      if (windowed && !window.count(out_layer)) continue;
      ArrowId na = b.add_arrow(k.arrow_name(a) + "@" + g.to_string(h),
                               vindex.at({k.src(a), h}),
                               vindex.at({k.dst(a), out_layer}));
      aindex[{a, h}] = na;
      u.arrow_base.push_back(a);
      u.arrow_layer.push_back(h);
    }

  for (VertexId x = 0; x < static_cast<VertexId>(k.vertex_count()); ++x)
    for (const auto& h : layers) {
      auto it = aindex.find({k.identity(x), h});
      if (it != aindex.end()) b.set_identity(vindex.at({x, h}), it->second);
    }

  // (a, h) . (b, A(a) h) = (a*b, h).
  bool partial = windowed || k.partial();
  for (const auto& [key_a, na] : aindex) {
    auto [a, h] = key_a;
    GroupElem mid = g.mul(rep.ann.label[a], h);
    for (ArrowId bb : k.arrows_from(k.dst(a))) {
      auto it = aindex.find({bb, mid});
      if (it == aindex.end()) continue;
      auto ab = k.compose(a, bb);
      if (!ab) continue;
      auto res = aindex.find({*ab, h});
      if (res == aindex.end()) continue;
      b.set_compose(na, it->second, res->second);
    }
  }

  u.cat = b.build(partial);
  return u;
}

}  // namespace

Unfolding unfold(const Representation& rep) {
  if (!rep.ann.group.finite())
    throw DomainError(ErrorKind::InfiniteGroup,
                      "use bounded_unfold with a window");
  return unfold_over(rep, rep.ann.group.elements(), /*windowed=*/false);
}

Unfolding bounded_unfold(const Representation& rep,
                         const std::vector<GroupElem>& window) {
  return unfold_over(rep, window, /*windowed=*/true);
}

std::vector<GroupElem> box_window(
    const AnnotationGroup& g,
    const std::vector<std::pair<long long, long long>>& free_ranges) {
  if (g.kind() != AnnotationGroup::Kind::FgAbelian)
    throw DomainError(ErrorKind::BadInput, "box windows need an fg-abelian group");
  if (static_cast<int>(free_ranges.size()) != g.free_rank())
    throw DomainError(ErrorKind::BadInput, "one range per free coordinate");
  std::vector<std::vector<long long>> vecs{{}};
  for (auto [lo, hi] : free_ranges) {
    std::vector<std::vector<long long>> next;
    for (const auto& v : vecs)
      for (long long x = lo; x <= hi; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    vecs = std::move(next);
  }
  for (long long t : g.torsion()) {
    std::vector<std::vector<long long>> next;
    for (const auto& v : vecs)
      for (long long x = 0; x < t; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    vecs = std::move(next);
  }
  std::vector<GroupElem> out;
  for (auto& v : vecs) out.push_back(g.from_vector(std::move(v)));
  std::sort(out.begin(), out.end());
  return out;
}

CategoryAction induced_action(const Unfolding& u) {
  const auto& g = u.rep.ann.group;
  if (g.kind() != AnnotationGroup::Kind::Table)
    throw DomainError(ErrorKind::InfiniteGroup,
                      "induced action needs a finite annotation group");
  CategoryAction act;
  act.category = u.cat;
  act.group = g.table();

  std::map<std::pair<VertexId, GroupElem>, VertexId> vindex;
  for (VertexId v = 0; v < static_cast<VertexId>(u.cat.vertex_count()); ++v)
    vindex[{u.vertex_base[v], u.vertex_layer[v]}] = v;
  std::map<std::pair<ArrowId, GroupElem>, ArrowId> aindex;
  for (ArrowId a = 0; a < static_cast<ArrowId>(u.cat.arrow_count()); ++a)
    aindex[{u.arrow_base[a], u.arrow_layer[a]}] = a;

  for (GroupId gg = 0; gg < static_cast<GroupId>(act.group.size()); ++gg) {
    std::vector<VertexId> vrow(u.cat.vertex_count());
    std::vector<ArrowId> arow(u.cat.arrow_count());
    GroupElem ge = g.from_table_id(gg);
    for (VertexId v = 0; v < static_cast<VertexId>(u.cat.vertex_count()); ++v)
      vrow[v] = vindex.at({u.vertex_base[v], g.mul(u.vertex_layer[v], ge)});
    for (ArrowId a = 0; a < static_cast<ArrowId>(u.cat.arrow_count()); ++a)
      arow[a] = aindex.at({u.arrow_base[a], g.mul(u.arrow_layer[a], ge)});
    act.act_vertex.push_back(std::move(vrow));
    act.act_arrow.push_back(std::move(arow));
  }
  return act;
}

CatMorphism projection(const Unfolding& u) {
  CatMorphism m;
  m.vmap.assign(u.vertex_base.begin(), u.vertex_base.end());
  m.amap.assign(u.arrow_base.begin(), u.arrow_base.end());
  return m;
}

bool kernel_equals_orbits(const Unfolding& u, std::string* witness) {
  CategoryAction act = induced_action(u);
  OrbitPartitions parts = orbits(act);
  // ker pi classes are decided by the base component; compare as partitions.
  for (ArrowId a = 0; a < static_cast<ArrowId>(u.cat.arrow_count()); ++a)
    for (ArrowId b = a + 1; b < static_cast<ArrowId>(u.cat.arrow_count());
         ++b) {
      bool same_kernel = u.arrow_base[a] == u.arrow_base[b];
      bool same_orbit = parts.arrow_orbit[a] == parts.arrow_orbit[b];
      if (same_kernel != same_orbit) {
        if (witness)
          *witness = u.cat.arrow_name(a) + " vs " + u.cat.arrow_name(b);
        return false;
      }
    }
  for (VertexId v = 0; v < static_cast<VertexId>(u.cat.vertex_count()); ++v)
    for (VertexId w = v + 1; w < static_cast<VertexId>(u.cat.vertex_count());
         ++w) {
      bool same_kernel = u.vertex_base[v] == u.vertex_base[w];
      bool same_orbit = parts.vertex_orbit[v] == parts.vertex_orbit[w];
      if (same_kernel != same_orbit) {
        if (witness)
          *witness = u.cat.vertex_name(v) + " vs " + u.cat.vertex_name(w);
        return false;
      }
    }
  return true;
}

RoundtripResult verify_roundtrips(const CategoryAction& A, const Transversal& T,
                                  std::uint64_t budget) {
  RoundtripResult out;
  auto trans = is_translative(A, budget);
  if (!trans.ok) throw DomainError(ErrorKind::NotTranslative, trans.witness);

  Representation rep = build_representation(A, T);
  Unfolding u = unfold(rep);
  auto parts = orbits(A);
  const auto& k = A.category;

  // Explicit unfolding witness ([x], g) -> (T-rep of [x])^g and
  // ([a], g) -> (representative starting at the T-rep)^g.
  {
    CatMorphism m;
    m.vmap.assign(u.cat.vertex_count(), kNoVertex);
    m.amap.assign(u.cat.arrow_count(), kNoArrow);
    bool ok = true;
    // Orbit-class arrow with the transversal start, per class.
    std::vector<ArrowId> start_rep(parts.n_arrow_orbits, kNoArrow);
    std::set<VertexId> tset(T.chosen.begin(), T.chosen.end());
    for (int ccls = 0; ccls < parts.n_arrow_orbits; ++ccls)
      for (ArrowId a : parts.arrow_members[ccls])
        if (tset.count(k.src(a))) {
          start_rep[ccls] = a;
          break;
        }
    for (VertexId v = 0; v < static_cast<VertexId>(u.cat.vertex_count());
         ++v) {
      int cls = u.vertex_base[v];  // vertex id in the orbit category == class
      GroupId g = u.vertex_layer[v].idx;
      m.vmap[v] = A.av(g, T.chosen[cls]);
    }
    for (ArrowId a = 0; a < static_cast<ArrowId>(u.cat.arrow_count()); ++a) {
      int cls = u.arrow_base[a];
      GroupId g = u.arrow_layer[a].idx;
      if (start_rep[cls] == kNoArrow) {
        ok = false;
        break;
      }
      m.amap[a] = A.aa(g, start_rep[cls]);
    }
    std::string why;
    if (ok && check_isomorphism(u.cat, k, m, &why)) {
      out.unfold_ok = true;
      out.unfold_witness = m;
    } else {
      auto search = find_isomorphism(u.cat, k, budget);
      if (search.status == SearchStatus::Found) {
        out.unfold_ok = true;
        out.unfold_witness = search.iso;
      } else if (search.status == SearchStatus::Exhausted) {
        throw DomainError(ErrorKind::BudgetExhausted, "unfolding isomorphism");
      } else {
        out.witness = "unfolding not isomorphic to the source: " + why;
      }
    }
  }

  // Refold: orbit category of the unfolding under the induced action,
  // compared against the representation category via the base component.
  {
    CategoryAction ind = induced_action(u);
    OrbitCategory refold = orbit_category(ind);
    CatMorphism m;
    m.vmap.assign(refold.cat.vertex_count(), kNoVertex);
    m.amap.assign(refold.cat.arrow_count(), kNoArrow);
    bool ok = true;
    for (int cls = 0; cls < refold.parts.n_vertex_orbits; ++cls) {
      VertexId member = refold.parts.vertex_members[cls].front();
      m.vmap[cls] = u.vertex_base[member];
    }
    for (int cls = 0; cls < refold.parts.n_arrow_orbits; ++cls) {
      ArrowId member = refold.parts.arrow_members[cls].front();
      ArrowId base = u.arrow_base[member];
      for (ArrowId other : refold.parts.arrow_members[cls])
        if (u.arrow_base[other] != base) ok = false;
      m.amap[cls] = base;
    }
    std::string why;
    if (ok && check_isomorphism(refold.cat, rep.cat, m, &why)) {
      out.refold_ok = true;
      out.refold_witness = m;
    } else {
      auto search = find_isomorphism(refold.cat, rep.cat, budget);
      if (search.status == SearchStatus::Found) {
        out.refold_ok = true;
        out.refold_witness = search.iso;
      } else if (search.status == SearchStatus::Exhausted) {
        throw DomainError(ErrorKind::BudgetExhausted, "refold isomorphism");
      } else {
        out.witness += " refold not isomorphic: " + why;
      }
    }
  }
  return out;
}

}  // namespace orbifold
