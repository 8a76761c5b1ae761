#include "orbifold/rightgroupal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbifold {

VertexId RightGroupal::vertex_of(const GroupElem& e) const {
  for (VertexId v = 0; v < static_cast<VertexId>(vertex_elem.size()); ++v)
    if (vertex_elem[v] == e) return v;
  return kNoVertex;
}

ValidationReport check_right_groupal(const RightGroupal& g) {
  ValidationReport rep = validate_category(g.cat);
  const auto& c = g.cat;
  const auto nv = static_cast<VertexId>(c.vertex_count());
  const auto na = static_cast<ArrowId>(c.arrow_count());

  if (g.neutral_vertex == kNoVertex ||
      !g.vgroup.is_neutral(g.vertex_elem[g.neutral_vertex]))
    rep.add("groupal-neutral", "neutral vertex missing or mislabelled");
  {
    std::set<GroupElem> seen;
    for (VertexId v = 0; v < nv; ++v)
      if (!seen.insert(g.vertex_elem[v]).second)
        rep.add("groupal-embedding", "duplicate element at " + c.vertex_name(v));
  }

  if (g.act.size() != c.arrow_count()) {
    rep.add("groupal-action", "action table size");
    return rep;
  }

  // Action by the neutral vertex is the identity.
  for (ArrowId a = 0; a < na; ++a)
    if (g.act[a][g.neutral_vertex] != a)
      rep.add("action-neutral", c.arrow_name(a));

  // Left-associative action law where the window admits it.
  for (ArrowId a = 0; a < na; ++a)
    for (VertexId u = 0; u < nv; ++u) {
      ArrowId au = g.act[a][u];
      if (au == kNoArrow) continue;
      for (VertexId v = 0; v < nv; ++v) {
        VertexId uv = g.vertex_of(g.vgroup.mul(g.elem(u), g.elem(v)));
        if (uv == kNoVertex) continue;
        ArrowId lhs = g.act[au][v];
        ArrowId rhs = g.act[a][uv];
        if (lhs != kNoArrow && rhs != kNoArrow && lhs != rhs)
          rep.add("action-law", c.arrow_name(a) + " by " + c.vertex_name(u) +
                                    "," + c.vertex_name(v));
      }
    }

  // Each vertex acts as a (partial) automorphism.
  for (ArrowId a = 0; a < na; ++a)
    for (VertexId v = 0; v < nv; ++v) {
      ArrowId av = g.act[a][v];
      if (av == kNoArrow) continue;
      VertexId sv = g.vertex_of(g.vgroup.mul(g.elem(c.src(a)), g.elem(v)));
      VertexId dv = g.vertex_of(g.vgroup.mul(g.elem(c.dst(a)), g.elem(v)));
      if (sv == kNoVertex || dv == kNoVertex || c.src(av) != sv ||
          c.dst(av) != dv)
        rep.add("action-endpoints",
                c.arrow_name(a) + " by " + c.vertex_name(v));
      if (c.is_identity(a) && !c.is_identity(av))
        rep.add("action-identities",
                c.arrow_name(a) + " by " + c.vertex_name(v));
    }
  for (ArrowId a = 0; a < na; ++a)
    for (ArrowId b : c.arrows_from(c.dst(a))) {
      auto ab = c.compose(a, b);
      if (!ab) continue;
      for (VertexId v = 0; v < nv; ++v) {
        ArrowId av = g.act[a][v], bv = g.act[b][v], abv = g.act[*ab][v];
        if (av == kNoArrow || bv == kNoArrow || abv == kNoArrow) continue;
        auto comp = c.compose(av, bv);
        if (comp && *comp != abv)
          rep.add("action-compose", c.arrow_name(a) + "*" + c.arrow_name(b) +
                                        " by " + c.vertex_name(v));
      }
    }

  // Mor(x,y) = Mor(1, y x^-1) . x where the translations stay in the window.
  for (VertexId x = 0; x < nv; ++x)
    for (VertexId y = 0; y < nv; ++y) {
      VertexId w = g.vertex_of(
          g.vgroup.mul(g.elem(y), g.vgroup.inv(g.elem(x))));
      if (w == kNoVertex) continue;
      auto base = c.hom(g.neutral_vertex, w);
      bool all_defined = true;
      std::set<ArrowId> translated;
      for (ArrowId l : base) {
        ArrowId t = g.act[l][x];
        if (t == kNoArrow) {
          all_defined = false;
          break;
        }
        translated.insert(t);
      }
      if (!all_defined) continue;
      auto homxy = c.hom(x, y);
      if (translated != std::set<ArrowId>(homxy.begin(), homxy.end()))
        rep.add("hom-translation",
                "Mor(" + c.vertex_name(x) + "," + c.vertex_name(y) + ")");
    }
  return rep;
}

RightGroupal vertex_category(const CategoryAction& A, VertexId x,
                             std::uint64_t budget) {
  auto trans = is_translative(A, budget);
  if (!trans.ok) throw DomainError(ErrorKind::NotTranslative, trans.witness);

  std::vector<VertexId> orbit;
  for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
    orbit.push_back(A.av(g, x));
  std::sort(orbit.begin(), orbit.end());
  Subcategory sub = full_subcategory(A.category, orbit);

  RightGroupal out;
  out.cat = sub.cat;
  out.vgroup = AnnotationGroup::wrap(A.group);
  out.vertex_elem.resize(sub.vertex_to_parent.size());
  for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g) {
    VertexId v = sub.vertex_from_parent[A.av(g, x)];
    out.vertex_elem[v] = out.vgroup.from_table_id(g);
  }
  out.neutral_vertex = sub.vertex_from_parent[x];
  out.act.assign(out.cat.arrow_count(), {});
  for (ArrowId a = 0; a < static_cast<ArrowId>(out.cat.arrow_count()); ++a) {
    out.act[a].assign(out.cat.vertex_count(), kNoArrow);
    ArrowId pa = sub.arrow_to_parent[a];
    for (VertexId v = 0; v < static_cast<VertexId>(out.cat.vertex_count());
         ++v) {
      GroupId g = out.vertex_elem[v].idx;
      out.act[a][v] = sub.arrow_from_parent[A.aa(g, pa)];
    }
  }
  return out;
}

RightGroupal shift_neutral(const RightGroupal& g, VertexId a) {
  RightGroupal out;
  out.cat = g.cat;
  out.vgroup = g.vgroup;
  out.neutral_vertex = a;
  GroupElem inv_a = g.vgroup.inv(g.elem(a));
  out.vertex_elem.resize(g.vertex_elem.size());
  for (VertexId v = 0; v < static_cast<VertexId>(g.vertex_elem.size()); ++v)
    out.vertex_elem[v] = g.vgroup.mul(inv_a, g.elem(v));
  // Acting by v in the shifted structure is acting by a^-1 v in the old one.
  out.act.assign(g.cat.arrow_count(), {});
  for (ArrowId l = 0; l < static_cast<ArrowId>(g.cat.arrow_count()); ++l) {
    out.act[l].assign(g.cat.vertex_count(), kNoArrow);
    for (VertexId v = 0; v < static_cast<VertexId>(g.cat.vertex_count());
         ++v) {
      VertexId old = g.vertex_of(out.vertex_elem[v]);
      if (old != kNoVertex) out.act[l][v] = g.act[l][old];
    }
  }
  return out;
}

bool cone_nonneg(const AnnotationGroup& group, const GroupElem& e) {
  for (int i = 0; i < group.free_rank(); ++i)
    if (e.vec[i] < 0) return false;
  for (std::size_t i = 0; i < group.torsion().size(); ++i)
    if (e.vec[group.free_rank() + i] != 0) return false;
  return true;
}

RightGroupal pogroup_window(const AnnotationGroup& group,
                            const std::vector<GroupElem>& window) {
  if (group.kind() != AnnotationGroup::Kind::FgAbelian)
    throw DomainError(ErrorKind::BadInput, "po-group windows are fg-abelian");
  RightGroupal out;
  out.vgroup = group;
  std::vector<GroupElem> elems = window;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

  CategoryBuilder b;
  for (const auto& e : elems) b.add_vertex(group.to_string(e));
  out.vertex_elem = elems;
  out.neutral_vertex = kNoVertex;
  for (VertexId v = 0; v < static_cast<VertexId>(elems.size()); ++v)
    if (group.is_neutral(elems[v])) out.neutral_vertex = v;
  if (out.neutral_vertex == kNoVertex)
    throw DomainError(ErrorKind::BadInput, "window must contain the neutral element");

  std::map<std::pair<VertexId, VertexId>, ArrowId> arrow_at;
  for (VertexId u = 0; u < static_cast<VertexId>(elems.size()); ++u)
    for (VertexId w = 0; w < static_cast<VertexId>(elems.size()); ++w) {
      GroupElem d = group.mul(elems[w], group.inv(elems[u]));
      if (!cone_nonneg(group, d)) continue;
      ArrowId a;
      if (u == w) {
        a = b.add_arrow("id:" + group.to_string(elems[u]), u, w);
        b.set_identity(u, a);
      } else {
        a = b.add_arrow("go:" + group.to_string(elems[u]) + ">" +
                            group.to_string(elems[w]),
                        u, w);
      }
      arrow_at[{u, w}] = a;
    }
  for (const auto& [uw1, a1] : arrow_at)
    for (const auto& [uw2, a2] : arrow_at) {
      if (uw1.second != uw2.first) continue;
      b.set_compose(a1, a2, arrow_at.at({uw1.first, uw2.second}));
    }
  out.cat = b.build(/*partial=*/false);

  out.act.assign(out.cat.arrow_count(), {});
  for (const auto& [uw, a] : arrow_at) {
    out.act[a].assign(out.cat.vertex_count(), kNoArrow);
    for (VertexId v = 0; v < static_cast<VertexId>(elems.size()); ++v) {
      VertexId u2 = out.vertex_of(group.mul(elems[uw.first], elems[v]));
      VertexId w2 = out.vertex_of(group.mul(elems[uw.second], elems[v]));
      if (u2 == kNoVertex || w2 == kNoVertex) continue;
      out.act[a][v] = arrow_at.at({u2, w2});
    }
  }
  return out;
}

LoopOrbitCategory loop_orbit_category(const RightGroupal& g) {
  LoopOrbitCategory out;
  const auto& c = g.cat;
  CategoryBuilder b;
  VertexId one = b.add_vertex("1");
  out.from_g.assign(c.arrow_count(), kNoArrow);
  for (ArrowId a : c.arrows_from(g.neutral_vertex)) {
    ArrowId l = b.add_arrow(c.arrow_name(a), one, one);
    out.to_g.push_back(a);
    out.from_g[a] = l;
  }
  b.set_identity(one, out.from_g[c.identity(g.neutral_vertex)]);

  // l1 * l2 := l1 *_G (l2 . cod l1), which again starts at the neutral vertex.
  bool missing = false;
  for (std::size_t i = 0; i < out.to_g.size(); ++i)
    for (std::size_t j = 0; j < out.to_g.size(); ++j) {
      ArrowId l1 = out.to_g[i], l2 = out.to_g[j];
      ArrowId shifted = g.act[l2][c.dst(l1)];
      if (shifted == kNoArrow) {
        missing = true;
        continue;
      }
      auto comp = c.compose(l1, shifted);
      if (!comp) {
        missing = true;
        continue;
      }
      ArrowId res = out.from_g[*comp];
      if (res == kNoArrow) {
        missing = true;
        continue;
      }
      b.set_compose(static_cast<ArrowId>(i), static_cast<ArrowId>(j), res);
    }
  out.cat = b.build(/*partial=*/missing || g.cat.partial());
  return out;
}

GroupElem loop_diff(const RightGroupal& g, const LoopOrbitCategory& loops,
                    ArrowId loop_arrow) {
  return g.elem(g.cat.dst(loops.to_g[loop_arrow]));
}

ArrowId loop_of_diff(const RightGroupal& g, const LoopOrbitCategory& loops,
                     const GroupElem& diff) {
  for (ArrowId l = 0; l < static_cast<ArrowId>(loops.to_g.size()); ++l)
    if (loop_diff(g, loops, l) == diff) return l;
  return kNoArrow;
}

}  // namespace orbifold
