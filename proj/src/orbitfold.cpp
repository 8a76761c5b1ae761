#include "orbifold/orbitfold.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbifold {

OrbitCategory orbit_category(const CategoryAction& A) {
  auto foldable = is_foldable(A);
  if (!foldable.ok)
    throw DomainError(ErrorKind::NotFoldable, foldable.witness);

  const auto& c = A.category;
  OrbitCategory out;
  out.parts = orbits(A);

  // Class names: lexicographically least member.
  std::vector<std::string> vnames(out.parts.n_vertex_orbits);
  std::vector<std::string> anames(out.parts.n_arrow_orbits);
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    auto& n = vnames[out.parts.vertex_orbit[v]];
    if (n.empty() || c.vertex_name(v) < n) n = c.vertex_name(v);
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    auto& n = anames[out.parts.arrow_orbit[a]];
    if (n.empty() || c.arrow_name(a) < n) n = c.arrow_name(a);
  }

  CategoryBuilder b;
  for (const auto& n : vnames) b.add_vertex(n);
  for (int k = 0; k < out.parts.n_arrow_orbits; ++k) {
    ArrowId rep = out.parts.arrow_members[k].front();
    b.add_arrow(anames[k], out.parts.vertex_orbit[c.src(rep)],
                out.parts.vertex_orbit[c.dst(rep)]);
  }
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
    b.set_identity(out.parts.vertex_orbit[v],
                   out.parts.arrow_orbit[c.identity(v)]);

  // Composition classes: any composable representative pair decides; by
  // foldability the choice does not matter.
  std::map<std::pair<int, int>, int> comp;
  bool total = true;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    for (ArrowId x : c.arrows_from(c.dst(a))) {
      auto ax = c.compose(a, x);
      if (!ax) continue;
      comp[{out.parts.arrow_orbit[a], out.parts.arrow_orbit[x]}] =
          out.parts.arrow_orbit[*ax];
    }
  for (const auto& [key, val] : comp) b.set_compose(key.first, key.second, val);
  for (int p = 0; p < out.parts.n_arrow_orbits && total; ++p)
    for (int q = 0; q < out.parts.n_arrow_orbits && total; ++q) {
      ArrowId pr = out.parts.arrow_members[p].front();
      ArrowId qr = out.parts.arrow_members[q].front();
      if (out.parts.vertex_orbit[c.dst(pr)] !=
          out.parts.vertex_orbit[c.src(qr)])
        continue;
      bool is_id = c.is_identity(pr) || c.is_identity(qr);
      if (!comp.count({p, q}) && !is_id) total = false;
    }

  out.cat = b.build(/*partial=*/!total || c.partial());
  out.projection.vmap.assign(out.parts.vertex_orbit.begin(),
                             out.parts.vertex_orbit.end());
  out.projection.amap.assign(out.parts.arrow_orbit.begin(),
                             out.parts.arrow_orbit.end());
  return out;
}

Transversal choose_transversal(const CategoryAction& A) {
  auto parts = orbits(A);
  Transversal t;
  t.strategy = "first";
  for (int o = 0; o < parts.n_vertex_orbits; ++o) {
    VertexId best = parts.vertex_members[o].front();
    for (VertexId v : parts.vertex_members[o])
      if (A.category.vertex_name(v) < A.category.vertex_name(best)) best = v;
    t.chosen.push_back(best);
  }
  return t;
}

Transversal choose_transversal(const CategoryAction& A,
                               const std::vector<VertexId>& given) {
  auto parts = orbits(A);
  std::vector<VertexId> per_orbit(parts.n_vertex_orbits, kNoVertex);
  for (VertexId v : given) {
    int o = parts.vertex_orbit[v];
    if (per_orbit[o] != kNoVertex)
      throw DomainError(ErrorKind::GivenSetNotTransversal,
                        "two vertices in orbit of " +
                            A.category.vertex_name(per_orbit[o]) + ": " +
                            A.category.vertex_name(v));
    per_orbit[o] = v;
  }
  for (int o = 0; o < parts.n_vertex_orbits; ++o)
    if (per_orbit[o] == kNoVertex)
      throw DomainError(
          ErrorKind::GivenSetNotTransversal,
          "orbit of " +
              A.category.vertex_name(parts.vertex_members[o].front()) +
              " not covered");
  Transversal t;
  t.chosen = std::move(per_orbit);
  t.strategy = "given";
  return t;
}

GroupId canonical_automorphism(const CategoryAction& A, const Transversal& T,
                               VertexId x) {
  auto semi = is_semiregular(A);
  if (!semi.ok) throw DomainError(ErrorKind::NotSemiRegular, semi.witness);
  auto parts = orbits(A);
  VertexId rep = T.chosen[parts.vertex_orbit[x]];
  for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
    if (A.av(A.group.inv(g), x) == rep) return g;
  throw DomainError(ErrorKind::BadInput,
                    "transversal misses orbit of " + A.category.vertex_name(x));
}

namespace {

std::vector<GroupId> canonical_table(const CategoryAction& A,
                                     const Transversal& T) {
  auto semi = is_semiregular(A);
  if (!semi.ok) throw DomainError(ErrorKind::NotSemiRegular, semi.witness);
  auto parts = orbits(A);
  std::vector<GroupId> g_t(A.category.vertex_count(), -1);
  for (int o = 0; o < parts.n_vertex_orbits; ++o) {
    VertexId rep = T.chosen[o];
    for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
      g_t[A.av(g, rep)] = g;  // x = rep^g  =>  g_T(x) = g
  }
  return g_t;
}

}  // namespace

Annotation natural_annotation_on_source(const CategoryAction& A,
                                        const Transversal& T) {
  auto g_t = canonical_table(A, T);
  Annotation ann;
  ann.group = AnnotationGroup::wrap(A.group);
  const auto& c = A.category;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    GroupId v = A.group.mul(g_t[c.dst(a)], A.group.inv(g_t[c.src(a)]));
    ann.label.push_back(ann.group.from_table_id(v));
  }
  return ann;
}

Annotation natural_annotation(const CategoryAction& A, const Transversal& T) {
  Annotation src = natural_annotation_on_source(A, T);
  auto parts = orbits(A);
  // Constant on every arrow orbit (checked), then transported to the classes.
  Annotation ann;
  ann.group = src.group;
  ann.label.assign(parts.n_arrow_orbits, ann.group.neutral());
  std::vector<char> seen(parts.n_arrow_orbits, 0);
  for (ArrowId a = 0; a < static_cast<ArrowId>(A.category.arrow_count());
       ++a) {
    int k = parts.arrow_orbit[a];
    if (!seen[k]) {
      ann.label[k] = src.label[a];
      seen[k] = 1;
    } else if (!(ann.label[k] == src.label[a])) {
      throw DomainError(ErrorKind::AxiomViolation,
                        "natural annotation not constant on orbit of " +
                            A.category.arrow_name(a));
    }
  }
  return ann;
}

Category transversal_category(const CategoryAction& A, const Transversal& T) {
  auto trans = is_translative(A);
  if (!trans.ok) throw DomainError(ErrorKind::NotTranslative, trans.witness);

  const auto& c = A.category;
  auto parts = orbits(A);
  Annotation src_ann = natural_annotation_on_source(A, T);
  std::set<VertexId> tset(T.chosen.begin(), T.chosen.end());

  CategoryBuilder b;
  std::vector<VertexId> to_sub(c.vertex_count(), kNoVertex);
  for (int o = 0; o < parts.n_vertex_orbits; ++o)
    to_sub[T.chosen[o]] = b.add_vertex(c.vertex_name(T.chosen[o]));

  // Arrows: everything that starts in the transversal; cod_C a is the unique
  // member of (cod a)^G in T (asserted singleton).
  std::vector<ArrowId> to_arrow(c.arrow_count(), kNoArrow);
  std::vector<ArrowId> from_arrow;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    if (!tset.count(c.src(a))) continue;
    VertexId cod_class_rep = T.chosen[parts.vertex_orbit[c.dst(a)]];
    to_arrow[a] =
        b.add_arrow(c.arrow_name(a), to_sub[c.src(a)], to_sub[cod_class_rep]);
    from_arrow.push_back(a);
  }
  for (int o = 0; o < parts.n_vertex_orbits; ++o)
    b.set_identity(to_sub[T.chosen[o]], to_arrow[c.identity(T.chosen[o])]);

  bool partial = c.partial();
  for (ArrowId a : from_arrow)
    for (ArrowId x : from_arrow) {
      if (parts.vertex_orbit[c.dst(a)] != parts.vertex_orbit[c.src(x)])
        continue;
      // Shift x so it starts at cod a, then compose in the parent.
      GroupId g = src_ann.label[a].idx;  // A_T(a) = g_T(cod a)
      ArrowId shifted = A.aa(g, x);
      auto comp = c.compose(a, shifted);
      if (!comp) {
        partial = true;
        continue;
      }
      if (to_arrow[*comp] == kNoArrow)
        throw DomainError(ErrorKind::AxiomViolation,
                          "transversal composition leaves the section at " +
                              c.arrow_name(a) + "*" + c.arrow_name(x));
      b.set_compose(to_arrow[a], to_arrow[x], to_arrow[*comp]);
    }
  return b.build(partial);
}

ValidationReport check_annotation(const Category& cat, const Annotation& ann) {
  ValidationReport rep;
  if (ann.label.size() != cat.arrow_count()) {
    rep.add("annotation-size", "label table does not match arrow count");
    return rep;
  }
  const auto& g = ann.group;
  for (VertexId v = 0; v < static_cast<VertexId>(cat.vertex_count()); ++v)
    if (!g.is_neutral(ann.label[cat.identity(v)]))
      rep.add("annotation-identity", cat.vertex_name(v));
  for (ArrowId a = 0; a < static_cast<ArrowId>(cat.arrow_count()); ++a)
    for (ArrowId b : cat.arrows_from(cat.dst(a))) {
      auto ab = cat.compose(a, b);
      if (!ab) continue;
      if (!(ann.label[*ab] == g.mul(ann.label[b], ann.label[a])))
        rep.add("annotation-contravariance",
                cat.arrow_name(a) + "*" + cat.arrow_name(b) + " -> " +
                    cat.arrow_name(*ab));
    }
  return rep;
}

bool annotation_faithful(const Category& cat, const Annotation& ann) {
  for (VertexId x = 0; x < static_cast<VertexId>(cat.vertex_count()); ++x)
    for (VertexId y = 0; y < static_cast<VertexId>(cat.vertex_count()); ++y) {
      auto hom = cat.hom(x, y);
      std::set<GroupElem> seen;
      for (ArrowId a : hom)
        if (!seen.insert(ann.label[a]).second) return false;
    }
  return true;
}

Representation build_representation(const CategoryAction& A,
                                    const Transversal& T) {
  OrbitCategory oc = orbit_category(A);
  Annotation ann = natural_annotation(A, T);
  auto rep_check = check_annotation(oc.cat, ann);
  if (!rep_check.ok())
    throw DomainError(ErrorKind::AxiomViolation,
                      "natural annotation invalid: " +
                          rep_check.violations.front().law);
  Representation rep;
  rep.cat = std::move(oc.cat);
  rep.ann = std::move(ann);
  rep.faithful = annotation_faithful(rep.cat, rep.ann);
  return rep;
}

}  // namespace orbifold
