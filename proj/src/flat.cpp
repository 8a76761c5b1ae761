#include "orbifold/flat.hpp"

#include <algorithm>
#include <set>

namespace orbifold {

IrreducibleResult irreducible_arrows(const Category& k) {
  IrreducibleResult res;
  const auto na = static_cast<ArrowId>(k.arrow_count());
  res.irreducible.assign(na, 1);
  for (ArrowId a = 0; a < na; ++a) {
    for (ArrowId b : k.hom(k.src(a), k.dst(a))) {
      for (ArrowId y : k.hom(k.dst(a), k.dst(a))) {
        if (k.is_identity(y)) continue;
        auto by = k.compose(b, y);
        if (by && *by == a) {
          res.irreducible[a] = 0;
          goto next_arrow;
        }
      }
    }
  next_arrow:;
  }

  res.representable = true;
  res.unique = true;
  for (ArrowId a = 0; a < na; ++a) {
    int count = 0;
    for (ArrowId b : k.hom(k.src(a), k.dst(a))) {
      if (!res.irreducible[b]) continue;
      for (ArrowId y : k.hom(k.dst(a), k.dst(a))) {
        auto by = k.compose(b, y);
        if (by && *by == a) ++count;
      }
    }
    if (count == 0) {
      res.representable = false;
      res.witness = "no irreducible*loop factorisation of " + k.arrow_name(a);
    } else if (count > 1 && res.unique) {
      res.unique = false;
      res.witness = "ambiguous factorisation of " + k.arrow_name(a);
    }
  }
  if (!res.representable) res.unique = false;
  return res;
}

FlatData r_n_maps(const Category& k) {
  IrreducibleResult irr = irreducible_arrows(k);
  if (!irr.unique)
    throw DomainError(ErrorKind::NotUniquelyRepresentable, irr.witness);
  FlatData data;
  const auto na = static_cast<ArrowId>(k.arrow_count());
  data.r.assign(na, kNoArrow);
  data.n.assign(na, kNoArrow);
  for (ArrowId a = 0; a < na; ++a) {
    for (ArrowId b : k.hom(k.src(a), k.dst(a))) {
      if (!irr.irreducible[b]) continue;
      for (ArrowId y : k.hom(k.dst(a), k.dst(a))) {
        auto by = k.compose(b, y);
        if (by && *by == a) {
          data.r[a] = b;
          data.n[a] = y;
        }
      }
    }
  }
  return data;
}

FlatOrbit flat_orbit_category(const Category& k) {
  FlatData data = r_n_maps(k);
  IrreducibleResult irr = irreducible_arrows(k);

  FlatOrbit out;
  CategoryBuilder b;
  for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
    b.add_vertex(k.vertex_name(v));
  out.from_parent.assign(k.arrow_count(), kNoArrow);
  std::vector<ArrowId> flat_of(k.arrow_count(), kNoArrow);
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a) {
    if (!irr.irreducible[a]) continue;
    flat_of[a] = b.add_arrow(k.arrow_name(a), k.src(a), k.dst(a));
    out.to_parent.push_back(a);
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    out.from_parent[a] = flat_of[data.r[a]];
  for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
    b.set_identity(v, flat_of[k.identity(v)]);

  bool partial = false;
  for (ArrowId x : out.to_parent)
    for (ArrowId y : out.to_parent) {
      if (k.dst(x) != k.src(y)) continue;
      auto xy = k.compose(x, y);
      if (!xy) {
        partial = true;
        continue;
      }
      b.set_compose(flat_of[x], flat_of[y], flat_of[data.r[*xy]]);
    }
  out.cat = b.build(partial);
  auto report = validate_category(out.cat);
  if (!report.ok())
    throw DomainError(ErrorKind::AxiomViolation,
                      "flat orbit category invalid: " +
                          report.violations.front().law + " " +
                          report.violations.front().witness);
  return out;
}

std::map<std::pair<ArrowId, ArrowId>, ArrowId> n_hat(const Category& k) {
  FlatData data = r_n_maps(k);
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> out;
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId b : k.arrows_from(k.dst(a))) {
      auto ab = k.compose(a, b);
      if (ab) out[{a, b}] = data.n[*ab];
    }
  return out;
}

OrbitCTable derive_C(const CategoryAction& A, std::uint64_t budget) {
  RightNormalResult rn = is_right_normal(A, budget);
  if (!rn.ok) throw DomainError(ErrorKind::NotRightNormal, rn.witness);

  OrbitCategory oc = orbit_category(A);
  const auto& k = A.category;
  const auto& q = oc.cat;
  OrbitCTable out;

  // Deterministic class representatives (least arrow name).
  std::vector<ArrowId> rep_of(oc.parts.n_arrow_orbits, kNoArrow);
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a) {
    ArrowId& r = rep_of[oc.parts.arrow_orbit[a]];
    if (r == kNoArrow || k.arrow_name(a) < k.arrow_name(r)) r = a;
  }

  for (ArrowId alpha = 0; alpha < static_cast<ArrowId>(q.arrow_count());
       ++alpha) {
    ArrowId a_hat = rep_of[alpha];
    VertexId dom_cls = q.src(alpha);
    for (ArrowId lambda : q.hom(dom_cls, dom_cls)) {
      // Unique member of the loop class ending at dom a_hat.
      ArrowId x_hat = kNoArrow;
      for (ArrowId m : oc.parts.arrow_members[lambda])
        if (k.dst(m) == k.src(a_hat)) {
          x_hat = m;
          break;
        }
      if (x_hat == kNoArrow) {
        out.witness = "loop class " + q.arrow_name(lambda) +
                      " has no member ending at dom " + k.arrow_name(a_hat);
        return out;
      }
      auto it = rn.cprime.find({a_hat, x_hat});
      if (it == rn.cprime.end()) {
        out.witness = "missing C' witness for (" + k.arrow_name(a_hat) + "," +
                      k.arrow_name(x_hat) + ")";
        return out;
      }
      ArrowId c_cls = oc.parts.arrow_orbit[it->second.second];
      out.table[{alpha, lambda}] = c_cls;
      // eq: x^G * a^G = a^G * C(a^G, x^G), plus C(a, id) = id.
      auto lhs = q.compose(lambda, alpha);
      auto rhs = q.compose(alpha, c_cls);
      if (!lhs || !rhs || *lhs != *rhs) {
        out.witness = "C table fails commuting law at (" + q.arrow_name(alpha) +
                      "," + q.arrow_name(lambda) + ")";
        return out;
      }
      if (q.is_identity(lambda) && !q.is_identity(c_cls)) {
        out.witness = "C(a, id) != id at " + q.arrow_name(alpha);
        return out;
      }
    }
  }

  // Lemma "phi_a is a homomorphism where s_a is injective", asserted on the
  // orbit category.
  for (ArrowId alpha = 0; alpha < static_cast<ArrowId>(q.arrow_count());
       ++alpha) {
    VertexId dom_cls = q.src(alpha);
    auto loops = q.hom(dom_cls, dom_cls);
    std::set<ArrowId> composites;
    bool injective = true;
    for (ArrowId y : q.hom(q.dst(alpha), q.dst(alpha))) {
      auto ay = q.compose(alpha, y);
      if (!ay) continue;
      if (!composites.insert(*ay).second) injective = false;
    }
    if (!injective) continue;
    for (ArrowId x1 : loops)
      for (ArrowId x2 : loops) {
        auto x12 = q.compose(x1, x2);
        if (!x12) continue;
        auto p1 = out.table.find({alpha, x1});
        auto p2 = out.table.find({alpha, x2});
        auto p12 = out.table.find({alpha, *x12});
        if (p1 == out.table.end() || p2 == out.table.end() ||
            p12 == out.table.end())
          continue;
        auto comp = q.compose(p1->second, p2->second);
        if (!comp || *comp != p12->second) {
          out.witness = "phi_a not a homomorphism at " + q.arrow_name(alpha);
          return out;
        }
      }
  }
  out.ok = true;
  return out;
}

namespace {

std::optional<ArrowId> gloops_compose3(const Category& gl, ArrowId a, ArrowId b,
                                       ArrowId c) {
  auto ab = gl.compose(a, b);
  if (!ab) return std::nullopt;
  return gl.compose(*ab, c);
}

}  // namespace

ValidationReport check_extension_axioms(const Category& k, const LoopMap2& n,
                                        const LoopMap2& c,
                                        const Category& gloops) {
  ValidationReport rep;
  if (gloops.vertex_count() != 1)
    rep.add("gloops", "loop category must have a single vertex");
  ArrowId gid = gloops.identity(0);

  auto nval = [&](ArrowId a, ArrowId b) -> std::optional<ArrowId> {
    auto it = n.find({a, b});
    if (it == n.end()) return std::nullopt;
    return it->second;
  };
  auto cval = [&](ArrowId a, ArrowId x) -> std::optional<ArrowId> {
    auto it = c.find({a, x});
    if (it == c.end()) return std::nullopt;
    return it->second;
  };

  // eq (46): n on identity pairs is the identity loop; C(a, id) = id.
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a) {
    auto right = nval(a, k.identity(k.dst(a)));
    auto left = nval(k.identity(k.src(a)), a);
    if (!right || *right != gid)
      rep.add("eq46", "n(" + k.arrow_name(a) + ", id)");
    if (!left || *left != gid)
      rep.add("eq46", "n(id, " + k.arrow_name(a) + ")");
    auto ci = cval(a, gid);
    if (!ci || *ci != gid) rep.add("eq36", "C(" + k.arrow_name(a) + ", id)");
  }

  // eq (44): C(a, x*y) = C(a,x) * C(a,y).
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId x = 0; x < static_cast<ArrowId>(gloops.arrow_count()); ++x)
      for (ArrowId y = 0; y < static_cast<ArrowId>(gloops.arrow_count());
           ++y) {
        auto xy = gloops.compose(x, y);
        if (!xy) continue;
        auto lhs = cval(a, *xy);
        auto cx = cval(a, x);
        auto cy = cval(a, y);
        if (!lhs || !cx || !cy) continue;
        auto rhs = gloops.compose(*cx, *cy);
        if (!rhs) continue;
        if (*lhs != *rhs)
          rep.add("eq44", "C(" + k.arrow_name(a) + ", " +
                              gloops.arrow_name(x) + "*" +
                              gloops.arrow_name(y) + ")");
      }

  // eq (43): n(a, b.c) * n(b, c) = n(a.b, c) * C(c, n(a,b)).
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId b : k.arrows_from(k.dst(a))) {
      auto ab = k.compose(a, b);
      if (!ab) continue;
      for (ArrowId cc : k.arrows_from(k.dst(b))) {
        auto bc = k.compose(b, cc);
        auto abc = k.compose(*ab, cc);
        if (!bc || !abc) continue;
        auto n_a_bc = nval(a, *bc);
        auto n_b_c = nval(b, cc);
        auto n_ab_c = nval(*ab, cc);
        auto n_a_b = nval(a, b);
        if (!n_a_bc || !n_b_c || !n_ab_c || !n_a_b) continue;
        auto c_c_nab = cval(cc, *n_a_b);
        if (!c_c_nab) continue;
        auto lhs = gloops.compose(*n_a_bc, *n_b_c);
        auto rhs = gloops.compose(*n_ab_c, *c_c_nab);
        if (!lhs || !rhs) continue;
        if (*lhs != *rhs)
          rep.add("eq43", k.arrow_name(a) + "," + k.arrow_name(b) + "," +
                              k.arrow_name(cc));
      }
    }

  // eq (45): C(a.b, x) * n(a,b) = n(a,b) * C(b, C(a,x)).
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId b : k.arrows_from(k.dst(a))) {
      auto ab = k.compose(a, b);
      if (!ab) continue;
      auto n_a_b = nval(a, b);
      if (!n_a_b) continue;
      for (ArrowId x = 0; x < static_cast<ArrowId>(gloops.arrow_count());
           ++x) {
        auto c_ab_x = cval(*ab, x);
        auto c_a_x = cval(a, x);
        if (!c_ab_x || !c_a_x) continue;
        auto c_b_cax = cval(b, *c_a_x);
        if (!c_b_cax) continue;
        auto lhs = gloops.compose(*c_ab_x, *n_a_b);
        auto rhs = gloops.compose(*n_a_b, *c_b_cax);
        if (!lhs || !rhs) continue;
        if (*lhs != *rhs)
          rep.add("eq45", k.arrow_name(a) + "," + k.arrow_name(b) + "," +
                              gloops.arrow_name(x));
      }
    }
  return rep;
}

SingletonExtension singleton_extension(const Category& k, const LoopMap2& n,
                                       const LoopMap2& c,
                                       const Category& gloops) {
  auto axioms = check_extension_axioms(k, n, c, gloops);
  if (!axioms.ok())
    throw DomainError(ErrorKind::AxiomViolation,
                      axioms.violations.front().law + " at " +
                          axioms.violations.front().witness);

  SingletonExtension out;
  CategoryBuilder b;
  for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
    b.add_vertex(k.vertex_name(v));
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId x = 0; x < static_cast<ArrowId>(gloops.arrow_count()); ++x) {
      ArrowId e = b.add_arrow(k.arrow_name(a) + "|" + gloops.arrow_name(x),
                              k.src(a), k.dst(a));
      out.arrow_pair.push_back({a, x});
      out.pair_to_ext[{a, x}] = e;
    }
  for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
    b.set_identity(v, out.pair_to_ext.at({k.identity(v), gloops.identity(0)}));

  bool partial = k.partial() || gloops.partial();
  for (ArrowId e1 = 0; e1 < static_cast<ArrowId>(out.arrow_pair.size());
       ++e1) {
    auto [a, x] = out.arrow_pair[e1];
    for (ArrowId e2 = 0; e2 < static_cast<ArrowId>(out.arrow_pair.size());
         ++e2) {
      auto [bb, y] = out.arrow_pair[e2];
      if (k.dst(a) != k.src(bb)) continue;
      auto ab = k.compose(a, bb);
      auto itn = n.find({a, bb});
      auto itc = c.find({bb, x});
      if (!ab || itn == n.end() || itc == c.end()) {
        partial = true;
        continue;
      }
      auto loop = gloops_compose3(gloops, itn->second, itc->second, y);
      if (!loop) {
        partial = true;
        continue;
      }
      b.set_compose(e1, e2, out.pair_to_ext.at({*ab, *loop}));
    }
  }
  out.ext = b.build(partial);

  auto report = validate_category(out.ext);
  if (!report.ok())
    throw DomainError(ErrorKind::AxiomViolation,
                      "extension-category: " + report.violations.front().law +
                          " " + report.violations.front().witness);

  // eq (47) sanity: (id, x) * (a, id) = (a, C(a, x)).
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId x = 0; x < static_cast<ArrowId>(gloops.arrow_count()); ++x) {
      auto itc = c.find({a, x});
      if (itc == c.end()) continue;
      auto lhs = out.ext.compose(
          out.pair_to_ext.at({k.identity(k.src(a)), x}),
          out.pair_to_ext.at({a, gloops.identity(0)}));
      if (lhs && *lhs != out.pair_to_ext.at({a, itc->second}))
        throw DomainError(ErrorKind::AxiomViolation,
                          "eq47 at " + k.arrow_name(a) + "," +
                              gloops.arrow_name(x));
    }
  return out;
}

ValidationReport check_flat_rep(const FlatRep& f) {
  ValidationReport rep = validate_category(f.base);
  {
    auto ax = check_extension_axioms(f.base, f.n_map, f.c_map, f.gloops.cat);
    rep.violations.insert(rep.violations.end(), ax.violations.begin(),
                          ax.violations.end());
  }
  {
    auto rg = check_right_groupal(f.G);
    rep.violations.insert(rep.violations.end(), rg.violations.begin(),
                          rg.violations.end());
  }
  const auto& vg = f.G.vgroup;
  const auto& k = f.base;
  if (f.ann.label.size() != k.arrow_count()) {
    rep.add("flat-annotation", "label table size");
    return rep;
  }
  auto diff = [&](ArrowId loop) { return loop_diff(f.G, f.gloops, loop); };

  for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
    if (!vg.is_neutral(f.ann.label[k.identity(v)]))
      rep.add("flat-annotation-identity", k.vertex_name(v));

  // eq (42): A'(a, x) = A'(id_cod a, x) A'(a, id), with A'(a,x) = diff(x) A(a).
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId x = 0; x < static_cast<ArrowId>(f.gloops.cat.arrow_count());
         ++x) {
      GroupElem lhs = vg.mul(diff(x), f.ann.label[a]);
      GroupElem rhs = vg.mul(vg.mul(diff(x), f.ann.label[k.identity(k.dst(a))]),
                             f.ann.label[a]);
      if (!(lhs == rhs)) {
        rep.add("eq42", k.arrow_name(a) + "," + f.gloops.cat.arrow_name(x));
        break;
      }
    }

  // eq (34): diff(n(a,b)) = A(b) A(a) A(a.b)^-1.
  for (const auto& [key, loop] : f.n_map) {
    auto ab = k.compose(key.first, key.second);
    if (!ab) continue;
    GroupElem lhs = diff(loop);
    GroupElem rhs = vg.mul(vg.mul(f.ann.label[key.second],
                                  f.ann.label[key.first]),
                           vg.inv(f.ann.label[*ab]));
    if (!(lhs == rhs))
      rep.add("eq34",
              k.arrow_name(key.first) + "," + k.arrow_name(key.second));
  }

  // eq (48): A(b) diff(x) = diff(C(b,x)) A(b).
  for (const auto& [key, loop] : f.c_map) {
    GroupElem lhs = vg.mul(f.ann.label[key.first], diff(key.second));
    GroupElem rhs = vg.mul(diff(loop), f.ann.label[key.first]);
    if (!(lhs == rhs))
      rep.add("eq48", k.arrow_name(key.first) + "," +
                          f.gloops.cat.arrow_name(key.second));
  }
  return rep;
}

Representation extension_representation(const FlatRep& f,
                                        const SingletonExtension& e) {
  Representation rep;
  rep.cat = e.ext;
  rep.ann.group = f.G.vgroup;
  rep.ann.label.resize(e.ext.arrow_count());
  for (ArrowId a = 0; a < static_cast<ArrowId>(e.ext.arrow_count()); ++a) {
    auto [base, loop] = e.arrow_pair[a];
    rep.ann.label[a] = f.G.vgroup.mul(loop_diff(f.G, f.gloops, loop),
                                      f.ann.label[base]);
  }
  rep.faithful = annotation_faithful(rep.cat, rep.ann);
  return rep;
}

FlatRep flat_rep_from_orbit(const CategoryAction& A, const Transversal& T,
                            VertexId x, std::uint64_t budget) {
  RightNormalResult rn = is_right_normal(A, budget);
  if (!rn.ok) throw DomainError(ErrorKind::NotRightNormal, rn.witness);
  TranslativeResult trans = is_translative(A, budget);

  OrbitCategory oc = orbit_category(A);
  Representation rep = build_representation(A, T);
  FlatOrbit fl = flat_orbit_category(oc.cat);
  auto nh = n_hat(oc.cat);
  OrbitCTable ct = derive_C(A, budget);
  if (!ct.ok) throw DomainError(ErrorKind::NotRightNormal, ct.witness);

  FlatRep out;
  out.G = vertex_category(A, x, budget);
  out.gloops = loop_orbit_category(out.G);
  out.pogroup_style = false;

  const auto& k = A.category;
  int ox = oc.parts.vertex_orbit[x];

  // Subcategory carrying G (for arrow id translation).
  std::vector<VertexId> x_orbit;
  for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
    x_orbit.push_back(A.av(g, x));
  std::sort(x_orbit.begin(), x_orbit.end());
  Subcategory gsub = full_subcategory(k, x_orbit);

  // Unique shift g with v^g = w inside one orbit.
  auto shift = [&](VertexId v, VertexId w) -> GroupId {
    for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
      if (A.av(g, v) == w) return g;
    throw DomainError(ErrorKind::BadInput, "vertices not in one orbit");
  };

  // Transport of an arrow of <v^G> into <x^G> via the translative witness,
  // then normalisation so the image starts at x.
  auto transport_to_gx = [&](ArrowId m, int cls) -> ArrowId {
    ArrowId in_gx = kNoArrow;
    if (cls == ox) {
      in_gx = m;
    } else if (cls < ox) {
      in_gx = trans.witnesses.at({cls, ox}).amap.at(m);
    } else {
      const auto& wmap = trans.witnesses.at({ox, cls}).amap;
      for (const auto& [from, to] : wmap)
        if (to == m) {
          in_gx = from;
          break;
        }
      if (in_gx == kNoArrow)
        throw DomainError(ErrorKind::NotTranslative,
                          "witness not surjective at " + k.arrow_name(m));
    }
    GroupId g = shift(k.src(in_gx), x);
    ArrowId normalised = A.aa(g, in_gx);
    ArrowId sub = gsub.arrow_from_parent[normalised];
    ArrowId loop = out.gloops.from_g[sub];
    if (loop == kNoArrow)
      throw DomainError(ErrorKind::NotTranslative,
                        "transported arrow does not start at the base vertex");
    return loop;
  };

  // Per vertex class: orbit loop class <-> gloops arrow.
  std::vector<std::map<ArrowId, ArrowId>> loop_to_gl(oc.parts.n_vertex_orbits);
  std::vector<std::map<ArrowId, ArrowId>> gl_to_loop(oc.parts.n_vertex_orbits);
  for (int cls = 0; cls < oc.parts.n_vertex_orbits; ++cls) {
    VertexId v = T.chosen[cls];
    for (ArrowId lambda : oc.cat.hom(cls, cls)) {
      ArrowId member = kNoArrow;
      for (ArrowId m : oc.parts.arrow_members[lambda])
        if (k.src(m) == v) {
          member = m;
          break;
        }
      if (member == kNoArrow)
        throw DomainError(ErrorKind::NotSemiRegular,
                          "loop class without member at the transversal");
      ArrowId gl = transport_to_gx(member, cls);
      loop_to_gl[cls][lambda] = gl;
      gl_to_loop[cls][gl] = lambda;
    }
    if (gl_to_loop[cls].size() != out.gloops.to_g.size())
      throw DomainError(ErrorKind::NotTranslative,
                        "loop transport not bijective for class " +
                            oc.cat.vertex_name(cls));
  }

  out.base = fl.cat;
  out.ann.group = rep.ann.group;
  out.ann.label.resize(fl.cat.arrow_count());
  for (ArrowId fa = 0; fa < static_cast<ArrowId>(fl.cat.arrow_count()); ++fa)
    out.ann.label[fa] = rep.ann.label[fl.to_parent[fa]];

  for (ArrowId fa = 0; fa < static_cast<ArrowId>(fl.cat.arrow_count()); ++fa)
    for (ArrowId fb = 0; fb < static_cast<ArrowId>(fl.cat.arrow_count());
         ++fb) {
      if (fl.cat.dst(fa) != fl.cat.src(fb)) continue;
      ArrowId pa = fl.to_parent[fa], pb = fl.to_parent[fb];
      auto it = nh.find({pa, pb});
      if (it == nh.end()) continue;
      int cls = oc.cat.dst(pb);
      out.n_map[{fa, fb}] = loop_to_gl[cls].at(it->second);
    }

  for (ArrowId fa = 0; fa < static_cast<ArrowId>(fl.cat.arrow_count()); ++fa) {
    ArrowId pa = fl.to_parent[fa];
    int dom_cls = oc.cat.src(pa);
    int cod_cls = oc.cat.dst(pa);
    for (const auto& [gl, lambda] : gl_to_loop[dom_cls]) {
      auto it = ct.table.find({pa, lambda});
      if (it == ct.table.end()) continue;
      out.c_map[{fa, gl}] = loop_to_gl[cod_cls].at(it->second);
    }
  }

  auto report = check_flat_rep(out);
  if (!report.ok())
    throw DomainError(ErrorKind::AxiomViolation,
                      "flat representation invalid: " +
                          report.violations.front().law + " " +
                          report.violations.front().witness);
  return out;
}

FlatUnfolding unfold_flat(const FlatRep& f, std::vector<GroupElem> layers,
                          const std::map<VertexId, GroupElem>* layer_offset) {
  const auto& vg = f.G.vgroup;
  const auto& k = f.base;
  auto offset_of = [&](VertexId v) {
    if (!layer_offset) return vg.neutral();
    auto it = layer_offset->find(v);
    return it == layer_offset->end() ? vg.neutral() : it->second;
  };

  FlatUnfolding out;
  CategoryBuilder b;
  std::map<std::pair<VertexId, GroupElem>, VertexId> vindex;
  auto add_vertex = [&](VertexId v, const GroupElem& e) {
    if (vindex.count({v, e})) return;
    VertexId nv = b.add_vertex(k.vertex_name(v) + "@" + vg.to_string(e));
    vindex[{v, e}] = nv;
    out.vertex_base.push_back(v);
    out.vertex_layer.push_back(e);
  };

  // Arrows are indexed by (base arrow, dom layer, cod layer); for explicit
  // non-simple G a parallel index per G-arrow disambiguates.
  std::map<std::tuple<ArrowId, GroupElem, GroupElem>, ArrowId> aindex;
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> gindex;  // explicit kind
  std::vector<ArrowId> arrow_gamma;                       // explicit kind
  auto add_arrow = [&](ArrowId base, const GroupElem& from, const GroupElem& to,
                       const std::string& suffix, ArrowId gamma) {
    ArrowId na = b.add_arrow(k.arrow_name(base) + "|" + suffix,
                             vindex.at({k.src(base), from}),
                             vindex.at({k.dst(base), to}));
    out.arrow_base.push_back(base);
    out.arrow_from_layer.push_back(from);
    out.arrow_to_layer.push_back(to);
    arrow_gamma.push_back(gamma);
    aindex[{base, from, to}] = na;
    if (gamma != kNoArrow) gindex[{base, gamma}] = na;
    return na;
  };

  bool partial = k.partial();

  if (f.pogroup_style) {
    if (layers.empty())
      throw DomainError(ErrorKind::InfiniteGroup,
                        "layer window required for po-group style G");
    partial = true;
    for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
      for (const auto& l : layers) add_vertex(v, vg.mul(l, offset_of(v)));

    // One arrow per (a, g, w) with w - A(a) g in the nonnegative cone.
    for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
      for (const auto& lg : layers)
        for (const auto& lw : layers) {
          GroupElem g = vg.mul(lg, offset_of(k.src(a)));
          GroupElem w = vg.mul(lw, offset_of(k.dst(a)));
          GroupElem diff = vg.mul(w, vg.inv(vg.mul(f.ann.label[a], g)));
          if (!cone_nonneg(vg, diff)) continue;
          add_arrow(a, g, w, vg.to_string(g) + ">" + vg.to_string(w), kNoArrow);
        }
    for (const auto& [key, nv] : vindex)
      b.set_identity(nv, aindex.at({k.identity(key.first), key.second,
                                    key.second}));

    for (ArrowId e1 = 0; e1 < static_cast<ArrowId>(out.arrow_base.size());
         ++e1)
      for (ArrowId e2 = 0; e2 < static_cast<ArrowId>(out.arrow_base.size());
           ++e2) {
        ArrowId a = out.arrow_base[e1], bb = out.arrow_base[e2];
        if (k.dst(a) != k.src(bb)) continue;
        if (!(out.arrow_to_layer[e1] == out.arrow_from_layer[e2])) continue;
        auto ab = k.compose(a, bb);
        if (!ab) {
          partial = true;
          continue;
        }
        auto itn = f.n_map.find({a, bb});
        GroupElem gamma_diff = vg.mul(
            out.arrow_to_layer[e1],
            vg.inv(vg.mul(f.ann.label[a], out.arrow_from_layer[e1])));
        ArrowId gcls = loop_of_diff(f.G, f.gloops, gamma_diff);
        if (itn == f.n_map.end() || gcls == kNoArrow) {
          partial = true;
          continue;
        }
        auto itc = f.c_map.find({bb, gcls});
        if (itc == f.c_map.end()) {
          partial = true;
          continue;
        }
        // The composite is fixed by its endpoint layers; the loop arithmetic
        // n * C(b, cls gamma) * delta must reach the same end.
        GroupElem delta_diff = vg.mul(
            out.arrow_to_layer[e2],
            vg.inv(vg.mul(f.ann.label[bb], out.arrow_from_layer[e2])));
        GroupElem loops = vg.mul(
            vg.mul(loop_diff(f.G, f.gloops, itn->second),
                   loop_diff(f.G, f.gloops, itc->second)),
            delta_diff);
        GroupElem start =
            vg.mul(f.ann.label[*ab], out.arrow_from_layer[e1]);
        if (!(vg.mul(loops, start) == out.arrow_to_layer[e2]))
          throw DomainError(ErrorKind::AxiomViolation,
                            "flat unfolding loop arithmetic mismatch");
        auto res = aindex.find(
            {*ab, out.arrow_from_layer[e1], out.arrow_to_layer[e2]});
        if (res == aindex.end()) {
          partial = true;
          continue;
        }
        b.set_compose(e1, e2, res->second);
      }
    out.cat = b.build(partial);
    return out;
  }

  // Explicit finite G: one arrow per (base arrow, G-arrow).
  const RightGroupal& gw = f.G;
  for (VertexId v = 0; v < static_cast<VertexId>(k.vertex_count()); ++v)
    for (const auto& e : gw.vertex_elem) add_vertex(v, e);
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    for (ArrowId gamma = 0; gamma < static_cast<ArrowId>(gw.cat.arrow_count());
         ++gamma) {
      GroupElem u = gw.elem(gw.cat.src(gamma));
      GroupElem w = gw.elem(gw.cat.dst(gamma));
      GroupElem dom_layer = vg.mul(vg.inv(f.ann.label[a]), u);
      if (!vindex.count({k.src(a), dom_layer})) continue;
      add_arrow(a, dom_layer, w, gw.cat.arrow_name(gamma), gamma);
    }
  for (const auto& [key, nv] : vindex) {
    VertexId l = gw.vertex_of(key.second);
    auto it = gindex.find({k.identity(key.first), gw.cat.identity(l)});
    if (it != gindex.end()) b.set_identity(nv, it->second);
  }

  auto class_of = [&](ArrowId gamma) -> ArrowId {
    VertexId down = gw.vertex_of(vg.inv(gw.elem(gw.cat.src(gamma))));
    if (down == kNoVertex) return kNoArrow;
    ArrowId normalised = gw.act[gamma][down];
    if (normalised == kNoArrow) return kNoArrow;
    return f.gloops.from_g[normalised];
  };

  for (ArrowId e1 = 0; e1 < static_cast<ArrowId>(out.arrow_base.size()); ++e1)
    for (ArrowId e2 = 0; e2 < static_cast<ArrowId>(out.arrow_base.size());
         ++e2) {
      ArrowId a = out.arrow_base[e1], bb = out.arrow_base[e2];
      if (k.dst(a) != k.src(bb)) continue;
      if (!(out.arrow_to_layer[e1] == out.arrow_from_layer[e2])) continue;
      auto ab = k.compose(a, bb);
      if (!ab) {
        partial = true;
        continue;
      }
      auto itn = f.n_map.find({a, bb});
      ArrowId gcls = class_of(arrow_gamma[e1]);
      if (itn == f.n_map.end() || gcls == kNoArrow) {
        partial = true;
        continue;
      }
      auto itc = f.c_map.find({bb, gcls});
      if (itc == f.c_map.end()) {
        partial = true;
        continue;
      }
      GroupElem start = vg.mul(f.ann.label[*ab], out.arrow_from_layer[e1]);
      VertexId su = gw.vertex_of(start);
      if (su == kNoVertex) {
        partial = true;
        continue;
      }
      ArrowId step1 = gw.act[f.gloops.to_g[itn->second]][su];
      if (step1 == kNoArrow) {
        partial = true;
        continue;
      }
      ArrowId step2 = gw.act[f.gloops.to_g[itc->second]][gw.cat.dst(step1)];
      if (step2 == kNoArrow) {
        partial = true;
        continue;
      }
      auto head = gw.cat.compose(step1, step2);
      if (!head ||
          gw.cat.dst(*head) != gw.cat.src(arrow_gamma[e2]))
        throw DomainError(ErrorKind::AxiomViolation,
                          "flat unfolding instantiation mismatch");
      auto whole = gw.cat.compose(*head, arrow_gamma[e2]);
      if (!whole) {
        partial = true;
        continue;
      }
      auto res = gindex.find({*ab, *whole});
      if (res == gindex.end()) {
        partial = true;
        continue;
      }
      b.set_compose(e1, e2, res->second);
    }
  out.cat = b.build(partial);
  return out;
}

FlatIsoResult check_flat_iso(const FlatRepIso& iso, const FlatRep& f1,
                             const FlatRep& f2) {
  FlatIsoResult res;
  const auto& vg = f1.G.vgroup;
  const auto& k1 = f1.base;
  const auto& k2 = f2.base;

  auto fail = [&](const std::string& eq, const std::string& w) {
    res.ok = false;
    res.violated_eq = eq;
    res.witness = w;
    return res;
  };

  if (iso.phi.vmap.size() != k2.vertex_count() ||
      iso.phi.amap.size() != k2.arrow_count())
    return fail("phi", "phi must map the second base into the first");
  {
    std::string why;
    if (!check_isomorphism(k2, k1, iso.phi, &why))
      return fail("phi", "phi is not an isomorphism: " + why);
  }

  auto w_of = [&](VertexId z) -> const GroupElem& { return iso.h.at(z); };
  auto diff1 = [&](ArrowId l) { return loop_diff(f1.G, f1.gloops, l); };
  auto diff2 = [&](ArrowId l) { return loop_diff(f2.G, f2.gloops, l); };

  // eq (32): h(z) (left translation by w_z) commutes with the right action on
  // the window of G.
  for (const auto& [z, w] : iso.h) {
    const auto& g = f1.G;
    for (ArrowId l = 0; l < static_cast<ArrowId>(g.cat.arrow_count()); ++l)
      for (VertexId v = 0; v < static_cast<VertexId>(g.cat.vertex_count());
           ++v) {
        ArrowId lv = g.act[l][v];
        if (lv == kNoArrow) continue;
        // shift then act.
        VertexId s1 = g.vertex_of(vg.mul(w, g.elem(g.cat.src(l))));
        VertexId d1 = g.vertex_of(vg.mul(w, g.elem(g.cat.dst(l))));
        VertexId s2 = g.vertex_of(vg.mul(w, g.elem(g.cat.src(lv))));
        VertexId d2 = g.vertex_of(vg.mul(w, g.elem(g.cat.dst(lv))));
        if (s1 == kNoVertex || d1 == kNoVertex || s2 == kNoVertex ||
            d2 == kNoVertex)
          continue;
        auto shifted = g.cat.hom(s1, d1);
        if (shifted.empty())
          return fail("eq32", "shift of " + g.cat.arrow_name(l) +
                                  " leaves the window");
        ArrowId acted = g.act[shifted.front()][v];
        auto expect = g.cat.hom(s2, d2);
        if (acted != kNoArrow && !expect.empty() &&
            acted != expect.front())
          return fail("eq32", g.cat.arrow_name(l) + " by " +
                                  g.cat.vertex_name(v) + " at " +
                                  k2.vertex_name(z));
      }
  }

  // eq (49): psi(B(a)) = w_cod^-1 A(phi a) w_dom.
  for (ArrowId a = 0; a < static_cast<ArrowId>(k2.arrow_count()); ++a) {
    GroupElem lhs = iso.psi.apply(f2.ann.label[a]);
    GroupElem rhs = vg.mul(
        vg.mul(vg.inv(w_of(k2.dst(a))), f1.ann.label[iso.phi.amap[a]]),
        w_of(k2.src(a)));
    if (!(lhs == rhs)) return fail("eq49", k2.arrow_name(a));
  }

  // eq (50): m(a,b) = h(cod b)^-1(n(phi a, phi b)):
  // psi(diff m) = w^-1 diff(n) w.
  for (const auto& [key, loop] : f2.n_map) {
    auto it = f1.n_map.find({iso.phi.amap[key.first], iso.phi.amap[key.second]});
    if (it == f1.n_map.end())
      return fail("eq50", "n undefined at image of (" +
                              k2.arrow_name(key.first) + "," +
                              k2.arrow_name(key.second) + ")");
    const GroupElem& w = w_of(k2.dst(key.second));
    GroupElem lhs = iso.psi.apply(diff2(loop));
    GroupElem rhs = vg.mul(vg.mul(vg.inv(w), diff1(it->second)), w);
    if (!(lhs == rhs))
      return fail("eq50",
                  k2.arrow_name(key.first) + "," + k2.arrow_name(key.second));
  }

  // eq (51): D(a,x) = h(cod a)^-1( C(phi a, h(dom a)(x)) ).
  for (const auto& [key, loop] : f2.c_map) {
    ArrowId a = key.first;
    const GroupElem& wd = w_of(k2.src(a));
    const GroupElem& wc = w_of(k2.dst(a));
    GroupElem x_diff = iso.psi.apply(diff2(key.second));
    GroupElem shifted = vg.mul(vg.mul(wd, x_diff), vg.inv(wd));
    ArrowId xg = loop_of_diff(f1.G, f1.gloops, shifted);
    if (xg == kNoArrow)
      return fail("eq51", "shifted loop outside window at " +
                              k2.arrow_name(a));
    auto it = f1.c_map.find({iso.phi.amap[a], xg});
    if (it == f1.c_map.end())
      return fail("eq51", "C undefined at image of " + k2.arrow_name(a));
    GroupElem lhs = iso.psi.apply(diff2(loop));
    GroupElem rhs = vg.mul(vg.mul(vg.inv(wc), diff1(it->second)), wc);
    if (!(lhs == rhs))
      return fail("eq51", k2.arrow_name(a) + "," +
                              f2.gloops.cat.arrow_name(key.second));
  }
  res.ok = true;
  return res;
}

std::optional<FlatRepIso> find_flat_iso_layer_shift(const FlatRep& f1,
                                                    const FlatRep& f2) {
  if (f1.base.vertex_count() != f2.base.vertex_count() ||
      f1.base.arrow_count() != f2.base.arrow_count())
    return std::nullopt;
  const auto& vg = f1.G.vgroup;
  // Candidate shifts: differences appearing in the windows.
  std::set<GroupElem> candidates;
  candidates.insert(vg.neutral());
  for (const auto& e : f1.G.vertex_elem) {
    candidates.insert(e);
    candidates.insert(vg.inv(e));
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(f1.base.arrow_count()); ++a) {
    GroupElem d = vg.mul(f1.ann.label[a], vg.inv(f2.ann.label[a]));
    candidates.insert(d);
    candidates.insert(vg.inv(d));
  }

  for (const auto& w0 : candidates) {
    // Propagate w along arrows from vertex 0 using eq (49) with phi = id.
    std::map<VertexId, GroupElem> h;
    h[0] = w0;
    bool consistent = true;
    bool progress = true;
    while (progress && consistent) {
      progress = false;
      for (ArrowId a = 0; a < static_cast<ArrowId>(f2.base.arrow_count());
           ++a) {
        VertexId s = f2.base.src(a), d = f2.base.dst(a);
        auto is_ = h.find(s);
        auto id_ = h.find(d);
        // eq49: B(a) = w_d^-1 A(a) w_s  =>  w_d = A(a) w_s B(a)^-1.
        if (is_ != h.end() && id_ == h.end()) {
          h[d] = vg.mul(vg.mul(f1.ann.label[a], is_->second),
                        vg.inv(f2.ann.label[a]));
          progress = true;
        } else if (is_ == h.end() && id_ != h.end()) {
          h[s] = vg.mul(vg.inv(f1.ann.label[a]),
                        vg.mul(id_->second, f2.ann.label[a]));
          progress = true;
        }
      }
    }
    if (h.size() != f2.base.vertex_count()) continue;
    FlatRepIso iso;
    iso.phi = identity_morphism(f2.base);
    iso.psi.identity = true;
    iso.h = std::move(h);
    if (check_flat_iso(iso, f1, f2).ok) return iso;
  }
  return std::nullopt;
}

bool consistent_pair(const FlatRep& f, ArrowId a, ArrowId b) {
  auto it = f.n_map.find({a, b});
  if (it == f.n_map.end())
    throw DomainError(ErrorKind::BadInput, "pair not composable");
  return f.gloops.cat.is_identity(it->second);
}

}  // namespace orbifold
