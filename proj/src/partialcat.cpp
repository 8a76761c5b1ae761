#include "orbifold/partialcat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace orbifold {

ValidationReport check_partial_subcategory(const Category& p, const Category& k,
                                           const CatMorphism& emb) {
  ValidationReport rep = validate_category(p);
  if (emb.vmap.size() != p.vertex_count() ||
      emb.amap.size() != p.arrow_count()) {
    rep.add("embedding", "map sizes");
    return rep;
  }
  std::set<VertexId> vimg(emb.vmap.begin(), emb.vmap.end());
  std::set<ArrowId> aimg(emb.amap.begin(), emb.amap.end());
  if (vimg.size() != p.vertex_count() || aimg.size() != p.arrow_count())
    rep.add("embedding-injective", "duplicate images");
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    if (k.src(emb.amap[a]) != emb.vmap[p.src(a)] ||
        k.dst(emb.amap[a]) != emb.vmap[p.dst(a)])
      rep.add("embedding-endpoints", p.arrow_name(a));
  for (VertexId v = 0; v < static_cast<VertexId>(p.vertex_count()); ++v)
    if (emb.amap[p.identity(v)] != k.identity(emb.vmap[v]))
      rep.add("embedding-identities", p.vertex_name(v));

  // Concatenation defined exactly when the K-composite stays in the image.
  std::map<ArrowId, ArrowId> back;
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    back[emb.amap[a]] = a;
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    for (ArrowId b : p.arrows_from(p.dst(a))) {
      auto in_k = k.compose(emb.amap[a], emb.amap[b]);
      bool k_inside = in_k && back.count(*in_k);
      auto in_p = p.compose(a, b);
      if (in_p.has_value() != k_inside)
        rep.add("subcategory-concatenation",
                p.arrow_name(a) + "*" + p.arrow_name(b));
      else if (in_p && emb.amap[*in_p] != *in_k)
        rep.add("subcategory-concatenation-value",
                p.arrow_name(a) + "*" + p.arrow_name(b));
    }
  return rep;
}

namespace {

struct DefinedQuotient {
  QuotientResult q;
  PathCategory paths;
};

DefinedQuotient defining_quotient(const Category& p, int max_len, bool flat) {
  DefinedQuotient out;
  out.paths = bounded_path_category(underlying_graph(p), max_len);
  const Category& pc = out.paths.cat;

  // Path arrow of a single P-arrow (identity paths for identities).
  std::vector<ArrowId> single(p.arrow_count(), kNoArrow);
  std::map<std::vector<std::size_t>, ArrowId> by_edges;
  Digraph g = underlying_graph(p);
  for (ArrowId pa = 0; pa < static_cast<ArrowId>(pc.arrow_count()); ++pa)
    if (out.paths.path_edges[pa].size() <= 1)
      by_edges[out.paths.path_edges[pa]] = pa;
  {
    std::size_t edge_idx = 0;
    for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a) {
      if (p.is_identity(a)) {
        single[a] = pc.identity(p.src(a));
      } else {
        single[a] = by_edges.at({edge_idx});
        ++edge_idx;
      }
    }
  }

  std::vector<std::pair<ArrowId, ArrowId>> seeds;
  // a*b == a.b for every defined concatenation of P.
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    for (ArrowId b : p.arrows_from(p.dst(a))) {
      auto ab = p.compose(a, b);
      if (!ab) continue;
      auto join = pc.compose(single[a], single[b]);
      if (!join) continue;  // beyond the length bound
      seeds.push_back({*join, single[*ab]});
    }
  if (flat) {
    // Collapse every loop path onto the identity of its vertex.
    for (ArrowId pa = 0; pa < static_cast<ArrowId>(pc.arrow_count()); ++pa)
      if (pc.src(pa) == pc.dst(pa) && !pc.is_identity(pa))
        seeds.push_back({pa, pc.identity(pc.src(pa))});
  }
  out.q = quotient_by_congruence(pc, seeds);
  return out;
}

TriState defining_state(const Category& p, const Category& k, int max_len,
                        bool flat, std::uint64_t budget, std::string* note) {
  DefinedQuotient now = defining_quotient(p, max_len, flat);
  auto iso = find_isomorphism(now.q.quotient, k, budget);
  if (iso.status == SearchStatus::Found) return TriState::True;
  if (iso.status == SearchStatus::Exhausted) {
    if (note) *note = "isomorphism search budget exhausted";
    return TriState::Unknown;
  }
  // Fewer vertex classes than K can never be fixed by longer paths.
  if (now.q.quotient.vertex_count() < k.vertex_count()) return TriState::False;
  if (max_len >= 2) {
    DefinedQuotient prev = defining_quotient(p, max_len - 1, flat);
    auto stable =
        find_isomorphism(prev.q.quotient, now.q.quotient, budget);
    if (stable.status == SearchStatus::Found) return TriState::False;
  }
  if (note) *note = "not isomorphic up to max_len " + std::to_string(max_len);
  return TriState::Unknown;
}

}  // namespace

DefiningResult check_defining(const Category& p, const Category& k, int max_len,
                              std::uint64_t budget) {
  DefiningResult res;
  res.fully = defining_state(p, k, max_len, /*flat=*/false, budget, &res.note);
  res.flat = defining_state(p, k, max_len, /*flat=*/true, budget, &res.note);
  return res;
}

bool annotation_antisymmetric(const Category& p, const Annotation& ann,
                              std::string* witness) {
  const auto& g = ann.group;
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    for (ArrowId b : p.arrows_from(p.dst(a))) {
      if (p.dst(b) != p.src(a)) continue;
      if (!g.is_neutral(g.mul(ann.label[a], ann.label[b]))) continue;
      bool degenerate =
          p.src(a) == p.dst(a) && g.is_neutral(ann.label[a]);
      if (!degenerate) {
        if (witness)
          *witness = p.arrow_name(a) + " / " + p.arrow_name(b);
        return false;
      }
    }
  return true;
}

namespace {

TriState completion_state(const Category& p, const Annotation& ann,
                          const Category& k, int max_len,
                          std::uint64_t budget, std::string* witness) {
  // Completion candidates are quotients of the bounded path category; the
  // annotation must extend consistently along paths.
  DefinedQuotient dq = defining_quotient(p, max_len, /*flat=*/false);
  // Labels along paths, contravariantly.
  const Category& pc = dq.paths.cat;
  Digraph g = underlying_graph(p);
  std::vector<ArrowId> edge_arrow;
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    if (!p.is_identity(a)) edge_arrow.push_back(a);
  std::vector<GroupElem> path_label(pc.arrow_count(), ann.group.neutral());
  for (ArrowId pa = 0; pa < static_cast<ArrowId>(pc.arrow_count()); ++pa) {
    GroupElem acc = ann.group.neutral();
    for (std::size_t e : dq.paths.path_edges[pa])
      acc = ann.group.mul(ann.label[edge_arrow[e]], acc);
    path_label[pa] = acc;
  }
  // The completion's labels are induced by the single-edge classes; longer
  // paths are corrected by the loop data of a flat representation, so only
  // merged P-arrows (and identities) must agree.
  for (ArrowId pa = 0; pa < static_cast<ArrowId>(pc.arrow_count()); ++pa) {
    if (dq.paths.path_edges[pa].size() > 1) continue;
    for (ArrowId pb = 0; pb < static_cast<ArrowId>(pc.arrow_count()); ++pb) {
      if (dq.paths.path_edges[pb].size() > 1) continue;
      if (dq.q.congruence.arrow_class[pa] != dq.q.congruence.arrow_class[pb])
        continue;
      if (!(path_label[pa] == path_label[pb])) {
        if (witness)
          *witness = "annotation conflict " + pc.arrow_name(pa) + " vs " +
                     pc.arrow_name(pb);
        return TriState::False;
      }
    }
  }
  auto iso = find_isomorphism(dq.q.quotient, k, budget);
  if (iso.status == SearchStatus::Found) return TriState::True;
  if (iso.status == SearchStatus::Exhausted) return TriState::Unknown;
  if (dq.q.quotient.vertex_count() < k.vertex_count()) return TriState::False;
  if (max_len >= 2) {
    DefinedQuotient prev = defining_quotient(p, max_len - 1, /*flat=*/false);
    auto stable = find_isomorphism(prev.q.quotient, dq.q.quotient, budget);
    if (stable.status == SearchStatus::Found) return TriState::False;
  }
  return TriState::Unknown;
}

TriState bool_state(bool b) { return b ? TriState::True : TriState::False; }

}  // namespace

PropertyFlags property_catalogue(const Category& p, const Annotation& ann,
                                 const CategoryAction* s_action,
                                 const Category* reference, int max_len,
                                 std::uint64_t budget) {
  PropertyFlags f;
  f.faithful = bool_state(annotation_faithful(p, ann));
  f.simple = bool_state(is_simple(p));
  {
    auto props = relation_properties(p);
    f.ordered =
        bool_state(props.reflexive && props.antisymmetric && props.transitive);
  }
  f.antisymmetric = bool_state(annotation_antisymmetric(p, ann, &f.witness));

  if (s_action) {
    bool sym = check_action(*s_action).ok();
    if (sym) {
      auto parts = orbits(*s_action);
      sym = parts.n_vertex_orbits == 1;
    }
    f.s_symmetric = bool_state(sym);
    if (!sym) {
      f.translatively_s_symmetric = TriState::False;
    } else {
      try {
        auto trans = is_translative(*s_action, budget);
        f.translatively_s_symmetric = bool_state(trans.ok);
      } catch (const DomainError& e) {
        if (e.kind() == ErrorKind::BudgetExhausted)
          f.translatively_s_symmetric = TriState::Unknown;
        else
          f.translatively_s_symmetric = TriState::False;
      }
    }
  }

  if (reference)
    f.complete =
        completion_state(p, ann, *reference, max_len, budget, &f.witness);

  if (f.antisymmetric == TriState::True &&
      (!s_action || f.s_symmetric == TriState::True) &&
      f.complete == TriState::True) {
    f.antisym_s_complete = TriState::True;  // refined by search_maximal
  } else if (f.antisymmetric == TriState::False ||
             f.s_symmetric == TriState::False ||
             f.complete == TriState::False) {
    f.antisym_s_complete = TriState::False;
  }
  return f;
}

std::string to_string(const PropertyFlags& f) {
  std::ostringstream out;
  out << "faithful=" << tri_state_name(f.faithful)
      << " simple=" << tri_state_name(f.simple)
      << " ordered=" << tri_state_name(f.ordered)
      << " s_symmetric=" << tri_state_name(f.s_symmetric)
      << " translatively_s_symmetric="
      << tri_state_name(f.translatively_s_symmetric)
      << " antisymmetric=" << tri_state_name(f.antisymmetric)
      << " complete=" << tri_state_name(f.complete)
      << " antisym_s_complete=" << tri_state_name(f.antisym_s_complete);
  return out.str();
}

Category restrict_arrows(const Category& reference,
                         const std::vector<char>& keep) {
  CategoryBuilder b;
  for (VertexId v = 0; v < static_cast<VertexId>(reference.vertex_count());
       ++v)
    b.add_vertex(reference.vertex_name(v));
  std::vector<ArrowId> to_sub(reference.arrow_count(), kNoArrow);
  for (ArrowId a = 0; a < static_cast<ArrowId>(reference.arrow_count()); ++a)
    if (keep[a] || reference.is_identity(a))
      to_sub[a] = b.add_arrow(reference.arrow_name(a), reference.src(a),
                              reference.dst(a));
  for (VertexId v = 0; v < static_cast<VertexId>(reference.vertex_count());
       ++v)
    b.set_identity(v, to_sub[reference.identity(v)]);
  for (ArrowId a = 0; a < static_cast<ArrowId>(reference.arrow_count()); ++a)
    for (ArrowId x : reference.arrows_from(reference.dst(a))) {
      if (to_sub[a] == kNoArrow || to_sub[x] == kNoArrow) continue;
      auto ax = reference.compose(a, x);
      if (!ax || to_sub[*ax] == kNoArrow) continue;
      b.set_compose(to_sub[a], to_sub[x], to_sub[*ax]);
    }
  return b.build(/*partial=*/true);
}

Annotation restrict_annotation(const Category& reference,
                               const Annotation& ann, const Category& sub) {
  Annotation out;
  out.group = ann.group;
  out.label.resize(sub.arrow_count());
  for (ArrowId a = 0; a < static_cast<ArrowId>(sub.arrow_count()); ++a)
    out.label[a] = ann.label[reference.arrow(sub.arrow_name(a))];
  return out;
}

MaximalSubrep search_maximal(const Category& reference, const Annotation& ann,
                             const CategoryAction* s_action,
                             bool want_faithful, bool want_simple,
                             bool want_ordered, bool want_antisymmetric,
                             bool want_s_symmetric, int max_len,
                             std::uint64_t budget) {
  const auto na = static_cast<ArrowId>(reference.arrow_count());
  std::vector<char> keep(na, 0);

  auto orbit_closure = [&](ArrowId a) {
    std::vector<ArrowId> orbit{a};
    if (s_action)
      for (GroupId g = 0; g < static_cast<GroupId>(s_action->group.size());
           ++g)
        orbit.push_back(s_action->aa(g, a));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    return orbit;
  };

  auto flags_hold = [&](const std::vector<char>& k) {
    Category sub = restrict_arrows(reference, k);
    Annotation sann = restrict_annotation(reference, ann, sub);
    if (want_faithful && !annotation_faithful(sub, sann)) return false;
    if (want_simple && !is_simple(sub)) return false;
    if (want_ordered) {
      auto props = relation_properties(sub);
      if (!(props.reflexive && props.antisymmetric && props.transitive))
        return false;
    }
    if (want_antisymmetric && !annotation_antisymmetric(sub, sann)) return false;
    // S-symmetry is preserved by construction (orbit closures); transitivity
    // of S on vertices is a property of the reference action.
    (void)want_s_symmetric;
    return true;
  };

  Budget steps(budget);
  bool grew = true;
  while (grew) {
    grew = false;
    for (ArrowId a = 0; a < na; ++a) {
      if (keep[a] || reference.is_identity(a)) continue;
      if (!steps.step()) throw DomainError(ErrorKind::BudgetExhausted,
                                           "maximal subrepresentation ascent");
      auto trial = keep;
      for (ArrowId m : orbit_closure(a)) trial[m] = 1;
      if (flags_hold(trial)) {
        keep = std::move(trial);
        grew = true;
      }
    }
  }

  MaximalSubrep out;
  out.keep_arrow = keep;
  out.sub = restrict_arrows(reference, keep);
  Annotation sann = restrict_annotation(reference, ann, out.sub);
  out.flags = property_catalogue(out.sub, sann, s_action, &reference, max_len,
                                 budget);
  return out;
}

ValidationReport check_tone_system(const ToneSystem& t) {
  ValidationReport rep;
  const auto n = t.tones.size();
  if (t.delta.size() != n) {
    rep.add("delta-size", "table does not match tone count");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!t.group.is_neutral(t.delta[i][i]))
      rep.add("delta-reflexive", t.tones[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (!(t.delta[i][l] ==
              t.group.mul(t.delta[j][l], t.delta[i][j]))) {
          rep.add("delta-cocycle",
                  t.tones[i] + "," + t.tones[j] + "," + t.tones[l]);
          return rep;
        }
  return rep;
}

std::vector<int> sigma_classes(const ToneSystem& t) {
  const auto n = t.tones.size();
  // t1 sigma t2 iff delta(t1, t3) = delta(t2, t3) for some t3.
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t w = 0; w < n; ++w)
        if (t.delta[i][w] == t.delta[j][w]) {
          rel[i][j] = 1;
          break;
        }
  // Verify the equivalence laws on the instance.
  for (std::size_t i = 0; i < n; ++i)
    if (!rel[i][i])
      throw DomainError(ErrorKind::AxiomViolation,
                        "sigma not reflexive at " + t.tones[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i][j] != rel[j][i])
        throw DomainError(ErrorKind::AxiomViolation,
                          "sigma not symmetric at " + t.tones[i] + "," +
                              t.tones[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (rel[i][j] && rel[j][l] && !rel[i][l])
          throw DomainError(ErrorKind::AxiomViolation,
                            "sigma not transitive at " + t.tones[i] + "," +
                                t.tones[j] + "," + t.tones[l]);
  std::vector<int> cls(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] != -1) continue;
    cls[i] = next;
    for (std::size_t j = i + 1; j < n; ++j)
      if (rel[i][j]) cls[j] = next;
    ++next;
  }
  return cls;
}

}  // namespace orbifold
