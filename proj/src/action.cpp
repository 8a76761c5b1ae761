#include "orbifold/action.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace orbifold {

ValidationReport check_action(const CategoryAction& A) {
  ValidationReport rep = A.group.validate();
  const auto& c = A.category;
  const auto ng = static_cast<GroupId>(A.group.size());
  const auto nv = static_cast<VertexId>(c.vertex_count());
  const auto na = static_cast<ArrowId>(c.arrow_count());

  if (A.act_vertex.size() != A.group.size() ||
      A.act_arrow.size() != A.group.size()) {
    rep.add("action-tables", "table count does not match group size");
    return rep;
  }

  GroupId e = A.group.neutral();
  for (VertexId v = 0; v < nv; ++v)
    if (A.av(e, v) != v) rep.add("action-neutral", c.vertex_name(v));
  for (ArrowId a = 0; a < na; ++a)
    if (A.aa(e, a) != a) rep.add("action-neutral", c.arrow_name(a));

  for (GroupId g = 0; g < ng; ++g)
    for (GroupId h = 0; h < ng; ++h) {
      GroupId gh = A.group.mul(g, h);
      for (VertexId v = 0; v < nv; ++v)
        if (A.av(h, A.av(g, v)) != A.av(gh, v)) {
          rep.add("action-law", "(" + c.vertex_name(v) + "^" +
                                    A.group.name(g) + ")^" + A.group.name(h));
          goto arrows;
        }
    arrows:
      for (ArrowId a = 0; a < na; ++a)
        if (A.aa(h, A.aa(g, a)) != A.aa(gh, a)) {
          rep.add("action-law", "(" + c.arrow_name(a) + "^" +
                                    A.group.name(g) + ")^" + A.group.name(h));
          break;
        }
    }

  for (GroupId g = 0; g < ng; ++g) {
    // Bijectivity.
    std::vector<char> seen_v(nv, 0), seen_a(na, 0);
    for (VertexId v = 0; v < nv; ++v) {
      VertexId w = A.av(g, v);
      if (w < 0 || w >= nv || seen_v[w]) {
        rep.add("automorphism-bijective-vertices", A.group.name(g));
        break;
      }
      seen_v[w] = 1;
    }
    for (ArrowId a = 0; a < na; ++a) {
      ArrowId b = A.aa(g, a);
      if (b < 0 || b >= na || seen_a[b]) {
        rep.add("automorphism-bijective-arrows", A.group.name(g));
        break;
      }
      seen_a[b] = 1;
    }
    // Structure preservation.
    for (ArrowId a = 0; a < na; ++a) {
      ArrowId b = A.aa(g, a);
      if (c.src(b) != A.av(g, c.src(a)) || c.dst(b) != A.av(g, c.dst(a))) {
        rep.add("automorphism-endpoints",
                A.group.name(g) + " at " + c.arrow_name(a));
      }
    }
    for (VertexId v = 0; v < nv; ++v)
      if (A.aa(g, c.identity(v)) != c.identity(A.av(g, v)))
        rep.add("automorphism-identities",
                A.group.name(g) + " at " + c.vertex_name(v));
    for (ArrowId a = 0; a < na; ++a)
      for (ArrowId b : c.arrows_from(c.dst(a))) {
        auto ab = c.compose(a, b);
        auto gab = c.compose(A.aa(g, a), A.aa(g, b));
        if (ab.has_value() != gab.has_value()) {
          rep.add("automorphism-compose-definedness",
                  A.group.name(g) + " at " + c.arrow_name(a) + "*" +
                      c.arrow_name(b));
          continue;
        }
        if (ab && A.aa(g, *ab) != *gab)
          rep.add("automorphism-compose", A.group.name(g) + " at " +
                                              c.arrow_name(a) + "*" +
                                              c.arrow_name(b));
      }
  }
  return rep;
}

OrbitPartitions orbits(const CategoryAction& A) {
  OrbitPartitions out;
  const auto nv = static_cast<VertexId>(A.category.vertex_count());
  const auto na = static_cast<ArrowId>(A.category.arrow_count());
  out.vertex_orbit.assign(nv, -1);
  out.arrow_orbit.assign(na, -1);
  for (VertexId v = 0; v < nv; ++v) {
    if (out.vertex_orbit[v] != -1) continue;
    int id = out.n_vertex_orbits++;
    out.vertex_members.push_back({});
    for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g) {
      VertexId w = A.av(g, v);
      if (out.vertex_orbit[w] == -1) {
        out.vertex_orbit[w] = id;
        out.vertex_members[id].push_back(w);
      }
    }
  }
  for (ArrowId a = 0; a < na; ++a) {
    if (out.arrow_orbit[a] != -1) continue;
    int id = out.n_arrow_orbits++;
    out.arrow_members.push_back({});
    for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g) {
      ArrowId b = A.aa(g, a);
      if (out.arrow_orbit[b] == -1) {
        out.arrow_orbit[b] = id;
        out.arrow_members[id].push_back(b);
      }
    }
  }
  return out;
}

SemiRegularResult is_semiregular(const CategoryAction& A) {
  const auto& c = A.category;
  for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g) {
    if (g == A.group.neutral()) continue;
    for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v)
      if (A.av(g, v) == v)
        return {false, "vertex " + c.vertex_name(v) + " fixed by " +
                           A.group.name(g)};
    for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
      if (A.aa(g, a) == a)
        return {false,
                "arrow " + c.arrow_name(a) + " fixed by " + A.group.name(g)};
  }
  return {true, ""};
}

FoldableResult is_foldable(const CategoryAction& A) {
  const auto& c = A.category;
  OrbitPartitions parts = orbits(A);
  // Bucket composable pairs by their orbit pair; all composites in a bucket
  // must land in one arrow orbit.
  std::map<std::pair<int, int>, std::pair<int, std::pair<ArrowId, ArrowId>>>
      buckets;
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a)
    for (ArrowId b : c.arrows_from(c.dst(a))) {
      auto ab = c.compose(a, b);
      if (!ab) continue;
      std::pair<int, int> key{parts.arrow_orbit[a], parts.arrow_orbit[b]};
      int orbit = parts.arrow_orbit[*ab];
      auto [it, fresh] = buckets.try_emplace(key, orbit, std::pair{a, b});
      if (!fresh && it->second.first != orbit) {
        FoldableResult res;
        res.ok = false;
        res.a = it->second.second.first;
        res.b = it->second.second.second;
        res.c = a;
        res.d = b;
        res.witness = "(" + c.arrow_name(res.a) + "*" + c.arrow_name(res.b) +
                      ")^G != (" + c.arrow_name(res.c) + "*" +
                      c.arrow_name(res.d) + ")^G";
        return res;
      }
    }
  FoldableResult res;
  res.ok = true;
  return res;
}

Subcategory full_subcategory(const Category& c,
                             const std::vector<VertexId>& vertices) {
  Subcategory sub;
  sub.vertex_from_parent.assign(c.vertex_count(), kNoVertex);
  sub.arrow_from_parent.assign(c.arrow_count(), kNoArrow);
  CategoryBuilder b;
  for (VertexId v : vertices) {
    sub.vertex_from_parent[v] = b.add_vertex(c.vertex_name(v));
    sub.vertex_to_parent.push_back(v);
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    VertexId s = sub.vertex_from_parent[c.src(a)];
    VertexId d = sub.vertex_from_parent[c.dst(a)];
    if (s == kNoVertex || d == kNoVertex) continue;
    sub.arrow_from_parent[a] = b.add_arrow(c.arrow_name(a), s, d);
    sub.arrow_to_parent.push_back(a);
  }
  for (VertexId v : vertices)
    b.set_identity(sub.vertex_from_parent[v],
                   sub.arrow_from_parent[c.identity(v)]);
  bool partial = c.partial();
  for (ArrowId a : sub.arrow_to_parent)
    for (ArrowId x : c.arrows_from(c.dst(a))) {
      if (sub.arrow_from_parent[x] == kNoArrow) continue;
      auto ax = c.compose(a, x);
      if (!ax) continue;
      if (sub.arrow_from_parent[*ax] == kNoArrow) {
        partial = true;  // composite leaves the subcategory
        continue;
      }
      b.set_compose(sub.arrow_from_parent[a], sub.arrow_from_parent[x],
                    sub.arrow_from_parent[*ax]);
    }
  sub.cat = b.build(partial);
  return sub;
}

TranslativeResult is_translative(const CategoryAction& A,
                                 std::uint64_t budget_limit) {
  TranslativeResult res;
  auto semi = is_semiregular(A);
  if (!semi.ok)
    throw DomainError(ErrorKind::NotSemiRegular, semi.witness);

  const auto& c = A.category;
  OrbitPartitions parts = orbits(A);
  Budget budget(budget_limit);

  // Per orbit: base vertex and for each vertex the unique g with base^g = v.
  std::vector<VertexId> base(parts.n_vertex_orbits);
  for (int o = 0; o < parts.n_vertex_orbits; ++o)
    base[o] = *std::min_element(parts.vertex_members[o].begin(),
                                parts.vertex_members[o].end());
  std::vector<GroupId> layer(c.vertex_count(), -1);
  for (int o = 0; o < parts.n_vertex_orbits; ++o)
    for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
      layer[A.av(g, base[o])] = g;

  std::vector<Subcategory> subs;
  for (int o = 0; o < parts.n_vertex_orbits; ++o) {
    auto members = parts.vertex_members[o];
    std::sort(members.begin(), members.end());
    subs.push_back(full_subcategory(c, members));
  }

  // Arrow orbits restricted to a subcategory, one representative each.
  auto arrow_orbit_reps = [&](const Subcategory& sub) {
    std::set<int> seen;
    std::vector<ArrowId> reps;  // parent ids
    for (ArrowId pa : sub.arrow_to_parent)
      if (seen.insert(parts.arrow_orbit[pa]).second) reps.push_back(pa);
    return reps;
  };

  for (int i = 0; i < parts.n_vertex_orbits; ++i) {
    for (int j = i + 1; j < parts.n_vertex_orbits; ++j) {
      const Subcategory& si = subs[i];
      const Subcategory& sj = subs[j];
      if (si.arrow_to_parent.size() != sj.arrow_to_parent.size() ||
          si.vertex_to_parent.size() != sj.vertex_to_parent.size()) {
        res.witness = "orbit subcategories of " + c.vertex_name(base[i]) +
                      " and " + c.vertex_name(base[j]) + " differ in size";
        return res;
      }
      auto reps = arrow_orbit_reps(si);
      bool found = false;
      for (VertexId w : parts.vertex_members[j]) {
        if (!budget.step(A.group.size())) {
          res.exhausted = true;
          throw DomainError(ErrorKind::BudgetExhausted, "translativity scan");
        }
        // Vertex map: base[i]^g -> w^g.
        OrbitIso iso;
        for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
          iso.vmap[A.av(g, base[i])] = A.av(g, w);

        // Arrow map: choose an image for one representative per arrow orbit,
        // extend equivariantly, then verify.
        std::vector<std::vector<ArrowId>> candidates;
        for (ArrowId pa : reps) {
          std::vector<ArrowId> cands;
          VertexId ts = iso.vmap.at(c.src(pa));
          VertexId td = iso.vmap.at(c.dst(pa));
          for (ArrowId q : c.hom(ts, td))
            if (sj.arrow_from_parent[q] != kNoArrow) cands.push_back(q);
          candidates.push_back(std::move(cands));
        }
        std::vector<std::size_t> choice(reps.size(), 0);
        auto build_and_check = [&]() -> bool {
          OrbitIso trial = iso;
          std::set<ArrowId> used;
          for (std::size_t r = 0; r < reps.size(); ++r) {
            ArrowId pa = reps[r];
            ArrowId img = candidates[r][choice[r]];
            for (GroupId g = 0; g < static_cast<GroupId>(A.group.size());
                 ++g) {
              ArrowId from = A.aa(g, pa);
              if (si.arrow_from_parent[from] == kNoArrow) continue;
              ArrowId to = A.aa(g, img);
              if (sj.arrow_from_parent[to] == kNoArrow) return false;
              if (!used.insert(to).second) return false;
              trial.amap[from] = to;
            }
          }
          if (trial.amap.size() != si.arrow_to_parent.size()) return false;
          // Verify structure preservation on the subcategory.
          std::set<ArrowId> image;
          for (auto [from, to] : trial.amap) image.insert(to);
          if (image.size() != sj.arrow_to_parent.size()) return false;
          for (auto [from, to] : trial.amap) {
            if (trial.vmap.at(c.src(from)) != c.src(to) ||
                trial.vmap.at(c.dst(from)) != c.dst(to))
              return false;
            if (c.is_identity(from) != c.is_identity(to)) return false;
          }
          for (auto [a1, t1] : trial.amap)
            for (auto [a2, t2] : trial.amap) {
              if (c.dst(a1) != c.src(a2)) continue;
              auto precomp = c.compose(a1, a2);
              bool in_si = precomp && si.arrow_from_parent[*precomp] != kNoArrow;
              auto postcomp = c.compose(t1, t2);
              bool in_sj =
                  postcomp && sj.arrow_from_parent[*postcomp] != kNoArrow;
              if (in_si != in_sj) return false;
              if (in_si && trial.amap.at(*precomp) != *postcomp) return false;
            }
          iso = std::move(trial);
          return true;
        };
        // Backtracking over the per-orbit candidate choices.
        bool ok = false;
        if (std::all_of(candidates.begin(), candidates.end(),
                        [](const auto& v) { return !v.empty(); })) {
          while (true) {
            if (!budget.step()) {
              res.exhausted = true;
              throw DomainError(ErrorKind::BudgetExhausted,
                                "translativity scan");
            }
            if (build_and_check()) {
              ok = true;
              break;
            }
            std::size_t k = 0;
            while (k < choice.size() &&
                   ++choice[k] == candidates[k].size()) {
              choice[k] = 0;
              ++k;
            }
            if (k == choice.size()) break;
          }
        }
        if (ok) {
          res.witnesses[{i, j}] = iso;
          found = true;
          break;
        }
      }
      if (!found) {
        res.witness = "no commuting isomorphism between orbit subcategories " +
                      c.vertex_name(base[i]) + "^G and " +
                      c.vertex_name(base[j]) + "^G";
        return res;
      }
    }
  }
  res.ok = true;
  return res;
}

RightNormalResult is_right_normal(const CategoryAction& A,
                                  std::uint64_t budget_limit) {
  RightNormalResult res;
  auto trans = is_translative(A, budget_limit);
  if (!trans.ok)
    throw DomainError(ErrorKind::NotTranslative, trans.witness);

  const auto& c = A.category;
  OrbitPartitions parts = orbits(A);
  std::vector<Subcategory> subs;
  for (int o = 0; o < parts.n_vertex_orbits; ++o) {
    auto members = parts.vertex_members[o];
    std::sort(members.begin(), members.end());
    subs.push_back(full_subcategory(c, members));
  }
  // Unique g with v^g = w for vertices in one orbit.
  auto shift = [&](VertexId v, VertexId w) -> GroupId {
    for (GroupId g = 0; g < static_cast<GroupId>(A.group.size()); ++g)
      if (A.av(g, v) == w) return g;
    return -1;
  };

  for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
    const Subcategory& dom_sub = subs[parts.vertex_orbit[c.src(a)]];
    const Subcategory& cod_sub = subs[parts.vertex_orbit[c.dst(a)]];
    for (ArrowId x : dom_sub.arrow_to_parent) {
      if (c.dst(x) != c.src(a)) continue;
      auto xa = c.compose(x, a);
      if (!xa) continue;
      if (c.is_identity(x)) {
        res.cprime[{a, x}] = {A.group.neutral(), c.identity(c.dst(a))};
        continue;
      }
      GroupId g = shift(c.src(a), c.src(x));
      if (g < 0) {
        res.witness = "no shift aligning " + c.arrow_name(a) + " with " +
                      c.arrow_name(x);
        return res;
      }
      ArrowId ag = A.aa(g, a);
      ArrowId best = kNoArrow;
      for (ArrowId y : cod_sub.arrow_to_parent) {
        if (c.src(y) != c.dst(ag) || c.dst(y) != c.dst(*xa)) continue;
        auto agy = c.compose(ag, y);
        if (!agy || *agy != *xa) continue;
        if (best == kNoArrow || c.arrow_name(y) < c.arrow_name(best))
          best = y;
      }
      if (best == kNoArrow) {
        res.witness = "no C'(" + c.arrow_name(a) + ", " + c.arrow_name(x) +
                      ") with " + c.arrow_name(x) + "*" + c.arrow_name(a) +
                      " = " + c.arrow_name(a) + "^g * C'";
        return res;
      }
      res.cprime[{a, x}] = {g, best};
    }
  }
  res.ok = true;
  return res;
}

}  // namespace orbifold
