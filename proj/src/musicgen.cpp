#include "orbifold/musicgen.hpp"

#include <algorithm>
#include <map>

namespace orbifold {

namespace {

/// Completes act tables for a list of explicit vertex/arrow permutations, one
/// per group element.
CategoryAction make_action(Category cat, FiniteGroup group,
                           std::vector<std::map<std::string, std::string>> vperm,
                           std::vector<std::map<std::string, std::string>> aperm) {
  CategoryAction act;
  act.category = std::move(cat);
  act.group = std::move(group);
  const auto& c = act.category;
  for (std::size_t g = 0; g < act.group.size(); ++g) {
    std::vector<VertexId> vrow(c.vertex_count());
    std::vector<ArrowId> arow(c.arrow_count());
    for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
      auto it = vperm[g].find(c.vertex_name(v));
      vrow[v] = it == vperm[g].end() ? v : c.vertex(it->second);
    }
    for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
      auto it = aperm[g].find(c.arrow_name(a));
      if (it != aperm[g].end()) {
        arow[a] = c.arrow(it->second);
      } else if (c.is_identity(a)) {
        arow[a] = c.identity(vrow[c.src(a)]);
      } else {
        arow[a] = a;
      }
    }
    act.act_vertex.push_back(std::move(vrow));
    act.act_arrow.push_back(std::move(arow));
  }
  return act;
}

}  // namespace

FixK gen_fix_k() {
  CategoryBuilder b;
  for (const char* v : {"1", "2", "3", "4", "5"}) b.add_vertex(v);
  b.add_arrow("a", "1", "3");
  b.add_arrow("b", "2", "3");
  b.add_arrow("c", "3", "4");
  b.add_arrow("d", "3", "5");
  b.add_arrow("a*c", "1", "4");
  b.add_arrow("a*d", "1", "5");
  b.add_arrow("b*c", "2", "4");
  b.add_arrow("b*d", "2", "5");
  b.ensure_identities();
  b.set_compose(b.arrow("a"), b.arrow("c"), b.arrow("a*c"));
  b.set_compose(b.arrow("a"), b.arrow("d"), b.arrow("a*d"));
  b.set_compose(b.arrow("b"), b.arrow("c"), b.arrow("b*c"));
  b.set_compose(b.arrow("b"), b.arrow("d"), b.arrow("b*d"));
  Category cat = b.build();

  std::map<std::string, std::string> phi_v{{"1", "2"}, {"2", "1"}};
  std::map<std::string, std::string> phi_a{{"a", "b"},     {"b", "a"},
                                           {"a*c", "b*c"}, {"b*c", "a*c"},
                                           {"a*d", "b*d"}, {"b*d", "a*d"}};
  std::map<std::string, std::string> psi_v{{"4", "5"}, {"5", "4"}};
  std::map<std::string, std::string> psi_a{{"c", "d"},     {"d", "c"},
                                           {"a*c", "a*d"}, {"a*d", "a*c"},
                                           {"b*c", "b*d"}, {"b*d", "b*c"}};
  auto compose_perm = [](const std::map<std::string, std::string>& f,
                         const std::map<std::string, std::string>& g) {
    std::map<std::string, std::string> out = g;
    for (const auto& [k, v] : f) {
      auto it = g.find(v);
      out[k] = it == g.end() ? v : it->second;
    }
    // Entries of g on keys untouched by f stay as they are.
    for (const auto& [k, v] : g)
      if (!f.count(k)) out[k] = v;
    return out;
  };
  auto phipsi_v = compose_perm(phi_v, psi_v);
  auto phipsi_a = compose_perm(phi_a, psi_a);

  FixK out;
  out.cat = cat;

  std::vector<std::string> klein_names{"1", "f", "p", "fp"};
  std::vector<std::vector<GroupId>> klein_mul{
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  out.klein = make_action(cat, FiniteGroup::from_table(klein_names, klein_mul),
                          {{}, phi_v, psi_v, phipsi_v},
                          {{}, phi_a, psi_a, phipsi_a});

  out.cyclic = make_action(cat, FiniteGroup::cyclic(2, "q"),
                           {{}, phipsi_v}, {{}, phipsi_a});
  return out;
}

CategoryAction gen_chain_bundle(int k, int h) {
  CategoryBuilder b;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j <= h; ++j)
      b.add_vertex("c" + std::to_string(i) + "v" + std::to_string(j));
  auto vname = [](int i, int j) {
    return "c" + std::to_string(i) + "v" + std::to_string(j);
  };
  for (int i = 0; i < k; ++i)
    for (int j1 = 0; j1 <= h; ++j1)
      for (int j2 = j1 + 1; j2 <= h; ++j2)
        b.add_arrow("s" + std::to_string(i) + ":" + std::to_string(j1) + "-" +
                        std::to_string(j2),
                    vname(i, j1), vname(i, j2));
  b.ensure_identities();
  auto aname = [](int i, int j1, int j2) {
    return "s" + std::to_string(i) + ":" + std::to_string(j1) + "-" +
           std::to_string(j2);
  };
  for (int i = 0; i < k; ++i)
    for (int j1 = 0; j1 <= h; ++j1)
      for (int j2 = j1 + 1; j2 <= h; ++j2)
        for (int j3 = j2 + 1; j3 <= h; ++j3)
          b.set_compose(b.arrow(aname(i, j1, j2)), b.arrow(aname(i, j2, j3)),
                        b.arrow(aname(i, j1, j3)));
  Category cat = b.build();

  CategoryAction act;
  act.category = cat;
  act.group = FiniteGroup::cyclic(k, "r");
  for (int g = 0; g < k; ++g) {
    std::vector<VertexId> vrow(cat.vertex_count());
    std::vector<ArrowId> arow(cat.arrow_count());
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= h; ++j)
        vrow[cat.vertex(vname(i, j))] = cat.vertex(vname((i + g) % k, j));
    for (ArrowId a = 0; a < static_cast<ArrowId>(cat.arrow_count()); ++a) {
      if (cat.is_identity(a)) {
        arow[a] = cat.identity(vrow[cat.src(a)]);
      } else {
        // parse "s<i>:<j1>-<j2>" by regenerating per chain
        arow[a] = a;
      }
    }
    for (int i = 0; i < k; ++i)
      for (int j1 = 0; j1 <= h; ++j1)
        for (int j2 = j1 + 1; j2 <= h; ++j2)
          arow[cat.arrow(aname(i, j1, j2))] =
              cat.arrow(aname((i + g) % k, j1, j2));
    act.act_vertex.push_back(std::move(vrow));
    act.act_arrow.push_back(std::move(arow));
  }
  return act;
}

CategoryAction product_action(const CategoryAction& a1,
                              const CategoryAction& a2) {
  const Category& c1 = a1.category;
  const Category& c2 = a2.category;

  CategoryBuilder b;
  for (VertexId u = 0; u < static_cast<VertexId>(c1.vertex_count()); ++u)
    for (VertexId v = 0; v < static_cast<VertexId>(c2.vertex_count()); ++v)
      b.add_vertex("(" + c1.vertex_name(u) + "," + c2.vertex_name(v) + ")");
  auto vat = [&](VertexId u, VertexId v) {
    return static_cast<VertexId>(u * c2.vertex_count() + v);
  };
  std::vector<std::vector<ArrowId>> aat(
      c1.arrow_count(), std::vector<ArrowId>(c2.arrow_count()));
  for (ArrowId x = 0; x < static_cast<ArrowId>(c1.arrow_count()); ++x)
    for (ArrowId y = 0; y < static_cast<ArrowId>(c2.arrow_count()); ++y)
      aat[x][y] =
          b.add_arrow("(" + c1.arrow_name(x) + "," + c2.arrow_name(y) + ")",
                      vat(c1.src(x), c2.src(y)), vat(c1.dst(x), c2.dst(y)));
  for (VertexId u = 0; u < static_cast<VertexId>(c1.vertex_count()); ++u)
    for (VertexId v = 0; v < static_cast<VertexId>(c2.vertex_count()); ++v)
      b.set_identity(vat(u, v), aat[c1.identity(u)][c2.identity(v)]);
  for (ArrowId x1 = 0; x1 < static_cast<ArrowId>(c1.arrow_count()); ++x1)
    for (ArrowId y1 = 0; y1 < static_cast<ArrowId>(c2.arrow_count()); ++y1)
      for (ArrowId x2 : c1.arrows_from(c1.dst(x1)))
        for (ArrowId y2 : c2.arrows_from(c2.dst(y1))) {
          auto cx = c1.compose(x1, x2);
          auto cy = c2.compose(y1, y2);
          if (cx && cy) b.set_compose(aat[x1][y1], aat[x2][y2], aat[*cx][*cy]);
        }

  CategoryAction act;
  act.category = b.build();
  act.group = FiniteGroup::direct_product(a1.group, a2.group);
  const auto n2 = static_cast<GroupId>(a2.group.size());
  for (GroupId g1 = 0; g1 < static_cast<GroupId>(a1.group.size()); ++g1)
    for (GroupId g2 = 0; g2 < n2; ++g2) {
      std::vector<VertexId> vrow(act.category.vertex_count());
      std::vector<ArrowId> arow(act.category.arrow_count());
      for (VertexId u = 0; u < static_cast<VertexId>(c1.vertex_count()); ++u)
        for (VertexId v = 0; v < static_cast<VertexId>(c2.vertex_count()); ++v)
          vrow[vat(u, v)] = vat(a1.av(g1, u), a2.av(g2, v));
      for (ArrowId x = 0; x < static_cast<ArrowId>(c1.arrow_count()); ++x)
        for (ArrowId y = 0; y < static_cast<ArrowId>(c2.arrow_count()); ++y)
          arow[aat[x][y]] = aat[a1.aa(g1, x)][a2.aa(g2, y)];
      act.act_vertex.push_back(std::move(vrow));
      act.act_arrow.push_back(std::move(arow));
    }
  return act;
}

CategoryAction gen_grid_bundle(int k1, int h1, int k2, int h2) {
  return product_action(gen_chain_bundle(k1, h1), gen_chain_bundle(k2, h2));
}

CategoryAction gen_groupoid_chain(int m, int h) {
  return product_action(gen_cyclic_groupoid(m), gen_chain_bundle(1, h));
}

namespace {

// k vertices with one absorbing loop each, rotated cyclically.
CategoryAction idempotent_core(int k) {
  CategoryBuilder b;
  for (int i = 0; i < k; ++i) b.add_vertex("e" + std::to_string(i));
  std::vector<ArrowId> loops;
  for (int i = 0; i < k; ++i)
    loops.push_back(b.add_arrow("eps" + std::to_string(i), i, i));
  b.ensure_identities();
  for (int i = 0; i < k; ++i) b.set_compose(loops[i], loops[i], loops[i]);

  CategoryAction act;
  act.category = b.build();
  act.group = FiniteGroup::cyclic(k, "r");
  for (int g = 0; g < k; ++g) {
    std::vector<VertexId> vrow(act.category.vertex_count());
    std::vector<ArrowId> arow(act.category.arrow_count());
    for (int i = 0; i < k; ++i) {
      vrow[i] = (i + g) % k;
      arow[loops[i]] = loops[(i + g) % k];
      arow[act.category.identity(i)] = act.category.identity((i + g) % k);
    }
    act.act_vertex.push_back(std::move(vrow));
    act.act_arrow.push_back(std::move(arow));
  }
  return act;
}

}  // namespace

CategoryAction gen_idempotent_bundle(int k, int h) {
  return product_action(idempotent_core(k), gen_chain_bundle(1, h));
}

CategoryAction gen_cyclic_groupoid(int m) {
  CategoryBuilder b;
  for (int i = 0; i < m; ++i) b.add_vertex("g" + std::to_string(i));
  std::vector<std::vector<ArrowId>> at(m, std::vector<ArrowId>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      at[i][j] = b.add_arrow("t" + std::to_string(i) + "-" + std::to_string(j),
                             i, j);
  for (int i = 0; i < m; ++i) b.set_identity(i, at[i][i]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) b.set_compose(at[i][j], at[j][l], at[i][l]);

  CategoryAction act;
  act.category = b.build();
  act.group = FiniteGroup::cyclic(m, "r");
  for (int g = 0; g < m; ++g) {
    std::vector<VertexId> vrow(act.category.vertex_count());
    std::vector<ArrowId> arow(act.category.arrow_count());
    for (int i = 0; i < m; ++i) vrow[i] = (i + g) % m;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        arow[at[i][j]] = at[(i + g) % m][(j + g) % m];
    act.act_vertex.push_back(std::move(vrow));
    act.act_arrow.push_back(std::move(arow));
  }
  return act;
}

ZnFold gen_zn_fold(int n, long long dmax, std::vector<long long> shift) {
  if (n < 1 || dmax < 0)
    throw DomainError(ErrorKind::BadInput, "need n >= 1 and dmax >= 0");
  if (shift.empty()) shift.assign(n, 0);
  if (static_cast<int>(shift.size()) != n)
    throw DomainError(ErrorKind::BadInput, "one shift per class");

  ZnFold out;
  out.n = n;
  out.dmax = dmax;
  const long long loops = dmax / n;       // loop layers 0..loops
  const long long max_len = n - 1 + loops * n;

  CategoryBuilder b;
  for (int c = 0; c < n; ++c) b.add_vertex("z" + std::to_string(c));
  std::map<std::pair<int, long long>, ArrowId> arrow_at;
  for (int c = 0; c < n; ++c)
    for (long long d = 0; d <= max_len; ++d) {
      ArrowId a = b.add_arrow(
          "d" + std::to_string(c) + "+" + std::to_string(d), c,
          static_cast<VertexId>((c + d) % n));
      arrow_at[{c, d}] = a;
      if (d == 0) b.set_identity(c, a);
    }
  for (int c = 0; c < n; ++c)
    for (long long d1 = 0; d1 <= max_len; ++d1)
      for (long long d2 = 0; d1 + d2 <= max_len; ++d2)
        b.set_compose(arrow_at.at({c, d1}),
                      arrow_at.at({(c + d1) % n, d2}),
                      arrow_at.at({c, d1 + d2}));
  out.window = b.build(/*partial=*/true);

  AnnotationGroup z = AnnotationGroup::fg_abelian(1, {});
  auto carry = [&](int c, long long d) {
    long long k = (c + d) / n;
    return z.from_vector({k + shift[c] - shift[(c + d) % n]});
  };
  out.rep.cat = out.window;
  out.rep.ann.group = z;
  out.rep.ann.label.resize(out.window.arrow_count());
  for (const auto& [key, a] : arrow_at)
    out.rep.ann.label[a] = carry(key.first, key.second);
  out.rep.faithful = annotation_faithful(out.rep.cat, out.rep.ann);

  // Flat representation: irreducible arrows d < n, po-group window of loops.
  FlatOrbit fl = flat_orbit_category(out.window);
  out.flat.base = fl.cat;
  out.flat.pogroup_style = true;
  std::vector<GroupElem> layer_window;
  for (long long k = 0; k <= loops; ++k)
    layer_window.push_back(z.from_vector({k}));
  out.flat.G = pogroup_window(z, layer_window);
  out.flat.gloops = loop_orbit_category(out.flat.G);
  out.flat.ann.group = z;
  out.flat.ann.label.resize(fl.cat.arrow_count());
  for (ArrowId fa = 0; fa < static_cast<ArrowId>(fl.cat.arrow_count()); ++fa)
    out.flat.ann.label[fa] = out.rep.ann.label[fl.to_parent[fa]];

  auto loop_arrow = [&](long long k) {
    return loop_of_diff(out.flat.G, out.flat.gloops, z.from_vector({k}));
  };
  for (ArrowId fa = 0; fa < static_cast<ArrowId>(fl.cat.arrow_count()); ++fa)
    for (ArrowId fb = 0; fb < static_cast<ArrowId>(fl.cat.arrow_count());
         ++fb) {
      if (fl.cat.dst(fa) != fl.cat.src(fb)) continue;
      ArrowId pa = fl.to_parent[fa], pb = fl.to_parent[fb];
      long long da = std::stoll(out.window.arrow_name(pa).substr(
          out.window.arrow_name(pa).find('+') + 1));
      long long db = std::stoll(out.window.arrow_name(pb).substr(
          out.window.arrow_name(pb).find('+') + 1));
      long long k = (da + db) / n;
      ArrowId l = loop_arrow(k);
      if (l != kNoArrow) out.flat.n_map[{fa, fb}] = l;
    }
  for (ArrowId fa = 0; fa < static_cast<ArrowId>(fl.cat.arrow_count()); ++fa)
    for (ArrowId l = 0;
         l < static_cast<ArrowId>(out.flat.gloops.cat.arrow_count()); ++l)
      out.flat.c_map[{fa, l}] = l;  // the annotation group is abelian
  return out;
}

FlatRep gen_shepard(int n) {
  if (n < 2) throw DomainError(ErrorKind::BadInput, "need n >= 2");
  ZnFold zn = gen_zn_fold(n, n);  // one loop layer
  const Category& base = zn.flat.base;

  std::vector<char> keep(base.arrow_count(), 0);
  auto len_of = [&](ArrowId a) {
    const std::string& nm = base.arrow_name(a);
    return std::stoll(nm.substr(nm.find('+') + 1));
  };
  for (ArrowId a = 0; a < static_cast<ArrowId>(base.arrow_count()); ++a)
    if (2 * len_of(a) < n) keep[a] = 1;  // 0 <= d < n/2, strict

  FlatRep out;
  out.base = restrict_arrows(base, keep);
  out.pogroup_style = true;
  out.G = zn.flat.G;
  out.gloops = zn.flat.gloops;
  out.ann = restrict_annotation(base, zn.flat.ann, out.base);
  for (ArrowId a = 0; a < static_cast<ArrowId>(out.base.arrow_count()); ++a)
    for (ArrowId b : out.base.arrows_from(out.base.dst(a))) {
      auto ab = out.base.compose(a, b);
      if (!ab) continue;
      ArrowId fa = base.arrow(out.base.arrow_name(a));
      ArrowId fb = base.arrow(out.base.arrow_name(b));
      out.n_map[{a, b}] = zn.flat.n_map.at({fa, fb});
    }
  for (ArrowId a = 0; a < static_cast<ArrowId>(out.base.arrow_count()); ++a)
    for (ArrowId l = 0;
         l < static_cast<ArrowId>(out.gloops.cat.arrow_count()); ++l)
      out.c_map[{a, l}] = l;
  return out;
}

DiatonicEmbedding gen_diatonic() {
  DiatonicEmbedding out;
  out.offsets = {0, 2, 4, 5, 7, 9, 11};
  ZnFold zn = gen_zn_fold(12, 12);
  out.target = zn.flat.base;

  CategoryBuilder b;
  for (int i = 0; i < 7; ++i) b.add_vertex("s" + std::to_string(i));
  std::vector<std::vector<ArrowId>> at(7, std::vector<ArrowId>(7));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      at[i][j] = b.add_arrow(
          "t" + std::to_string(i) + "-" + std::to_string(j), i, j);
      if (i == j) b.set_identity(i, at[i][j]);
    }
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int l = 0; l < 7; ++l) b.set_compose(at[i][j], at[j][l], at[i][l]);
  out.scale = b.build();

  out.emb.vmap.resize(7);
  out.emb.amap.resize(out.scale.arrow_count());
  for (int i = 0; i < 7; ++i)
    out.emb.vmap[i] = out.target.vertex("z" + std::to_string(out.offsets[i]));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      int d = ((out.offsets[j] - out.offsets[i]) % 12 + 12) % 12;
      out.emb.amap[at[i][j]] = out.target.arrow(
          "d" + std::to_string(out.offsets[i]) + "+" + std::to_string(d));
    }
  return out;
}

FlatRep gen_tonnetz(int third_period) {
  if (third_period != 2 && third_period != 3)
    throw DomainError(ErrorKind::BadInput, "third period must be 2 or 3");
  const int q2 = 12, q3 = third_period;

  CategoryBuilder b;
  auto vname = [&](int c2, int c3) {
    return "v" + std::to_string(c2) + ":" + std::to_string(c3);
  };
  for (int c2 = 0; c2 < q2; ++c2)
    for (int c3 = 0; c3 < q3; ++c3) b.add_vertex(vname(c2, c3));
  auto vid = [&](int c2, int c3) {
    return static_cast<VertexId>(c2 * q3 + c3);
  };
  std::map<std::tuple<int, int, int, int>, ArrowId> at;
  for (int c2 = 0; c2 < q2; ++c2)
    for (int c3 = 0; c3 < q3; ++c3)
      for (int d2 = 0; d2 < q2; ++d2)
        for (int d3 = 0; d3 < q3; ++d3) {
          ArrowId a = b.add_arrow("w" + std::to_string(c2) + ":" +
                                      std::to_string(c3) + "+" +
                                      std::to_string(d2) + ":" +
                                      std::to_string(d3),
                                  vid(c2, c3),
                                  vid((c2 + d2) % q2, (c3 + d3) % q3));
          at[{c2, c3, d2, d3}] = a;
          if (d2 == 0 && d3 == 0) b.set_identity(vid(c2, c3), a);
        }
  for (const auto& [key, a] : at) {
    auto [c2, c3, d2, d3] = key;
    int e2 = (c2 + d2) % q2, e3 = (c3 + d3) % q3;
    for (int f2 = 0; f2 < q2; ++f2)
      for (int f3 = 0; f3 < q3; ++f3)
        b.set_compose(a, at.at({e2, e3, f2, f3}),
                      at.at({c2, c3, (d2 + f2) % q2, (d3 + f3) % q3}));
  }

  FlatRep out;
  out.base = b.build();
  out.pogroup_style = true;
  AnnotationGroup g = AnnotationGroup::fg_abelian(3, {});
  std::vector<GroupElem> layers;
  for (long long k1 = 0; k1 <= 1; ++k1)
    for (long long k2 = 0; k2 <= 1; ++k2)
      for (long long k3 = 0; k3 <= 1; ++k3)
        layers.push_back(g.from_vector({k1, k2, k3}));
  out.G = pogroup_window(g, layers);
  out.gloops = loop_orbit_category(out.G);
  out.ann.group = g;
  out.ann.label.resize(out.base.arrow_count());
  for (const auto& [key, a] : at) {
    auto [c2, c3, d2, d3] = key;
    out.ann.label[a] = g.from_vector(
        {0, static_cast<long long>((c2 + d2) / q2),
         static_cast<long long>((c3 + d3) / q3)});
  }
  for (const auto& [k1, a] : at) {
    auto [c2, c3, d2, d3] = k1;
    int e2 = (c2 + d2) % q2, e3 = (c3 + d3) % q3;
    for (int f2 = 0; f2 < q2; ++f2)
      for (int f3 = 0; f3 < q3; ++f3) {
        ArrowId bb = at.at({e2, e3, f2, f3});
        GroupElem diff = g.from_vector({0,
                                        static_cast<long long>((d2 + f2) / q2),
                                        static_cast<long long>((d3 + f3) / q3)});
        ArrowId l = loop_of_diff(out.G, out.gloops, diff);
        if (l != kNoArrow) out.n_map[{a, bb}] = l;
      }
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(out.base.arrow_count()); ++a)
    for (ArrowId l = 0;
         l < static_cast<ArrowId>(out.gloops.cat.arrow_count()); ++l)
      out.c_map[{a, l}] = l;
  return out;
}

VertexId LatticeWindow::cls(int i, int j) const {
  return static_cast<VertexId>(((i % p + p) % p) * q + ((j % q + q) % q));
}

ArrowId LatticeWindow::step(int i, int j, int d1, int d2) const {
  if (d1 < 0 || d1 > w1 || d2 < 0 || d2 > w2) return kNoArrow;
  return arrow_index_[cls(i, j)][d1 * (w2 + 1) + d2];
}

LatticeWindow gen_lattice_window(int p, int q, int w1, int w2) {
  LatticeWindow out;
  out.p = p;
  out.q = q;
  out.w1 = w1;
  out.w2 = w2;

  CategoryBuilder b;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      b.add_vertex("l" + std::to_string(i) + ":" + std::to_string(j));
  out.arrow_index_.assign(p * q, std::vector<ArrowId>((w1 + 1) * (w2 + 1)));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int d1 = 0; d1 <= w1; ++d1)
        for (int d2 = 0; d2 <= w2; ++d2) {
          VertexId src = static_cast<VertexId>(i * q + j);
          VertexId dst = static_cast<VertexId>(((i + d1) % p) * q +
                                               ((j + d2) % q));
          ArrowId a = b.add_arrow("m" + std::to_string(i) + ":" +
                                      std::to_string(j) + "+" +
                                      std::to_string(d1) + ":" +
                                      std::to_string(d2),
                                  src, dst);
          out.arrow_index_[i * q + j][d1 * (w2 + 1) + d2] = a;
          if (d1 == 0 && d2 == 0) b.set_identity(src, a);
        }
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j)
      for (int d1 = 0; d1 <= w1; ++d1)
        for (int d2 = 0; d2 <= w2; ++d2)
          for (int e1 = 0; d1 + e1 <= w1; ++e1)
            for (int e2 = 0; d2 + e2 <= w2; ++e2)
              b.set_compose(
                  out.arrow_index_[i * q + j][d1 * (w2 + 1) + d2],
                  out.arrow_index_[((i + d1) % p) * q + (j + d2) % q]
                                  [e1 * (w2 + 1) + e2],
                  out.arrow_index_[i * q + j][(d1 + e1) * (w2 + 1) + d2 + e2]);
  out.window = b.build(/*partial=*/true);
  return out;
}

ToneSystem gen_glued_tiles() {
  ToneSystem t;
  t.group = AnnotationGroup::fg_abelian(1, {});
  std::vector<long long> tile_a{0, 2, 4, 5, 7, 9, 11, 12};
  std::vector<long long> tile_b{7, 9, 11, 12, 14, 16, 18, 19};
  std::vector<long long> pitch;
  for (std::size_t i = 0; i < tile_a.size(); ++i) {
    t.tones.push_back("a" + std::to_string(i));
    pitch.push_back(tile_a[i]);
  }
  for (std::size_t i = 0; i < tile_b.size(); ++i) {
    t.tones.push_back("b" + std::to_string(i));
    pitch.push_back(tile_b[i]);
  }
  const auto n = t.tones.size();
  t.delta.assign(n, std::vector<GroupElem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.delta[i][j] = t.group.from_vector({pitch[j] - pitch[i]});
  return t;
}

ToneSystem gen_group_tones(int n) {
  ToneSystem t;
  FiniteGroup g = FiniteGroup::cyclic(n, "r");
  t.group = AnnotationGroup::wrap(g);
  for (int i = 0; i < n; ++i) t.tones.push_back(g.name(i));
  t.delta.assign(n, std::vector<GroupElem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t.delta[i][j] =
          t.group.from_table_id(g.mul(j, g.inv(i)));  // delta(a,b) = b a^-1
  return t;
}

}  // namespace orbifold
