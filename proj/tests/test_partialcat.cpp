#include <doctest.h>

#include <random>
#include <set>

#include "orbifold/musicgen.hpp"
#include "orbifold/partialcat.hpp"

using namespace orbifold;

namespace {

// S = Z_n rotating the zn flat base (the chroma rotation).
CategoryAction rotation_action(const Category& base, int n) {
  CategoryAction act;
  act.category = base;
  act.group = FiniteGroup::cyclic(n, "r");
  auto shift_name = [&](const std::string& name, int g) {
    // vertices "z<c>", arrows "d<c>+<d>"
    if (name[0] == 'z') {
      int c = std::stoi(name.substr(1));
      return "z" + std::to_string((c + g) % n);
    }
    auto plus = name.find('+');
    int c = std::stoi(name.substr(1, plus - 1));
    return "d" + std::to_string((c + g) % n) + name.substr(plus);
  };
  for (int g = 0; g < n; ++g) {
    std::vector<VertexId> vrow(base.vertex_count());
    std::vector<ArrowId> arow(base.arrow_count());
    for (VertexId v = 0; v < static_cast<VertexId>(base.vertex_count()); ++v)
      vrow[v] = base.vertex(shift_name(base.vertex_name(v), g));
    for (ArrowId a = 0; a < static_cast<ArrowId>(base.arrow_count()); ++a)
      arow[a] = base.arrow(shift_name(base.arrow_name(a), g));
    act.act_vertex.push_back(std::move(vrow));
    act.act_arrow.push_back(std::move(arow));
  }
  return act;
}

Category drop_arrows(const Category& k, const std::set<std::string>& names) {
  std::vector<char> keep(k.arrow_count(), 1);
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a)
    if (names.count(k.arrow_name(a))) keep[a] = 0;
  return restrict_arrows(k, keep);
}

CatMorphism embedding_by_name(const Category& p, const Category& k) {
  CatMorphism emb;
  emb.vmap.resize(p.vertex_count());
  emb.amap.resize(p.arrow_count());
  for (VertexId v = 0; v < static_cast<VertexId>(p.vertex_count()); ++v)
    emb.vmap[v] = k.vertex(p.vertex_name(v));
  for (ArrowId a = 0; a < static_cast<ArrowId>(p.arrow_count()); ++a)
    emb.amap[a] = k.arrow(p.arrow_name(a));
  return emb;
}

}  // namespace

TEST_CASE("check_partial_subcategory: full subgraph and violations") {
  Category k = gen_zn_fold(3, 3).flat.base;
  std::vector<char> all(k.arrow_count(), 1);
  Category p = restrict_arrows(k, all);
  CHECK(check_partial_subcategory(p, k, embedding_by_name(p, k)).ok());

  // Dropping an identity is a violation.
  CategoryBuilder b;
  b.add_vertex("x");
  b.add_vertex("y");
  b.add_arrow("e", "x", "y");
  ArrowId idx = b.add_arrow("id:x", "x", "x");
  b.set_identity(b.vertex("x"), idx);
  Category bad = b.build(/*partial=*/true);
  auto report = validate_category(bad);
  CHECK_FALSE(report.ok());

  // Marking a concatenation undefined although the composite is kept.
  Category sub = restrict_arrows(k, all);
  CategoryBuilder b2;
  for (VertexId v = 0; v < static_cast<VertexId>(sub.vertex_count()); ++v)
    b2.add_vertex(sub.vertex_name(v));
  for (ArrowId a = 0; a < static_cast<ArrowId>(sub.arrow_count()); ++a)
    b2.add_arrow(sub.arrow_name(a), sub.src(a), sub.dst(a));
  for (VertexId v = 0; v < static_cast<VertexId>(sub.vertex_count()); ++v)
    b2.set_identity(v, sub.identity(v));
  bool dropped_one = false;
  for (const auto& [key, val] : sub.compose_table()) {
    if (!dropped_one && !sub.is_identity(key.first) &&
        !sub.is_identity(key.second)) {
      dropped_one = true;
      continue;
    }
    b2.set_compose(key.first, key.second, val);
  }
  Category p2 = b2.build(/*partial=*/true);
  auto rep2 = check_partial_subcategory(p2, k, embedding_by_name(p2, k));
  CHECK_FALSE(rep2.ok());
}

TEST_CASE("check_defining: the whole category is fully defining") {
  Category k = gen_chain_bundle(1, 3).category;
  std::vector<char> all(k.arrow_count(), 1);
  Category p = restrict_arrows(k, all);
  DefiningResult res = check_defining(p, k, 2);
  CHECK(res.fully == TriState::True);
  CHECK(res.flat == TriState::True);  // no loops: the congruences coincide
}

TEST_CASE("check_defining: cover relation of a chain is fully defining") {
  Category k = gen_chain_bundle(1, 4).category;
  // Keep only the covers s0:j-(j+1).
  std::vector<char> keep(k.arrow_count(), 0);
  for (int j = 0; j < 4; ++j)
    keep[k.arrow("s0:" + std::to_string(j) + "-" + std::to_string(j + 1))] = 1;
  Category p = restrict_arrows(k, keep);
  DefiningResult res = check_defining(p, k, 4);
  CHECK(res.fully == TriState::True);

  // Transitive closure oracle: at max_len 3 the long arrow is missing.
  DefiningResult shorter = check_defining(p, k, 3);
  CHECK(shorter.fully != TriState::True);
}

TEST_CASE("check_defining: the 12-TET step graph is flat defining") {
  ZnFold zn = gen_zn_fold(12, 24);
  const Category& k = zn.flat.base;
  std::vector<char> keep(k.arrow_count(), 0);
  for (ArrowId a = 0; a < static_cast<ArrowId>(k.arrow_count()); ++a) {
    const std::string& n = k.arrow_name(a);
    if (n.substr(n.find('+') + 1) == "1") keep[a] = 1;
  }
  Category p = restrict_arrows(k, keep);
  DefiningResult res = check_defining(p, k, 23);
  CHECK(res.flat == TriState::True);
  CHECK(res.fully != TriState::True);
}

TEST_CASE("property catalogue of the 12-TET flat representation") {
  ZnFold zn = gen_zn_fold(12, 24);
  CategoryAction rot = rotation_action(zn.flat.base, 12);
  REQUIRE(check_action(rot).ok());
  PropertyFlags f = property_catalogue(zn.flat.base, zn.flat.ann, &rot,
                                       &zn.flat.base, 2);
  CHECK(f.faithful == TriState::True);
  CHECK(f.simple == TriState::True);
  CHECK(f.antisymmetric == TriState::True);
  CHECK(f.s_symmetric == TriState::True);
  CHECK(f.translatively_s_symmetric == TriState::True);
  CHECK(f.complete == TriState::True);
  // The full cyclic relation is reflexive and transitive but not
  // antisymmetric as a relation, so it is not an ordered set.
  CHECK(f.ordered == TriState::False);
}

TEST_CASE("property catalogue of the Shepard representation") {
  FlatRep sh = gen_shepard(12);
  PropertyFlags f = property_catalogue(sh.base, sh.ann, nullptr, nullptr, 2);
  CHECK(f.antisymmetric == TriState::True);
  CHECK(f.ordered == TriState::False);  // not transitive
  CHECK(f.simple == TriState::True);
  for (VertexId v = 0; v < static_cast<VertexId>(sh.base.vertex_count()); ++v)
    CHECK(sh.base.arrows_from(v).size() == 6);  // d = 0..5
}

TEST_CASE("discrete partial categories are not complete") {
  Category k = gen_zn_fold(3, 3).flat.base;
  std::vector<char> none(k.arrow_count(), 0);
  Category p = restrict_arrows(k, none);
  Annotation ann;
  ann.group = AnnotationGroup::fg_abelian(1, {});
  ann.label.assign(p.arrow_count(), ann.group.neutral());
  PropertyFlags f = property_catalogue(p, ann, nullptr, &k, 3);
  CHECK(f.complete == TriState::False);
}

TEST_CASE("faithful representations stay faithful under deletion") {
  ZnFold zn = gen_zn_fold(5, 10);
  REQUIRE(annotation_faithful(zn.flat.base, zn.flat.ann));
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    std::vector<char> keep(zn.flat.base.arrow_count(), 1);
    for (std::size_t a = 0; a < keep.size(); ++a)
      if (rng() % 3 == 0) keep[a] = 0;
    Category sub = restrict_arrows(zn.flat.base, keep);
    Annotation ann = restrict_annotation(zn.flat.base, zn.flat.ann, sub);
    CHECK(annotation_faithful(sub, ann));
    CHECK(annotation_antisymmetric(sub, ann));  // down-closed as well
  }
}

TEST_CASE("search_maximal: no constraints recovers the full base") {
  ZnFold zn = gen_zn_fold(4, 8);
  MaximalSubrep m = search_maximal(zn.flat.base, zn.flat.ann, nullptr, false,
                                   false, false, false, false, 2);
  CHECK(m.sub.arrow_count() == zn.flat.base.arrow_count());
}

TEST_CASE("search_maximal: a chain stays itself") {
  Category chain = gen_chain_bundle(1, 3).category;
  Annotation ann;
  ann.group = AnnotationGroup::fg_abelian(1, {});
  ann.label.assign(chain.arrow_count(), ann.group.neutral());
  // Give distinct labels per hom so the annotation is faithful.
  MaximalSubrep m = search_maximal(chain, ann, nullptr, false, true, true,
                                   false, false, 2);
  CHECK(m.sub.arrow_count() == chain.arrow_count());
}

TEST_CASE("search_maximal on 12-TET with the antisymmetry flags") {
  // The full flat base is faithful, antisymmetric, rotation symmetric and
  // complete, so the ascent reaches the whole base; every chroma system
  // below it (such as the half-step system) is non-maximal.
  ZnFold zn = gen_zn_fold(12, 24);
  CategoryAction rot = rotation_action(zn.flat.base, 12);
  MaximalSubrep m = search_maximal(zn.flat.base, zn.flat.ann, &rot,
                                   /*faithful=*/true, /*simple=*/true,
                                   /*ordered=*/false, /*antisymmetric=*/true,
                                   /*s_symmetric=*/true, 2);
  CHECK(m.sub.arrow_count() == zn.flat.base.arrow_count());
  CHECK(m.flags.antisymmetric == TriState::True);
  CHECK(m.flags.complete == TriState::True);

  // Exhaustive oracle over rotation-invariant difference sets: every
  // invariant subrepresentation is antisymmetric (the full circle always
  // gains an octave), so the unique maximal one keeps all differences.
  for (int mask = 0; mask < (1 << 11); ++mask) {
    std::vector<char> keep(zn.flat.base.arrow_count(), 0);
    for (ArrowId a = 0; a < static_cast<ArrowId>(zn.flat.base.arrow_count());
         ++a) {
      const std::string& nm = zn.flat.base.arrow_name(a);
      int d = std::stoi(nm.substr(nm.find('+') + 1));
      if (d > 0 && (mask >> (d - 1)) & 1) keep[a] = 1;
    }
    Category sub = restrict_arrows(zn.flat.base, keep);
    Annotation ann = restrict_annotation(zn.flat.base, zn.flat.ann, sub);
    CHECK(annotation_antisymmetric(sub, ann));
  }
}

TEST_CASE("sigma classes") {
  // Group tone system: delta(a, b) = b a^-1, cancellation gives singletons.
  ToneSystem g = gen_group_tones(6);
  CHECK(check_tone_system(g).ok());
  auto cls = sigma_classes(g);
  CHECK(std::set<int>(cls.begin(), cls.end()).size() == 6);

  // Glued tiles: overlapping pitches identified, class count drops.
  ToneSystem t = gen_glued_tiles();
  CHECK(check_tone_system(t).ok());
  auto tc = sigma_classes(t);
  std::set<int> classes(tc.begin(), tc.end());
  CHECK(tc.size() == 16);
  CHECK(classes.size() == 12);
  CHECK(classes.size() < tc.size());
}

TEST_CASE("S-symmetric subcategories are closed under intersection") {
  ZnFold zn = gen_zn_fold(6, 12);
  CategoryAction rot = rotation_action(zn.flat.base, 6);
  auto invariant_keep = [&](std::initializer_list<int> ds) {
    std::vector<char> keep(zn.flat.base.arrow_count(), 0);
    for (ArrowId a = 0; a < static_cast<ArrowId>(zn.flat.base.arrow_count());
         ++a) {
      const std::string& nm = zn.flat.base.arrow_name(a);
      int d = std::stoi(nm.substr(nm.find('+') + 1));
      for (int want : ds)
        if (d == want) keep[a] = 1;
    }
    return keep;
  };
  auto k1 = invariant_keep({1, 2});
  auto k2 = invariant_keep({2, 3});
  std::vector<char> both(k1.size());
  for (std::size_t i = 0; i < k1.size(); ++i) both[i] = k1[i] && k2[i];
  // The intersection is again invariant under every rotation.
  Category sub = restrict_arrows(zn.flat.base, both);
  for (GroupId g = 0; g < static_cast<GroupId>(rot.group.size()); ++g)
    for (ArrowId a = 0; a < static_cast<ArrowId>(zn.flat.base.arrow_count());
         ++a)
      if (both[a]) CHECK(both[rot.aa(g, a)]);
  CHECK(sub.arrow_count() == 6 + 6);  // d=2 arrows plus identities
}

TEST_CASE("antisymmetry is preserved along unions of chains") {
  ZnFold zn = gen_zn_fold(12, 24);
  std::vector<std::vector<char>> chain;
  std::vector<char> keep(zn.flat.base.arrow_count(), 0);
  for (int d = 1; d <= 5; ++d) {
    for (ArrowId a = 0; a < static_cast<ArrowId>(zn.flat.base.arrow_count());
         ++a) {
      const std::string& nm = zn.flat.base.arrow_name(a);
      if (std::stoi(nm.substr(nm.find('+') + 1)) == d) keep[a] = 1;
    }
    Category sub = restrict_arrows(zn.flat.base, keep);
    Annotation ann = restrict_annotation(zn.flat.base, zn.flat.ann, sub);
    CHECK(annotation_antisymmetric(sub, ann));
  }
}
