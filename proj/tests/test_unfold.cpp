#include <doctest.h>

#include <map>
#include <set>

#include "orbifold/musicgen.hpp"
#include "orbifold/unfolding.hpp"

using namespace orbifold;

namespace {

// One vertex with a loop of order two (l * l = id) annotated by the
// generator of Z2.
Representation z2_loop_rep() {
  CategoryBuilder b;
  b.add_vertex("x");
  b.add_arrow("l", "x", "x");
  b.ensure_identities();
  b.set_compose(b.arrow("l"), b.arrow("l"), b.arrow("id:x"));
  Representation rep;
  rep.cat = b.build();
  rep.ann.group = AnnotationGroup::wrap(FiniteGroup::cyclic(2, "g"));
  rep.ann.label.resize(rep.cat.arrow_count());
  rep.ann.label[rep.cat.arrow("l")] = rep.ann.group.from_table_id(1);
  rep.ann.label[rep.cat.arrow("id:x")] = rep.ann.group.neutral();
  return rep;
}

Representation all_neutral_rep(const Category& c, int group_order) {
  Representation rep;
  rep.cat = c;
  rep.ann.group = AnnotationGroup::wrap(FiniteGroup::cyclic(group_order, "g"));
  rep.ann.label.assign(c.arrow_count(), rep.ann.group.neutral());
  return rep;
}

int component_count(const Category& c) {
  std::vector<int> comp(c.vertex_count(), -1);
  int n = 0;
  for (VertexId v = 0; v < static_cast<VertexId>(c.vertex_count()); ++v) {
    if (comp[v] != -1) continue;
    std::vector<VertexId> stack{v};
    comp[v] = n;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (ArrowId a = 0; a < static_cast<ArrowId>(c.arrow_count()); ++a) {
        VertexId w = kNoVertex;
        if (c.src(a) == u) w = c.dst(a);
        if (c.dst(a) == u) w = c.src(a);
        if (w != kNoVertex && comp[w] == -1) {
          comp[w] = n;
          stack.push_back(w);
        }
      }
    }
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("check_annotation flags a flipped label") {
  CategoryAction a = gen_cyclic_groupoid(3);
  Representation rep = build_representation(a, choose_transversal(a));
  CHECK(check_annotation(rep.cat, rep.ann).ok());

  Representation bad = rep;
  // Flip one non-identity label on a composable chain.
  for (ArrowId x = 0; x < static_cast<ArrowId>(bad.cat.arrow_count()); ++x)
    if (!bad.cat.is_identity(x)) {
      bad.ann.label[x] = bad.ann.group.mul(bad.ann.label[x],
                                           bad.ann.group.from_table_id(1));
      break;
    }
  auto report = check_annotation(bad.cat, bad.ann);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().law == "annotation-contravariance");
}

TEST_CASE("unfold of the Z2 loop gives a two-cycle") {
  Unfolding u = unfold(z2_loop_rep());
  CHECK(u.cat.vertex_count() == 2);
  int nonid = 0;
  for (ArrowId a = 0; a < static_cast<ArrowId>(u.cat.arrow_count()); ++a)
    if (!u.cat.is_identity(a)) {
      CHECK(u.cat.src(a) != u.cat.dst(a));
      ++nonid;
    }
  CHECK(nonid == 2);
  CHECK(validate_category(u.cat).ok());  // includes associativity of .

  // Projection: a 2-to-1 covering, full and faithful.
  CatMorphism pi = projection(u);
  auto flags = check_morphism(u.cat, z2_loop_rep().cat, pi);
  CHECK(flags.valid);
  CHECK(flags.full);
  CHECK(flags.faithful);
  std::map<ArrowId, int> fibers;
  for (ArrowId a : pi.amap) fibers[a]++;
  for (const auto& [arrow, count] : fibers) CHECK(count == 2);

  // Induced action swaps the layers.
  CategoryAction ind = induced_action(u);
  CHECK(check_action(ind).ok());
  GroupId g = 1;
  for (VertexId v = 0; v < 2; ++v) CHECK(ind.av(g, v) != v);
}

TEST_CASE("unfold with an all-neutral annotation keeps layers separate") {
  Category c = gen_chain_bundle(1, 2).category;
  Unfolding u = unfold(all_neutral_rep(c, 3));
  CHECK(u.cat.vertex_count() == 3 * c.vertex_count());
  CHECK(u.cat.arrow_count() == 3 * c.arrow_count());
  CHECK(component_count(u.cat) == 3 * component_count(c));
}

TEST_CASE("unfold size and fiber invariants") {
  CategoryAction a = gen_chain_bundle(3, 2);
  Representation rep = build_representation(a, choose_transversal(a));
  Unfolding u = unfold(rep);
  CHECK(u.cat.arrow_count() == rep.cat.arrow_count() * a.group.size());
  CHECK(u.cat.vertex_count() == rep.cat.vertex_count() * a.group.size());
  CHECK(validate_category(u.cat).ok());
}

TEST_CASE("unfold requires a finite group") {
  Representation rep;
  rep.cat = gen_chain_bundle(1, 1).category;
  rep.ann.group = AnnotationGroup::fg_abelian(1, {});
  rep.ann.label.assign(rep.cat.arrow_count(), rep.ann.group.neutral());
  CHECK_THROWS_AS(unfold(rep), DomainError);
}

TEST_CASE("bounded_unfold: neutral window of an all-neutral annotation") {
  Category c = gen_chain_bundle(1, 2).category;
  Representation rep;
  rep.cat = c;
  rep.ann.group = AnnotationGroup::fg_abelian(1, {});
  rep.ann.label.assign(c.arrow_count(), rep.ann.group.neutral());
  Unfolding u = bounded_unfold(rep, {rep.ann.group.neutral()});
  CHECK(u.cat.vertex_count() == c.vertex_count());
  CHECK(u.cat.arrow_count() == c.arrow_count());
}

TEST_CASE("bounded_unfold: a three-octave window of the 12-TET fold") {
  ZnFold zn = gen_zn_fold(12, 24);
  auto window = box_window(zn.rep.ann.group, {{-1, 1}});
  Unfolding u = bounded_unfold(zn.rep, window);
  CHECK(u.cat.vertex_count() == 36);
  CHECK(validate_category(u.cat).ok());
}

TEST_CASE("bounded_unfold windows are monotone") {
  ZnFold zn = gen_zn_fold(4, 8);
  Unfolding small = bounded_unfold(zn.rep, box_window(zn.rep.ann.group, {{0, 0}}));
  Unfolding big = bounded_unfold(zn.rep, box_window(zn.rep.ann.group, {{0, 1}}));
  for (ArrowId a = 0; a < static_cast<ArrowId>(small.cat.arrow_count()); ++a) {
    auto img = big.cat.find_arrow(small.cat.arrow_name(a));
    REQUIRE(img.has_value());
  }
  for (const auto& [key, val] : small.cat.compose_table()) {
    auto in_big = big.cat.compose(big.cat.arrow(small.cat.arrow_name(key.first)),
                                  big.cat.arrow(small.cat.arrow_name(key.second)));
    REQUIRE(in_big.has_value());
    CHECK(big.cat.arrow_name(*in_big) == small.cat.arrow_name(val));
  }
}

TEST_CASE("kernel of the projection equals the induced orbit partition") {
  for (const CategoryAction& a :
       {gen_chain_bundle(3, 2), gen_cyclic_groupoid(3)}) {
    Representation rep = build_representation(a, choose_transversal(a));
    Unfolding u = unfold(rep);
    std::string witness;
    CHECK(kernel_equals_orbits(u, &witness));
  }
}

TEST_CASE("verify_roundtrips on bundles, products and groupoids") {
  for (const CategoryAction& a :
       {gen_chain_bundle(3, 4), gen_grid_bundle(2, 1, 2, 1),
        gen_cyclic_groupoid(4)}) {
    Transversal t = choose_transversal(a);
    RoundtripResult r = verify_roundtrips(a, t);
    CHECK(r.unfold_ok);
    CHECK(r.refold_ok);
  }
}

TEST_CASE("verify_roundtrips under the trivial group") {
  CategoryAction a = gen_chain_bundle(1, 3);
  RoundtripResult r = verify_roundtrips(a, choose_transversal(a));
  CHECK(r.unfold_ok);
  CHECK(r.refold_ok);
}

TEST_CASE("verify_roundtrips rejects non-semi-regular actions") {
  // The five-vertex example fixes vertex 3, so the reconstruction
  // hypotheses fail; this is reported rather than computed.
  FixK fk = gen_fix_k();
  CHECK_THROWS_AS(verify_roundtrips(fk.klein, Transversal{}), DomainError);
}

TEST_CASE("induced action of a bundle unfolding is translative") {
  CategoryAction a = gen_chain_bundle(3, 2);
  Representation rep = build_representation(a, choose_transversal(a));
  Unfolding u = unfold(rep);
  CategoryAction ind = induced_action(u);
  CHECK(check_action(ind).ok());
  CHECK(is_semiregular(ind).ok);
  CHECK(is_translative(ind).ok);
}
