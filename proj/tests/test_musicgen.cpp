#include <doctest.h>

#include <set>

#include "orbifold/json_io.hpp"
#include "orbifold/musicgen.hpp"
#include "orbifold/orbitfold.hpp"
#include "orbifold/partialcat.hpp"

using namespace orbifold;

TEST_CASE("generators are deterministic") {
  CHECK(canonical_dump(category_to_json(gen_fix_k().cat)) ==
        canonical_dump(category_to_json(gen_fix_k().cat)));
  CHECK(canonical_dump(flat_rep_to_json(gen_zn_fold(4, 8).flat)) ==
        canonical_dump(flat_rep_to_json(gen_zn_fold(4, 8).flat)));
  CHECK(canonical_dump(action_to_json(gen_grid_bundle(2, 1, 2, 1))) ==
        canonical_dump(action_to_json(gen_grid_bundle(2, 1, 2, 1))));
}

TEST_CASE("fix_k: shape, validity, fold behaviour") {
  FixK fk = gen_fix_k();
  CHECK(fk.cat.vertex_count() == 5);
  int nonid = 0;
  for (ArrowId a = 0; a < static_cast<ArrowId>(fk.cat.arrow_count()); ++a)
    if (!fk.cat.is_identity(a)) ++nonid;
  CHECK(nonid == 8);
  CHECK(validate_category(fk.cat).ok());
  CHECK(check_action(fk.klein).ok());
  CHECK(check_action(fk.cyclic).ok());
  CHECK(is_foldable(fk.klein).ok);
  CHECK_FALSE(is_foldable(fk.cyclic).ok);
}

TEST_CASE("bundle generators pass the action predicates") {
  for (const CategoryAction& a :
       {gen_chain_bundle(1, 1), gen_chain_bundle(3, 4),
        gen_grid_bundle(2, 1, 2, 1), gen_cyclic_groupoid(3),
        gen_groupoid_chain(2, 1)}) {
    CHECK(check_action(a).ok());
    CHECK(is_semiregular(a).ok);
    CHECK(is_foldable(a).ok);
    CHECK(is_translative(a).ok);
  }
}

TEST_CASE("chain bundle sizes") {
  CHECK(gen_chain_bundle(1, 1).category.vertex_count() == 2);
  CHECK(gen_chain_bundle(3, 4).category.vertex_count() == 15);
}

TEST_CASE("zn fold shapes") {
  ZnFold zn12 = gen_zn_fold(12, 24);
  CHECK(zn12.window.vertex_count() == 12);
  CHECK(validate_category(zn12.window).ok());
  CHECK(check_annotation(zn12.rep.cat, zn12.rep.ann).ok());
  CHECK(is_simple(zn12.flat.base));

  // Window lengths run to n - 1 + dmax; the length 9 arrow of the (4, 8)
  // window exists and the octave loop is labelled by one generator.
  ZnFold zn4 = gen_zn_fold(4, 8);
  CHECK(zn4.window.find_arrow("d1+9").has_value());
  ArrowId octave = zn4.window.arrow("d0+4");
  CHECK(zn4.rep.ann.label[octave].vec == std::vector<long long>{1});
  ArrowId step5 = zn4.window.arrow("d0+5");
  CHECK(zn4.rep.ann.label[step5].vec == std::vector<long long>{1});
}

TEST_CASE("zn fold with shifted transversal changes carries consistently") {
  std::vector<long long> shift(4, 0);
  shift[1] = 2;
  ZnFold zn = gen_zn_fold(4, 8, shift);
  CHECK(check_annotation(zn.rep.cat, zn.rep.ann).ok());
  // Arithmetic oracle: carry of d0+1 (0 -> 1) is floor(1/4) - shift[1] = -2.
  CHECK(zn.rep.ann.label[zn.window.arrow("d0+1")].vec ==
        std::vector<long long>{-2});
}

TEST_CASE("shepard relation: strict half-circle bound") {
  FlatRep sh = gen_shepard(12);
  for (VertexId v = 0; v < static_cast<VertexId>(sh.base.vertex_count()); ++v)
    CHECK(sh.base.arrows_from(v).size() == 6);
  CHECK(annotation_antisymmetric(sh.base, sh.ann));
  CHECK(check_flat_rep(sh).ok());

  FlatRep tiny = gen_shepard(2);  // d < 1: identities only
  for (VertexId v = 0; v < static_cast<VertexId>(tiny.base.vertex_count());
       ++v) {
    CHECK(tiny.base.arrows_from(v).size() == 1);
    CHECK(tiny.base.is_identity(tiny.base.arrows_from(v).front()));
  }
}

TEST_CASE("diatonic embedding") {
  DiatonicEmbedding d = gen_diatonic();
  CHECK(d.offsets == std::vector<int>{0, 2, 4, 5, 7, 9, 11});
  auto flags = check_morphism(d.scale, d.target, d.emb);
  CHECK(flags.valid);
  CHECK(flags.faithful);
  std::set<VertexId> image(d.emb.vmap.begin(), d.emb.vmap.end());
  CHECK(image.size() == 7);  // vertex-injective

  // No nontrivial rotation of Z12 fixes the scale set.
  std::set<int> offsets(d.offsets.begin(), d.offsets.end());
  for (int r = 1; r < 12; ++r) {
    std::set<int> rotated;
    for (int o : d.offsets) rotated.insert((o + r) % 12);
    CHECK(rotated != offsets);
  }
}

TEST_CASE("tonnetz: torus of chromas") {
  FlatRep t = gen_tonnetz();
  CHECK(t.base.vertex_count() == 36);  // 1 * 12 * 3
  CHECK(t.base.find_vertex("v0:0").has_value());  // neutral class present
  CHECK(is_simple(t.base));
  CHECK(check_flat_rep(t).ok());
  CHECK(annotation_antisymmetric(t.base, t.ann));

  FlatRep t2 = gen_tonnetz(2);
  CHECK(t2.base.vertex_count() == 24);
}

TEST_CASE("lattice window: the two introduction paths and the antisymmetry failure") {
  LatticeWindow lw = gen_lattice_window(4, 3, 7, 7);
  CHECK(validate_category(lw.window).ok());
  CHECK_FALSE(is_simple(lw.window));  // genuinely a multigraph

  // Path A: (0,0)->(0,1)->(1,1)->(2,1)->(3,1).
  ArrowId pa = compose_path(
      lw.window, {lw.step(0, 0, 0, 1), lw.step(0, 1, 1, 0),
                  lw.step(1, 1, 1, 0), lw.step(2, 1, 1, 0)});
  // Path B: (0,0)->(1,0)->(2,0)->(3,0)->(3,1)->(0,1).
  ArrowId pb = compose_path(
      lw.window, {lw.step(0, 0, 1, 0), lw.step(1, 0, 1, 0),
                  lw.step(2, 0, 1, 0), lw.step(3, 0, 0, 1),
                  lw.step(3, 1, 1, 0)});
  CHECK(lw.window.src(pa) == lw.cls(0, 0));
  CHECK(lw.window.dst(pa) == lw.cls(3, 1));
  CHECK(lw.window.src(pb) == lw.cls(0, 0));
  CHECK(lw.window.dst(pb) == lw.cls(0, 1));

  // Two essentially different class paths from (0,0) to (0,1): the single
  // up-step and the five-step detour with difference (4,1).
  CHECK(lw.step(0, 0, 0, 1) != kNoArrow);
  CHECK(lw.step(0, 0, 4, 1) != kNoArrow);
  CHECK(lw.window.src(lw.step(0, 0, 4, 1)) == lw.cls(0, 0));
  CHECK(lw.window.dst(lw.step(0, 0, 4, 1)) == lw.cls(0, 1));
  CHECK(pb == lw.step(0, 0, 4, 1));

  // The factored simple relation violates antisymmetry: (0,1) <-> (3,1).
  auto props = relation_properties(lw.window);
  CHECK_FALSE(props.antisymmetric);
  CHECK(lw.step(0, 1, 3, 0) != kNoArrow);  // (0,1) -> (3,1)
  CHECK(lw.window.dst(lw.step(0, 1, 3, 0)) == lw.cls(3, 1));
  CHECK(lw.step(3, 1, 1, 0) != kNoArrow);  // (3,1) -> (0,1)
  CHECK(lw.window.dst(lw.step(3, 1, 1, 0)) == lw.cls(0, 1));
}

TEST_CASE("glued tiles tone system") {
  ToneSystem t = gen_glued_tiles();
  CHECK(t.tones.size() == 16);
  CHECK(check_tone_system(t).ok());
}
