#include <doctest.h>

#include "orbifold/dot.hpp"
#include "orbifold/json_io.hpp"
#include "orbifold/musicgen.hpp"
#include "orbifold/orbitfold.hpp"

using namespace orbifold;

TEST_CASE("category json round trip is byte stable") {
  FixK fk = gen_fix_k();
  Json j = category_to_json(fk.cat);
  Category back = category_from_json(j);
  CHECK(canonical_dump(category_to_json(back)) == canonical_dump(j));
  CHECK(back.vertex_count() == fk.cat.vertex_count());
  CHECK(back.compose_table() == fk.cat.compose_table());
}

TEST_CASE("partial categories keep their flag through json") {
  ZnFold zn = gen_zn_fold(3, 6);
  Json j = category_to_json(zn.window);
  CHECK(j.value("partial", false));
  Category back = category_from_json(j);
  CHECK(back.partial());
  CHECK(canonical_dump(category_to_json(back)) == canonical_dump(j));
}

TEST_CASE("action json round trip") {
  FixK fk = gen_fix_k();
  Json j = action_to_json(fk.klein);
  CategoryAction back = action_from_json(j);
  CHECK(check_action(back).ok());
  CHECK(canonical_dump(action_to_json(back)) == canonical_dump(j));
}

TEST_CASE("representation json round trip") {
  CategoryAction a = gen_cyclic_groupoid(3);
  Representation rep = build_representation(a, choose_transversal(a));
  Json j = representation_to_json(rep);
  Representation back = representation_from_json(j);
  CHECK(check_annotation(back.cat, back.ann).ok());
  CHECK(canonical_dump(representation_to_json(back)) == canonical_dump(j));
}

TEST_CASE("fg-abelian group json round trip") {
  auto g = AnnotationGroup::fg_abelian(2, {12, 2});
  Json j = annotation_group_to_json(g);
  CHECK(annotation_group_from_json(j) == g);
}

TEST_CASE("flat representation json round trip") {
  ZnFold zn = gen_zn_fold(4, 8);
  Json j = flat_rep_to_json(zn.flat);
  FlatRep back = flat_rep_from_json(j);
  CHECK(check_flat_rep(back).ok());
  CHECK(canonical_dump(flat_rep_to_json(back)) == canonical_dump(j));
}

TEST_CASE("dot export of fix_k") {
  FixK fk = gen_fix_k();
  std::string dot = to_dot(fk.cat);
  // 5 nodes, 8 labelled edges, identities suppressed.
  std::size_t edges = 0, pos = 0;
  while ((pos = dot.find("->", pos)) != std::string::npos) {
    ++edges;
    pos += 2;
  }
  CHECK(edges == 8);
  std::string with_ids = to_dot(fk.cat, /*include_identities=*/true);
  edges = 0;
  pos = 0;
  while ((pos = with_ids.find("->", pos)) != std::string::npos) {
    ++edges;
    pos += 2;
  }
  CHECK(edges == 13);

  OrbitCategory oc = orbit_category(fk.klein);
  std::string folded = to_dot(oc.cat);
  std::size_t nodes = 0;
  pos = 0;
  while ((pos = folded.find(";\n", pos)) != std::string::npos) {
    ++nodes;
    pos += 2;
  }
  CHECK(nodes == 3 + 3);  // 3 vertex lines + 3 non-identity edges
}
