#pragma once

#include <vector>

#include "orbifold/action.hpp"
#include "orbifold/morphism.hpp"
#include "orbifold/orbitfold.hpp"

namespace orbifold {

/// Category on pairs (x, g) / (a, g) with cod (a, g) = (cod a, A(a) g) and
/// (a, g) . (b, A(a) g) = (a*b, g).
struct Unfolding {
  Category cat;
  Representation rep;
  std::vector<VertexId> vertex_base;   // per unfolding vertex
  std::vector<GroupElem> vertex_layer;
  std::vector<ArrowId> arrow_base;     // per unfolding arrow
  std::vector<GroupElem> arrow_layer;
};

/// Total unfolding; the annotation group must be finite.
Unfolding unfold(const Representation& rep);

/// Finite-window unfolding for infinite annotation groups: vertices (x, g)
/// with g in the window, arrow (a, g) kept iff g and A(a) g lie in the
/// window. The result is a partial category.
Unfolding bounded_unfold(const Representation& rep,
                         const std::vector<GroupElem>& window);

/// Axis-aligned box window for fg-abelian groups: per-coordinate inclusive
/// ranges; torsion coordinates default to their full range.
std::vector<GroupElem> box_window(const AnnotationGroup& g,
                                  const std::vector<std::pair<long long, long long>>& free_ranges);

/// Right associative layer action (x,h)^g = (x,hg); requires a finite group.
CategoryAction induced_action(const Unfolding& u);

/// (x,g) -> x, (a,g) -> a; full and faithful.
CatMorphism projection(const Unfolding& u);

struct RoundtripResult {
  bool refold_ok = false;
  bool unfold_ok = false;
  CatMorphism unfold_witness;  // unfolding -> source category
  CatMorphism refold_witness;  // orbit(unfolding) -> orbit category
  std::string witness;
};

/// Checks both reconstruction statements: the unfolding of the built
/// representation is isomorphic to the source category, and refolding the
/// unfolding by the induced action gives the orbit category back.
RoundtripResult verify_roundtrips(const CategoryAction& A, const Transversal& T,
                                  std::uint64_t budget = default_budget());

/// ker(projection) arrow/vertex partitions equal the induced-action orbit
/// partitions (eq-style set identity, checked exactly).
bool kernel_equals_orbits(const Unfolding& u, std::string* witness = nullptr);

}  // namespace orbifold
