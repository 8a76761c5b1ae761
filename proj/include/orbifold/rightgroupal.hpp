#pragma once

#include <vector>

#include "orbifold/action.hpp"
#include "orbifold/category.hpp"
#include "orbifold/group.hpp"

namespace orbifold {

/// A category whose vertices carry a group structure acting on the category
/// from the right (left-associative automorphism action). For infinite vertex
/// groups only a finite window is materialised; the action table is partial
/// where translation leaves the window.
struct RightGroupal {
  Category cat;
  AnnotationGroup vgroup;
  std::vector<GroupElem> vertex_elem;  // per vertex
  VertexId neutral_vertex = kNoVertex;
  std::vector<std::vector<ArrowId>> act;  // act[arrow][vertex], kNoArrow = outside window

  VertexId vertex_of(const GroupElem& e) const;
  GroupElem elem(VertexId v) const { return vertex_elem[v]; }
};

/// Group structure on the window, action laws, automorphism laws and the
/// hom-set translation property Mor(x,y) = Mor(1, y x^-1) . x, all checked
/// where the window admits them.
ValidationReport check_right_groupal(const RightGroupal& g);

/// Vertex category of x: the full subcategory on x^G with x^g . x^h = x^(gh)
/// and a . x^g = a^g. Requires a translative action.
RightGroupal vertex_category(const CategoryAction& A, VertexId x,
                             std::uint64_t budget = default_budget());

/// Moves the neutral element to vertex a: x ._a y = x a^-1 y. The categories
/// are isomorphic via x -> xa.
RightGroupal shift_neutral(const RightGroupal& g, VertexId a);

/// Simple order window over an fg-abelian group: vertices are the window
/// elements, one arrow u -> w whenever w - u lies in the nonnegative cone
/// (all free coordinates >= 0, torsion coordinates zero).
RightGroupal pogroup_window(const AnnotationGroup& group,
                            const std::vector<GroupElem>& window);

bool cone_nonneg(const AnnotationGroup& group, const GroupElem& e);

/// Single-vertex category of the loop orbits of a right-groupal category:
/// arrows are the arrows of G starting at the neutral vertex, concatenation
/// shifts the second factor to the end of the first.
struct LoopOrbitCategory {
  Category cat;                  // one vertex "1"
  std::vector<ArrowId> to_g;     // loop arrow -> arrow of G.cat
  std::vector<ArrowId> from_g;   // arrow of G.cat -> loop arrow or kNoArrow
};

LoopOrbitCategory loop_orbit_category(const RightGroupal& g);

/// Class invariant of a loop-orbit arrow: the vertex-group element of the end
/// of its representative (the start is neutral).
GroupElem loop_diff(const RightGroupal& g, const LoopOrbitCategory& loops,
                    ArrowId loop_arrow);

/// Loop-orbit arrow with the given class invariant; kNoArrow if absent. Only
/// meaningful when G is simple.
ArrowId loop_of_diff(const RightGroupal& g, const LoopOrbitCategory& loops,
                     const GroupElem& diff);

}  // namespace orbifold
