#pragma once

#include <map>
#include <string>
#include <vector>

#include "orbifold/category.hpp"
#include "orbifold/group.hpp"
#include "orbifold/morphism.hpp"

namespace orbifold {

/// A finite group acting by category automorphisms, stored as explicit tables
/// for every group element (left associative action: a^(gh) = (a^g)^h).
struct CategoryAction {
  Category category;
  FiniteGroup group;
  std::vector<std::vector<VertexId>> act_vertex;  // [g][v]
  std::vector<std::vector<ArrowId>> act_arrow;    // [g][a]

  VertexId av(GroupId g, VertexId v) const { return act_vertex[g][v]; }
  ArrowId aa(GroupId g, ArrowId a) const { return act_arrow[g][a]; }
};

/// Exhaustive check of the group axioms, the action laws and that every
/// element acts as a category automorphism.
ValidationReport check_action(const CategoryAction& A);

struct OrbitPartitions {
  std::vector<int> vertex_orbit;
  std::vector<int> arrow_orbit;
  int n_vertex_orbits = 0;
  int n_arrow_orbits = 0;
  std::vector<std::vector<VertexId>> vertex_members;
  std::vector<std::vector<ArrowId>> arrow_members;
};

OrbitPartitions orbits(const CategoryAction& A);

struct SemiRegularResult {
  bool ok = false;
  std::string witness;  // fixing pair when false
};

/// True iff only the neutral element fixes a vertex or an arrow.
SemiRegularResult is_semiregular(const CategoryAction& A);

struct FoldableResult {
  bool ok = false;
  ArrowId a = kNoArrow, b = kNoArrow, c = kNoArrow, d = kNoArrow;
  std::string witness;  // violating quadruple when false
};

/// Definition "foldable": for arrows with a^G = c^G and b^G = d^G whose
/// compositions exist, (a*b)^G = (c*d)^G.
FoldableResult is_foldable(const CategoryAction& A);

/// Full subcategory spanned by a set of vertices, with index maps back into
/// the parent category.
struct Subcategory {
  Category cat;
  std::vector<VertexId> vertex_to_parent;
  std::vector<ArrowId> arrow_to_parent;
  std::vector<VertexId> vertex_from_parent;  // parent -> sub or kNoVertex
  std::vector<ArrowId> arrow_from_parent;
};

Subcategory full_subcategory(const Category& c,
                             const std::vector<VertexId>& vertices);

/// Commuting isomorphism between two orbit subcategories, recorded on parent
/// ids.
struct OrbitIso {
  std::map<VertexId, VertexId> vmap;
  std::map<ArrowId, ArrowId> amap;
};

struct TranslativeResult {
  bool ok = false;
  bool exhausted = false;
  std::string witness;
  /// One witness per vertex-orbit pair (i, j), i < j.
  std::map<std::pair<int, int>, OrbitIso> witnesses;
};

/// Semi-regular + for every two vertex orbits an isomorphism between the
/// generated orbit subcategories that commutes with every group element.
/// Exploits semi-regularity: a commuting isomorphism is determined by the
/// image of one base vertex plus one arrow per arrow orbit.
TranslativeResult is_translative(const CategoryAction& A,
                                 std::uint64_t budget = default_budget());

struct RightNormalResult {
  bool ok = false;
  std::string witness;
  /// (arrow a, loop-category arrow x with cod x = dom a) -> (g, C'(a, x)).
  std::map<std::pair<ArrowId, ArrowId>, std::pair<GroupId, ArrowId>> cprime;
};

/// Right-normality via representatives: for every arrow a and every arrow x
/// of the vertex category of dom a with cod x = dom a there exist g and
/// C'(a,x) with x*a = a^g * C'(a,x), and C'(a, id) = id. Ties between
/// candidate witnesses are broken by the smallest arrow identifier.
RightNormalResult is_right_normal(const CategoryAction& A,
                                  std::uint64_t budget = default_budget());

}  // namespace orbifold
