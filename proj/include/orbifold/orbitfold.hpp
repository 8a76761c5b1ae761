#pragma once

#include <string>
#include <vector>

#include "orbifold/action.hpp"
#include "orbifold/category.hpp"
#include "orbifold/group.hpp"
#include "orbifold/morphism.hpp"

namespace orbifold {

/// Orbit category of a foldable action: vertices and arrows are the orbit
/// classes, composition is the class of any composable representative pair
/// (representative independence is exactly foldability and is checked).
struct OrbitCategory {
  Category cat;
  OrbitPartitions parts;     // classes on the source category
  CatMorphism projection;    // source -> cat (full, surjective)
};

/// Requires foldability (eq-(1) witness in the error otherwise). Semi-regular
/// actions are always foldable; foldability alone suffices for the orbit
/// category to exist.
OrbitCategory orbit_category(const CategoryAction& A);

struct Transversal {
  std::vector<VertexId> chosen;  // one per vertex orbit, indexed by orbit id
  std::string strategy;
};

/// strategy "first": smallest vertex name per orbit.
Transversal choose_transversal(const CategoryAction& A);
/// Explicit set; throws GivenSetNotTransversal unless it has exactly one
/// vertex per orbit.
Transversal choose_transversal(const CategoryAction& A,
                               const std::vector<VertexId>& given);

/// Unique g with x^(g^-1) in T; needs a semi-regular action.
GroupId canonical_automorphism(const CategoryAction& A, const Transversal& T,
                               VertexId x);

/// Arrow labels in an annotation group; contravariant: A(a*b) = A(b)A(a).
struct Annotation {
  AnnotationGroup group;
  std::vector<GroupElem> label;  // per arrow
};

/// A_T(a) = g_T(cod a) * g_T(dom a)^-1, constant on arrow orbits (checked);
/// returned as labels on the orbit category of A.
Annotation natural_annotation(const CategoryAction& A, const Transversal& T);

/// A_T evaluated on the arrows of the source category.
Annotation natural_annotation_on_source(const CategoryAction& A,
                                        const Transversal& T);

/// The reconstruction-section category: objects T, arrows all arrows starting
/// in T, concatenation a *_C b = a * b^(A_T(a)). Requires a translative
/// action. Isomorphic to the orbit category via x -> x^G.
Category transversal_category(const CategoryAction& A, const Transversal& T);

struct Representation {
  Category cat;
  Annotation ann;
  bool faithful = false;
};

ValidationReport check_annotation(const Category& cat, const Annotation& ann);

/// True iff the annotation is injective on every hom set.
bool annotation_faithful(const Category& cat, const Annotation& ann);

/// Packages (orbit category, A_T, G).
Representation build_representation(const CategoryAction& A,
                                    const Transversal& T);

}  // namespace orbifold
