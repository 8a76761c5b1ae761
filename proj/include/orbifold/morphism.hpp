#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbifold/category.hpp"
#include "orbifold/core.hpp"

namespace orbifold {

/// Vertex and arrow maps between two categories, stored as index tables.
/// The source and target are passed explicitly to the checking functions.
struct CatMorphism {
  std::vector<VertexId> vmap;
  std::vector<ArrowId> amap;
};

struct MorphismFlags {
  bool valid = false;
  bool full = false;
  bool faithful = false;
  std::string witness;
};

MorphismFlags check_morphism(const Category& src, const Category& dst,
                             const CatMorphism& m);

CatMorphism identity_morphism(const Category& c);

CatMorphism compose_morphisms(const CatMorphism& first,
                              const CatMorphism& second);

/// True iff m is bijective, structure preserving, and reflects definedness of
/// composition (its inverse is again a morphism).
bool check_isomorphism(const Category& c, const Category& d,
                       const CatMorphism& m, std::string* why = nullptr);

std::optional<CatMorphism> invert_isomorphism(const Category& c,
                                              const Category& d,
                                              const CatMorphism& m);

enum class SearchStatus { Found, NoIso, Exhausted };

struct IsoResult {
  SearchStatus status = SearchStatus::NoIso;
  CatMorphism iso;
  std::uint64_t steps = 0;
};

/// Backtracking isomorphism search seeded by degree invariants. Within budget
/// the answer is definitive; once the budget runs out the result is
/// Exhausted, which is distinct from "no isomorphism".
IsoResult find_isomorphism(const Category& c, const Category& d,
                           std::uint64_t budget = default_budget());

}  // namespace orbifold
