#pragma once

#include <utility>
#include <vector>

#include "orbifold/category.hpp"
#include "orbifold/morphism.hpp"

namespace orbifold {

/// Partition of arrows (vertex classes induced via endpoints) compatible with
/// composition: composable representatives of equal classes compose into
/// equal classes.
struct Congruence {
  std::vector<int> arrow_class;
  std::vector<int> vertex_class;
  int n_arrow_classes = 0;
  int n_vertex_classes = 0;
};

/// Worklist fixpoint: merge the seed classes, then re-saturate the
/// compatibility rules until stable. Terminates because partitions only
/// coarsen.
Congruence congruence_closure(
    const Category& c, const std::vector<std::pair<ArrowId, ArrowId>>& seeds);

struct QuotientResult {
  Category quotient;
  CatMorphism projection;
  Congruence congruence;
};

/// Quotient by the congruence generated by the seed pairs. The projection is
/// full and surjective with kernel equal to the closure. Composition in the
/// quotient is defined wherever some representative pair composes; the
/// quotient of a partial category may stay partial.
QuotientResult quotient_by_congruence(
    const Category& c, const std::vector<std::pair<ArrowId, ArrowId>>& seeds);

}  // namespace orbifold
