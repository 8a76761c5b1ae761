#pragma once

#include <map>
#include <optional>
#include <vector>

#include "orbifold/action.hpp"
#include "orbifold/category.hpp"
#include "orbifold/congruence.hpp"
#include "orbifold/flat.hpp"
#include "orbifold/group.hpp"
#include "orbifold/morphism.hpp"

namespace orbifold {

/// P is validated as a partial subcategory of K along the embedding: vertex
/// identities present, endpoints preserved, and the concatenation of P is
/// defined exactly where the K-composite lies in the image.
ValidationReport check_partial_subcategory(const Category& p, const Category& k,
                                           const CatMorphism& emb);

struct DefiningResult {
  TriState fully = TriState::Unknown;
  TriState flat = TriState::Unknown;
  std::string note;
};

/// Bounded check of the defining congruences on the path category of P:
/// "fully" quotients by path == concatenation, "flat" additionally collapses
/// every loop path onto the identity. Tri-state because the path category is
/// truncated at max_len; a definitive False is reported when the quotient has
/// stabilised or has too few vertex classes.
DefiningResult check_defining(const Category& p, const Category& k, int max_len,
                              std::uint64_t budget = default_budget());

struct PropertyFlags {
  TriState faithful = TriState::Unknown;
  TriState simple = TriState::Unknown;
  TriState ordered = TriState::Unknown;
  TriState s_symmetric = TriState::Unknown;
  TriState translatively_s_symmetric = TriState::Unknown;
  TriState antisymmetric = TriState::Unknown;
  TriState complete = TriState::Unknown;
  TriState antisym_s_complete = TriState::Unknown;
  std::string witness;
};

std::string to_string(const PropertyFlags& f);

/// Flag catalogue of a (flat) representation carried by the partial category
/// `p` with annotation `ann`. `s_action` (an action on p) feeds the symmetry
/// flags; `reference` feeds the completion flags; both optional.
PropertyFlags property_catalogue(const Category& p, const Annotation& ann,
                                 const CategoryAction* s_action,
                                 const Category* reference, int max_len = 6,
                                 std::uint64_t budget = default_budget());

/// Antisymmetry of an annotated category: no 2-cycle a: x->y, b: y->x with
/// A(a)A(b) = 1 unless it is degenerate (x = y and A(a) = 1).
bool annotation_antisymmetric(const Category& p, const Annotation& ann,
                              std::string* witness = nullptr);

struct MaximalSubrep {
  std::vector<char> keep_arrow;  // over reference arrows
  Category sub;
  PropertyFlags flags;
};

/// Greedy + exhaustive-within-budget ascent over the partial subcategories of
/// `reference` that contain all vertices, adding S-orbit closures of arrows
/// while the requested downward-closed flags stay true. The result is
/// 1-maximal: no single extension keeps the flags.
MaximalSubrep search_maximal(const Category& reference, const Annotation& ann,
                             const CategoryAction* s_action,
                             bool want_faithful, bool want_simple,
                             bool want_ordered, bool want_antisymmetric,
                             bool want_s_symmetric, int max_len = 6,
                             std::uint64_t budget = default_budget());

/// Partial subcategory of `reference` keeping the flagged arrows (identities
/// always kept); concatenation defined exactly when the composite is kept.
Category restrict_arrows(const Category& reference,
                         const std::vector<char>& keep);

/// Annotation of `reference` pulled back onto a restriction (matched by arrow
/// name).
Annotation restrict_annotation(const Category& reference, const Annotation& ann,
                               const Category& sub);

/// Tone system: tones with a group of differences. delta must satisfy
/// delta(t,t) = 1 and delta(t1,t3) = delta(t2,t3) delta(t1,t2).
struct ToneSystem {
  std::vector<std::string> tones;
  AnnotationGroup group;
  std::vector<std::vector<GroupElem>> delta;
};

ValidationReport check_tone_system(const ToneSystem& t);

/// sigma identifies tones with equal interval to some common third tone; the
/// returned partition ids index the classes. Reflexivity, symmetry and
/// transitivity are verified on the instance.
std::vector<int> sigma_classes(const ToneSystem& t);

}  // namespace orbifold
