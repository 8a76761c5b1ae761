#pragma once

#include <map>
#include <vector>

#include "orbifold/action.hpp"
#include "orbifold/category.hpp"
#include "orbifold/morphism.hpp"
#include "orbifold/orbitfold.hpp"
#include "orbifold/rightgroupal.hpp"

namespace orbifold {

struct IrreducibleResult {
  std::vector<char> irreducible;  // per arrow
  bool representable = false;     // every arrow factors irreducible * loop
  bool unique = false;            // ... in exactly one way
  std::string witness;            // ambiguous or unrepresentable arrow
};

/// An arrow is reducible iff it factors as b * y with y a non-identity loop
/// at its end.
IrreducibleResult irreducible_arrows(const Category& k);

struct FlatData {
  std::vector<ArrowId> r;  // irreducible part, per arrow
  std::vector<ArrowId> n;  // loop part; identity loop for irreducible arrows
};

/// x = r(x) * n(x); requires unique representability.
FlatData r_n_maps(const Category& k);

struct FlatOrbit {
  Category cat;                       // irreducible arrows with x.y = r(x*y)
  std::vector<ArrowId> to_parent;     // flat arrow -> parent arrow
  std::vector<ArrowId> from_parent;   // parent arrow -> its r-image flat arrow
};

/// The r-image with the concatenation x . y := r(x * y).
FlatOrbit flat_orbit_category(const Category& k);

/// n-hat(a, b) = n(a * b) on all composable pairs; values are loops of k.
std::map<std::pair<ArrowId, ArrowId>, ArrowId> n_hat(const Category& k);

struct OrbitCTable {
  bool ok = false;
  std::string witness;
  /// (orbit arrow, orbit loop at its start class) -> orbit loop at its end.
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> table;
};

/// Lifts the C' witnesses of a right-normal action to the orbit category and
/// asserts x^G * a^G = a^G * C(a^G, x^G), C(a, id) = id, and the
/// homomorphism property of phi_a wherever s_a is injective.
OrbitCTable derive_C(const CategoryAction& A,
                     std::uint64_t budget = default_budget());

/// n : (arrow, arrow) -> loop of the single-vertex category, C : (arrow, loop)
/// -> loop. Keys may be partial on windowed instances.
using LoopMap2 = std::map<std::pair<ArrowId, ArrowId>, ArrowId>;

ValidationReport check_extension_axioms(const Category& k, const LoopMap2& n,
                                        const LoopMap2& c,
                                        const Category& gloops);

struct SingletonExtension {
  Category ext;
  std::vector<std::pair<ArrowId, ArrowId>> arrow_pair;  // ext arrow -> (k, gloops)
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> pair_to_ext;
};

/// E<K, n, C, G>: arrows Mor K x Mor G with
/// (a,x) * (b,y) = (a.b, n(a,b) * C(b,x) * y). Throws AxiomViolation when the
/// axiom scan fails; the result additionally passes validate_category.
SingletonExtension singleton_extension(const Category& k, const LoopMap2& n,
                                       const LoopMap2& c,
                                       const Category& gloops);

/// Flat category representation (K, A, n, C, G).
struct FlatRep {
  Category base;        // flat base; compose is the . concatenation
  Annotation ann;       // arrow -> vertex-group element of G
  LoopMap2 n_map;       // values are gloops arrows
  LoopMap2 c_map;
  RightGroupal G;
  LoopOrbitCategory gloops;
  bool pogroup_style = false;  // G regenerable over any layer window
};

/// Annotation axioms (42)/(34)/(48) plus the extension axioms of (n, C).
ValidationReport check_flat_rep(const FlatRep& f);

/// Derived annotation A'(a, x) = diff(x) * A(a) on the singleton extension.
Representation extension_representation(const FlatRep& f,
                                        const SingletonExtension& e);

/// Builds the flat representation of a right-normal action with uniquely
/// representable orbit category: (r[K/G], A|_r, n-hat, C, G_x).
FlatRep flat_rep_from_orbit(const CategoryAction& A, const Transversal& T,
                            VertexId x, std::uint64_t budget = default_budget());

struct FlatUnfolding {
  Category cat;
  std::vector<VertexId> vertex_base;
  std::vector<GroupElem> vertex_layer;
  std::vector<ArrowId> arrow_base;          // base arrow
  std::vector<GroupElem> arrow_from_layer;  // layer of dom
  std::vector<GroupElem> arrow_to_layer;    // layer of cod
};

/// Unfolding of a flat representation over a finite set of layers (ignored
/// when G's window already fixes the layers of an explicit finite G). The
/// optional offset map shifts the layer window per base vertex, which is how
/// a transversal change moves the window.
FlatUnfolding unfold_flat(const FlatRep& f, std::vector<GroupElem> layers = {},
                          const std::map<VertexId, GroupElem>* layer_offset =
                              nullptr);

/// Isomorphism data between flat representations: phi on bases, psi on the
/// vertex groups, and per-base-vertex layer shifts h(z) = left translation by
/// w_z (the only automorphism family the checks accept; G must be simple).
struct GroupIso {
  bool identity = true;
  std::map<GroupElem, GroupElem> map;  // used when !identity

  GroupElem apply(const GroupElem& e) const {
    return identity ? e : map.at(e);
  }
};

struct FlatRepIso {
  CatMorphism phi;                    // F2.base -> F1.base
  GroupIso psi;                       // Ob H -> Ob G
  std::map<VertexId, GroupElem> h;    // F2 base vertex -> w in Ob G
};

struct FlatIsoResult {
  bool ok = false;
  std::string violated_eq;  // "eq32" | "eq49" | "eq50" | "eq51"
  std::string witness;
};

/// Verifies eqs. (32), (49), (50), (51) on all applicable arguments.
FlatIsoResult check_flat_iso(const FlatRepIso& iso, const FlatRep& f1,
                             const FlatRep& f2);

/// Bounded helper: searches layer-shift candidates for h (phi = psi = id).
std::optional<FlatRepIso> find_flat_iso_layer_shift(const FlatRep& f1,
                                                    const FlatRep& f2);

/// Diagnostic from the transversal-change discussion: a pair of arrows is
/// consistent iff n-hat(a, b) is an identity loop.
bool consistent_pair(const FlatRep& f, ArrowId a, ArrowId b);

}  // namespace orbifold
