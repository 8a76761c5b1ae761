#pragma once

#include <vector>

#include "orbifold/action.hpp"
#include "orbifold/flat.hpp"
#include "orbifold/morphism.hpp"
#include "orbifold/orbitfold.hpp"
#include "orbifold/partialcat.hpp"

namespace orbifold {

/// All generators are deterministic: the same parameters produce identical
/// structures (and identical JSON bytes).

/// The five-vertex category 1 -a-> 3 -c-> 4 with parallel branch 2/5 and both
/// automorphism groups: the cyclic one generated by phi*psi (not foldable)
/// and the Klein group generated by {phi, psi} (foldable).
struct FixK {
  Category cat;
  CategoryAction klein;     // <phi, psi>
  CategoryAction cyclic;    // <phi psi>
};

FixK gen_fix_k();

/// k disjoint order-category chains of height h (h+1 vertices each) with the
/// cyclic rotation action; free, translative and foldable.
CategoryAction gen_chain_bundle(int k, int h);

/// Product category with the componentwise action of the product group.
CategoryAction product_action(const CategoryAction& a1,
                              const CategoryAction& a2);

/// Product of two chain bundles with the componentwise rotation action.
CategoryAction gen_grid_bundle(int k1, int h1, int k2, int h2);

/// Groupal-category fixture: indiscrete groupoid on m vertices times a chain
/// of height h, with the cyclic group acting on the groupoid factor. Has
/// non-identity loop classes after folding.
CategoryAction gen_groupoid_chain(int m, int h);

/// k chains of height h, each vertex carrying an idempotent loop, with the
/// cyclic rotation. The orbit category is a chain with an absorbing loop per
/// vertex; unlike groupoid folds it stays uniquely representable, which makes
/// it the finite fixture with non-trivial loop data for the flat machinery.
CategoryAction gen_idempotent_bundle(int k, int h);

/// Indiscrete groupoid on m vertices (one arrow per ordered pair) with the
/// cyclic rotation; the orbit category is a single vertex carrying m loops.
CategoryAction gen_cyclic_groupoid(int m);

/// Windowed fold of (Z, <=) by nZ. The window keeps arrow lengths below
/// (K+1) n where K = dmax / n, i.e. the loops 0, n, ..., Kn per class.
/// `shift[c]` moves the transversal representative of class c to c + n
/// shift[c] (defaults to the canonical window [0, n)).
struct ZnFold {
  int n = 0;
  long long dmax = 0;
  Category window;      // partial orbit category
  Representation rep;   // window + natural annotation into nZ (rank-1 vectors)
  FlatRep flat;         // flat base, carries, C, po-group window G
};

ZnFold gen_zn_fold(int n, long long dmax, std::vector<long long> shift = {});

/// Shepard relation on n chroma classes: arrows with representative
/// difference d, 0 <= d < n/2 (strict), as a flat representation.
FlatRep gen_shepard(int n);

/// Major-scale embedding of a 7-vertex system into the 12-TET flat base.
struct DiatonicEmbedding {
  Category scale;
  Category target;  // 12-TET flat base
  CatMorphism emb;
  std::vector<int> offsets;  // {0,2,4,5,7,9,11}
};

DiatonicEmbedding gen_diatonic();

/// Chroma torus: fold of (Z^3, product order) by Z x 12Z x pZ where p is the
/// third period (3 by default; the alternative 2 is generable as well).
FlatRep gen_tonnetz(int third_period = 3);

/// Windowed fold of (Z^2, product order) by pZ x qZ; differences range over
/// [0, w1] x [0, w2]. A multigraph whose simple factor relation is not
/// antisymmetric.
struct LatticeWindow {
  int p = 0, q = 0;
  int w1 = 0, w2 = 0;
  Category window;  // partial

  VertexId cls(int i, int j) const;
  /// Arrow from class (i, j) with difference (d1, d2); kNoArrow if outside.
  ArrowId step(int i, int j, int d1, int d2) const;

 private:
  friend LatticeWindow gen_lattice_window(int, int, int, int);
  std::vector<std::vector<ArrowId>> arrow_index_;
};

LatticeWindow gen_lattice_window(int p = 4, int q = 3, int w1 = 7, int w2 = 7);

/// Two overlapping diatonic tiles glued over their common pitches; sigma
/// identifies the overlaps, so the class count drops strictly.
ToneSystem gen_glued_tiles();

/// Tone system of a plain group: delta(a, b) = b a^-1; sigma is discrete.
ToneSystem gen_group_tones(int n);

}  // namespace orbifold
