#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbifold/core.hpp"

namespace orbifold {

/// A finite small category given as a directed multigraph with identity loops
/// and an explicit composition table. When `partial()` is true the table may
/// omit composable pairs (partial category in the sense of the factor-category
/// machinery); otherwise validation requires the table to be total on
/// composable pairs.
///
/// Identity compositions (id * a, a * id) are implied and need not be stored.
class Category {
 public:
  Category() = default;

  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t arrow_count() const { return arrow_names_.size(); }

  const std::string& vertex_name(VertexId v) const { return vertex_names_[v]; }
  const std::string& arrow_name(ArrowId a) const { return arrow_names_[a]; }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<ArrowId> find_arrow(const std::string& name) const;
  VertexId vertex(const std::string& name) const;
  ArrowId arrow(const std::string& name) const;

  VertexId src(ArrowId a) const { return src_[a]; }
  VertexId dst(ArrowId a) const { return dst_[a]; }
  ArrowId identity(VertexId v) const { return identity_[v]; }
  bool is_identity(ArrowId a) const {
    return a != kNoArrow && identity_[src_[a]] == a;
  }
  bool is_loop(ArrowId a) const { return src_[a] == dst_[a]; }

  /// Composition lookup; identity shortcuts apply when no table entry exists.
  std::optional<ArrowId> compose(ArrowId a, ArrowId b) const;
  bool compose_defined(ArrowId a, ArrowId b) const {
    return compose(a, b).has_value();
  }

  bool partial() const { return partial_; }

  const std::vector<ArrowId>& arrows_from(VertexId v) const {
    return out_arrows_[v];
  }
  const std::vector<ArrowId>& arrows_into(VertexId v) const {
    return in_arrows_[v];
  }
  /// Arrows x -> y, in arrow-id order.
  std::vector<ArrowId> hom(VertexId x, VertexId y) const;

  /// All stored composition entries (a, b, a*b); identity shortcuts excluded.
  const std::map<std::pair<ArrowId, ArrowId>, ArrowId>& compose_table() const {
    return compose_;
  }

  friend class CategoryBuilder;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> arrow_names_;
  std::vector<VertexId> src_, dst_;
  std::vector<ArrowId> identity_;
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> compose_;
  bool partial_ = false;

  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, ArrowId> arrow_index_;
  std::vector<std::vector<ArrowId>> out_arrows_, in_arrows_;
};

class CategoryBuilder {
 public:
  VertexId add_vertex(const std::string& name);
  ArrowId add_arrow(const std::string& name, VertexId src, VertexId dst);
  ArrowId add_arrow(const std::string& name, const std::string& src,
                    const std::string& dst);
  void set_identity(VertexId v, ArrowId a);
  void set_compose(ArrowId a, ArrowId b, ArrowId c);

  /// Adds an identity loop named `id:<vertex>` for every vertex that has none.
  void ensure_identities();

  bool has_vertex(const std::string& name) const {
    return cat_.vertex_index_.count(name) > 0;
  }
  VertexId vertex(const std::string& name) const { return cat_.vertex(name); }
  ArrowId arrow(const std::string& name) const { return cat_.arrow(name); }

  Category build(bool partial = false);

 private:
  Category cat_;
};

ValidationReport validate_category(const Category& c);

/// Left fold of compose over a path of arrows. Throws NonComposable with the
/// failing junction index.
ArrowId compose_path(const Category& c, const std::vector<ArrowId>& arrows);

/// Directed multigraph (no composition); the input shape of path categories.
struct Digraph {
  std::vector<std::string> vertices;
  struct Edge {
    std::string name;
    std::size_t src, dst;
  };
  std::vector<Edge> edges;
};

/// Forgets composition and identities of a category.
Digraph underlying_graph(const Category& c, bool include_identities = false);

/// Arrows are paths of length <= max_len (empty paths are the identities);
/// concatenation is defined when the combined length still fits, so the result
/// is a partial category. Path arrows remember their edge sequence in
/// `path_edges` (indexed by arrow id; identity arrows have empty sequences).
struct PathCategory {
  Category cat;
  std::vector<std::vector<std::size_t>> path_edges;
};

PathCategory bounded_path_category(const Digraph& g, int max_len);

/// True iff there is at most one arrow for every ordered vertex pair.
bool is_simple(const Category& c);

/// Underlying simple relation: pairs (x, y) with some arrow x -> y.
std::vector<std::pair<VertexId, VertexId>> simple_relation(const Category& c);

struct RelationProps {
  bool reflexive;
  bool antisymmetric;
  bool transitive;
  std::string witness;
};

RelationProps relation_properties(const Category& c);

}  // namespace orbifold
