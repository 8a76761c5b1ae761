#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbifold/core.hpp"

namespace orbifold {

/// Finite group as an explicit multiplication table.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  static FiniteGroup from_table(std::vector<std::string> names,
                                std::vector<std::vector<GroupId>> mul);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n, const std::string& prefix = "r");
  static FiniteGroup direct_product(const FiniteGroup& a,
                                    const FiniteGroup& b);

  std::size_t size() const { return names_.size(); }
  const std::string& name(GroupId g) const { return names_[g]; }
  std::optional<GroupId> find(const std::string& name) const;
  GroupId element(const std::string& name) const;

  GroupId mul(GroupId g, GroupId h) const { return mul_[g][h]; }
  GroupId inv(GroupId g) const { return inv_[g]; }
  GroupId neutral() const { return neutral_; }

  const std::vector<std::vector<GroupId>>& table() const { return mul_; }

  /// Exhaustive group-axiom check.
  ValidationReport validate() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<GroupId>> mul_;
  std::vector<GroupId> inv_;
  GroupId neutral_ = 0;
};

/// Element of an annotation group: either a table index or an integer vector
/// (free coordinates first, then torsion coordinates in canonical range).
struct GroupElem {
  GroupId idx = -1;
  std::vector<long long> vec;

  bool operator==(const GroupElem& o) const {
    return idx == o.idx && vec == o.vec;
  }
  bool operator!=(const GroupElem& o) const { return !(*this == o); }
  bool operator<(const GroupElem& o) const {
    if (idx != o.idx) return idx < o.idx;
    return vec < o.vec;
  }
};

/// Annotation groups: codomains of annotations. Either a finite permutation
/// group wrapped as a table, or a finitely generated abelian group with
/// elements encoded as integer vectors (torsion coordinates kept in
/// [0, n_i)).
class AnnotationGroup {
 public:
  enum class Kind { Table, FgAbelian };

  AnnotationGroup() : kind_(Kind::FgAbelian), free_rank_(0) {}

  static AnnotationGroup wrap(FiniteGroup g);
  static AnnotationGroup fg_abelian(int free_rank,
                                    std::vector<long long> torsion);

  Kind kind() const { return kind_; }
  const FiniteGroup& table() const { return table_; }
  int free_rank() const { return free_rank_; }
  const std::vector<long long>& torsion() const { return torsion_; }

  GroupElem mul(const GroupElem& a, const GroupElem& b) const;
  GroupElem inv(const GroupElem& a) const;
  GroupElem neutral() const;
  bool is_neutral(const GroupElem& a) const { return a == neutral(); }
  GroupElem canonical(GroupElem a) const;

  bool finite() const {
    return kind_ == Kind::Table || free_rank_ == 0;
  }
  /// All elements; throws InfiniteGroup on infinite groups.
  std::vector<GroupElem> elements() const;

  std::string to_string(const GroupElem& a) const;
  GroupElem parse(const std::string& s) const;

  GroupElem from_table_id(GroupId g) const;
  GroupElem from_vector(std::vector<long long> v) const;

  bool operator==(const AnnotationGroup& o) const;

 private:
  Kind kind_;
  FiniteGroup table_;
  int free_rank_ = 0;
  std::vector<long long> torsion_;
};

}  // namespace orbifold
