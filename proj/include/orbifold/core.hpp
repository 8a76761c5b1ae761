#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbifold {

using VertexId = std::int32_t;
using ArrowId = std::int32_t;
using GroupId = std::int32_t;

constexpr VertexId kNoVertex = -1;
constexpr ArrowId kNoArrow = -1;

/// Kinds of domain errors surfaced by the operations. Violations found by
/// validators are data (ValidationReport), not errors.
enum class ErrorKind {
  NonComposable,
  NotFoldable,
  NotSemiRegular,
  NotTranslative,
  NotRightNormal,
  NotUniquelyRepresentable,
  GivenSetNotTransversal,
  InfiniteGroup,
  BudgetExhausted,
  AxiomViolation,
  BadInput,
};

const char* error_kind_name(ErrorKind k);

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, std::string witness)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& witness() const { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

struct Violation {
  std::string law;
  std::string witness;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string law, std::string witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }
  std::string to_string() const {
    std::ostringstream out;
    for (const auto& v : violations) out << v.law << ": " << v.witness << "\n";
    return out.str();
  }
};

enum class TriState { False, True, Unknown };

const char* tri_state_name(TriState t);

/// Step counter shared by the backtracking searches. Exhausting a budget is
/// reported as "unknown", distinct from a definitive negative answer.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}

  /// Returns false once the budget is used up.
  bool step(std::uint64_t cost = 1) {
    used_ += cost;
    return used_ <= limit_;
  }
  bool exhausted() const { return used_ > limit_; }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

/// Default search budget; the ORBIFOLD_BUDGET environment variable overrides.
std::uint64_t default_budget();

}  // namespace orbifold
