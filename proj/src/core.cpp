#include "orbifold/core.hpp"

#include <cstdlib>

namespace orbifold {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::NotFoldable: return "NotFoldable";
    case ErrorKind::NotSemiRegular: return "NotSemiRegular";
    case ErrorKind::NotTranslative: return "NotTranslative";
    case ErrorKind::NotRightNormal: return "NotRightNormal";
    case ErrorKind::NotUniquelyRepresentable: return "NotUniquelyRepresentable";
    case ErrorKind::GivenSetNotTransversal: return "GivenSetNotTransversal";
    case ErrorKind::InfiniteGroup: return "InfiniteGroup";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

const char* tri_state_name(TriState t) {
  switch (t) {
    case TriState::False: return "false";
    case TriState::True: return "true";
    case TriState::Unknown: return "unknown";
  }
  return "?";
}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("ORBIFOLD_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 4'000'000ULL;
}

}  // namespace orbifold
