#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace catkit {

enum class ErrorKind {
  // categories and functors
  MissingComposite,
  NonAssociative,
  BadEndpoints,
  DuplicateName,
  EndpointMismatch,
  UnknownObject,
  InvalidFunctor,
  NotBijective,
  // diagrams and Kan extensions
  InvalidDiagram,
  NotUniversal,
  // simplicial
  NotMonotone,
  BadIndices,
  IndexOutOfRange,
  InvalidSimplicialSet,
  InvalidAssignment,
  // algebra
  NotAssociative,
  NoUnit,
  NotAGroup,
  UnitAxiomFailed,
  AssocAxiomFailed,
  // homotopy
  BaseNotFound,
  DimensionTooLow,
  // search limits
  BudgetExceeded,
  CapExceeded,
  // input files
  Schema,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadEndpoints: return "BadEndpoints";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::InvalidFunctor: return "InvalidFunctor";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::NotUniversal: return "NotUniversal";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidSimplicialSet: return "InvalidSimplicialSet";
    case ErrorKind::InvalidAssignment: return "InvalidAssignment";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoUnit: return "NoUnit";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::UnitAxiomFailed: return "UnitAxiomFailed";
    case ErrorKind::AssocAxiomFailed: return "AssocAxiomFailed";
    case ErrorKind::BaseNotFound: return "BaseNotFound";
    case ErrorKind::DimensionTooLow: return "DimensionTooLow";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

/// Domain error carrying a machine-readable kind and a human-readable witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string witness)
      : std::runtime_error(std::string(to_string(kind)) + ": " + witness),
        kind_(kind),
        witness_(std::move(witness)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string witness) {
  throw Error(kind, std::move(witness));
}

/// Step counter for exhaustive searches. Throws BudgetExceeded once the
/// number of spent steps passes the limit.
class Budget {
 public:
  static constexpr std::uint64_t kDefaultFunctorSearch = 10'000'000;
  static constexpr std::uint64_t kDefaultHornSearch = 1'000'000;

  explicit Budget(std::uint64_t limit = kDefaultFunctorSearch) : limit_(limit) {}

  void spend(std::uint64_t steps = 1) {
    used_ += steps;
    if (used_ > limit_)
      fail(ErrorKind::BudgetExceeded,
           "search budget of " + std::to_string(limit_) + " steps exhausted");
  }

  [[nodiscard]] std::uint64_t used() const noexcept { return used_; }
  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

}  // namespace catkit
