#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fpir {

enum class ErrorKind {
  ParseError,
  NotIrreducible,
  NotMonic,
  OrderTooLarge,
  NotASubgroup,
  WorkGuardExceeded,
  ZeroPolynomial,
  HypothesisUnmet,
  CharDividesDegree,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::WorkGuardExceeded: return "WorkGuardExceeded";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::CharDividesDegree: return "CharDividesDegree";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Resource guards shared by every exhaustive algorithm.
struct Limits {
  std::uint64_t max_order = std::uint64_t{1} << 20;
  std::uint64_t work_budget = std::uint64_t{1} << 24;

  /// Reads FPIR_MAX_ORDER and FPIR_WORK_BUDGET, falling back to defaults.
  static Limits from_env();
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require_work(std::uint64_t work, const Limits& limits, std::string_view what) {
  if (work > limits.work_budget) {
    fail(ErrorKind::WorkGuardExceeded,
         std::string(what) + ": work " + std::to_string(work) + " exceeds budget " +
             std::to_string(limits.work_budget));
  }
}

}  // namespace fpir
