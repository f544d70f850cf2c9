#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsturm {

enum class ErrorKind {
  InvalidArgument,
  IndexBeyondCoefficients,
  IntegerOverflow,
  LengthBudgetExceeded,
  SymbolOutsideDomain,
  WindowTooLarge,
  NotPalindromicDecomposition,
  NoCommonSite,
  InconclusiveWindow,
  NotQuasiSturmian,
  NoBispecialFound,
  RegenerationMismatch,
  BasePrefixTooShort,
  ZeroInitialCondition,
  OutOfRange,
  DegenerateFit,
  GridTooCoarse,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this type; kind() is stable and
// machine-readable, what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qsturm
