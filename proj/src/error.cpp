#include "qsturm/error.hpp"

namespace qsturm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IndexBeyondCoefficients: return "IndexBeyondCoefficients";
    case ErrorKind::IntegerOverflow: return "IntegerOverflow";
    case ErrorKind::LengthBudgetExceeded: return "LengthBudgetExceeded";
    case ErrorKind::SymbolOutsideDomain: return "SymbolOutsideDomain";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::NotPalindromicDecomposition: return "NotPalindromicDecomposition";
    case ErrorKind::NoCommonSite: return "NoCommonSite";
    case ErrorKind::InconclusiveWindow: return "InconclusiveWindow";
    case ErrorKind::NotQuasiSturmian: return "NotQuasiSturmian";
    case ErrorKind::NoBispecialFound: return "NoBispecialFound";
    case ErrorKind::RegenerationMismatch: return "RegenerationMismatch";
    case ErrorKind::BasePrefixTooShort: return "BasePrefixTooShort";
    case ErrorKind::ZeroInitialCondition: return "ZeroInitialCondition";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace qsturm
