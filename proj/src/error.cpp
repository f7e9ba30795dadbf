#include "qlab/error.hpp"

namespace qlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::NonAdmissible: return "NonAdmissible";
    case ErrorKind::NonComposable: return "NonComposable";
    case ErrorKind::NonConfluent: return "NonConfluent";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::NotSpecialBiserial: return "NotSpecialBiserial";
    case ErrorKind::InvalidWord: return "InvalidWord";
    case ErrorKind::ZeroParameter: return "ZeroParameter";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::NonSplitResidue: return "NonSplitResidue";
    case ErrorKind::NotSelfInjective: return "NotSelfInjective";
    case ErrorKind::ProjectiveInput: return "ProjectiveInput";
    case ErrorKind::SocleNotLine: return "SocleNotLine";
    case ErrorKind::NotQuasiSerial: return "NotQuasiSerial";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::UniverseIncomplete: return "UniverseIncomplete";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::ConditionFailed: return "ConditionFailed";
    case ErrorKind::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qlab
