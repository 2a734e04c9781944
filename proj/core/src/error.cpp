#include "qfm/error.hpp"

namespace qfm {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidPartition: return "InvalidPartition";
    case ErrorKind::InvalidSubset: return "InvalidSubset";
    case ErrorKind::NotAFunction: return "NotAFunction";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::UnsupportedCarrier: return "UnsupportedCarrier";
    case ErrorKind::NotAMorphism: return "NotAMorphism";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::NotATransversal: return "NotATransversal";
    case ErrorKind::NotASelector: return "NotASelector";
    case ErrorKind::IndexTooLarge: return "IndexTooLarge";
    case ErrorKind::NotAnEnumeration: return "NotAnEnumeration";
    case ErrorKind::NotMaximal: return "NotMaximal";
    case ErrorKind::NoAcceleration: return "NoAcceleration";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::UnknownExample: return "UnknownExample";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

}  // namespace qfm
