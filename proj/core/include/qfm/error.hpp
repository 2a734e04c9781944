#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfm {

// Failure categories surfaced by the library. The CLI prints these names
// verbatim, so treat the spelling as part of the interface.
enum class ErrorKind {
  InvalidArgument,
  InvalidPartition,
  InvalidSubset,
  NotAFunction,
  NotInjective,
  UnsupportedCarrier,
  NotAMorphism,
  EndpointMismatch,
  NotATransversal,
  NotASelector,
  IndexTooLarge,
  NotAnEnumeration,
  NotMaximal,
  NoAcceleration,
  NotCovered,
  NotFree,
  NotASubgroup,
  InvalidGroup,
  InvalidAction,
  AlphabetMismatch,
  BadParameters,
  UnknownExample,
  SyntaxError,
  UnknownReference,
  InvalidCertificate,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  // Human-readable counterexample, empty when the failure has none.
  const std::string& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace qfm
