#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "instance.hpp"
#include "qfm/feldman_moore.hpp"

namespace qfm::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct Certificate {
  std::string version{kToolVersion};
  std::string operation;
  Args args;
  std::string input;  // instance text the operation ran on
  std::vector<std::pair<std::string, std::string>> outputs;
  std::vector<Check> checks;

  bool passed() const { return all_passed(checks); }
  std::string digest() const;
};

// Rewrites outputs and checks into the form they take on disk.
void normalize(Certificate& c);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

std::string write_certificate(const Certificate& c);
// Any number of certificates back to back. Throws InvalidCertificate,
// including on a digest that does not match the embedded input.
std::vector<Certificate> read_certificates(std::string_view text);

}  // namespace qfm::cli
