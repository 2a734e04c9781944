#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qfm/actions.hpp"
#include "qfm/cantor.hpp"
#include "qfm/feldman_moore.hpp"
#include "qfm/integer_cover.hpp"

namespace qfm {

struct GalleryParams {
  std::optional<std::size_t> k;
  std::optional<std::size_t> n;
  std::optional<std::size_t> t;
  // ex37 only: involutions of the quotient to run the Z_i bookkeeping on.
  std::vector<Permutation> involutions;
  std::size_t level_bound = kDefaultLevelBound;
};

struct GalleryInstance {
  std::string name;
  std::string title;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<Check> checks;

  SpacePtr space;                     // finite examples
  std::optional<Partition> relation;  // F on quotient points
  std::optional<GroupAction> action;
  std::optional<BlockPartition> integer_relation;
  std::optional<IntegerCoverCertificate> integer_cover;

  bool ok() const { return all_passed(checks); }
  // Value of a fact by key; throws UnknownReference.
  const std::string& fact(const std::string& key) const;
};

const std::vector<std::string>& gallery_names();

// Throws UnknownExample or BadParameters.
GalleryInstance example_gallery(const std::string& name, const GalleryParams& params = {});

// Largest number of e-classes inside one f-class (e refines f).
std::size_t relative_index(const Partition& f, const Partition& e);

}  // namespace qfm
