#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qfm/actions.hpp"
#include "qfm/error.hpp"
#include "qfm/feldman_moore.hpp"
#include "qfm/integer_cover.hpp"
#include "qfm/quotient.hpp"
#include "qfm/relations.hpp"

namespace qfm::cli {

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

// Finite spaces hold a QuotientSpace; integer spaces only an ambient set
// carrying the discrete relation.
struct SpaceDecl {
  std::string name;
  SpacePtr space;
  std::optional<IntSet> ambient;

  bool integer() const { return ambient.has_value(); }
  std::size_t points() const { return space ? space->point_count() : 0; }
};

struct RelDecl {
  enum class Form { Classes, Graphs, Pairs, Blocks, Translations };
  std::string name;
  std::string on;
  Form form = Form::Classes;
  Partition classes;
  EnumeratedEquivalence graphs;
  Relation pairs;
  BlockPartition blocks;
  TranslationPresentation translations;
};

struct MapDecl {
  enum class Form { Total, Partial, Injection, Translation };
  std::string name;
  std::string on;
  Form form = Form::Total;
  PartialMap table;  // Total and Partial
  PartialInjection injection;
  PiecewiseTranslation translation;
};

struct GroupDecl {
  enum class Form { Symmetric, Cyclic, Table };
  std::string name;
  Form form = Form::Table;
  std::size_t param = 0;
  FiniteGroup group;
};

struct ActionDecl {
  std::string name;
  std::string group;
  std::string on;
  std::vector<Permutation> perms;
  std::optional<GroupAction> action;
};

using Args = std::vector<std::pair<std::string, std::string>>;

struct RunDirective {
  std::string command;
  Args args;
  Location where;
};

using Item = std::variant<SpaceDecl, RelDecl, MapDecl, GroupDecl, ActionDecl, RunDirective>;

struct Instance {
  std::vector<Item> items;  // file order

  // Each throws UnknownReference when the name is missing or of another kind.
  const SpaceDecl& space(const std::string& name) const;
  const RelDecl& rel(const std::string& name) const;
  const MapDecl& map(const std::string& name) const;
  const GroupDecl& group(const std::string& name) const;
  const ActionDecl& action(const std::string& name) const;

  std::vector<RunDirective> runs() const;
  std::size_t count(std::size_t variant_index) const;
};

// Errors carry "line:column" as their witness.
Instance parse_instance(std::string_view text);
Instance read_instance(const std::string& path);
std::string print_instance(const Instance& inst);

// Error text without the leading kind name.
std::string message_of(const Error& e);

// Reference-valued argument keys; their values are comma lists of names.
bool is_reference_key(std::string_view key);
std::vector<std::string> split_list(std::string_view text);

}  // namespace qfm::cli
