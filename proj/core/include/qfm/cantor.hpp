#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qfm/actions.hpp"
#include "qfm/quotient.hpp"

namespace qfm {

using Letter = std::uint8_t;
using Letters = std::vector<Letter>;

// The sequence u w w w ... over the alphabet {0..k-1}. Always held in
// canonical form: w primitive, u as short as possible. Equal values denote
// equal sequences.
struct EventuallyPeriodicWord {
  std::size_t k = 2;
  Letters u;
  Letters w{0};

  friend bool operator==(const EventuallyPeriodicWord&, const EventuallyPeriodicWord&) = default;
  friend auto operator<=>(const EventuallyPeriodicWord&, const EventuallyPeriodicWord&) = default;
};

// Throws BadParameters for k < 2, an empty period or letters >= k.
EventuallyPeriodicWord canonicalize(Letters u, Letters w, std::size_t k);

Letter letter_at(const EventuallyPeriodicWord& x, std::size_t position);

// Throw AlphabetMismatch when the alphabets differ.
bool e0_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y);
bool et_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y);

EventuallyPeriodicWord shift(const EventuallyPeriodicWord& x);
// sigma is a permutation of the alphabet; throws BadParameters otherwise.
EventuallyPeriodicWord letter_act(const std::vector<Letter>& sigma, const EventuallyPeriodicWord& x);

// No two distinct shifts coincide. An eventually periodic word always has
// shift^|u| = shift^(|u|+|w|), so this is false for every value of the type;
// the check is carried out rather than assumed.
bool is_aperiodic(const EventuallyPeriodicWord& x);

// Words differing from x in at most `support` of the first `positions`
// positions, x first, then by number of changes and position.
std::vector<EventuallyPeriodicWord> e0_class_enumerate(const EventuallyPeriodicWord& x,
                                                       std::size_t support, std::size_t positions);

// Text form `u|w`, letters as digits (k <= 10).
std::string to_string(const EventuallyPeriodicWord& x);
EventuallyPeriodicWord parse_word(std::string_view text, std::size_t k);

// Words of length n over k letters, identified when they agree from position
// t on. Word index is base-k with position 0 most significant, so the class
// (quotient point) of a word is its suffix value.
struct TruncatedModel {
  std::size_t k = 2;
  std::size_t n = 1;
  std::size_t t = 0;
  SpacePtr space;

  std::size_t carrier_size() const;
  std::size_t suffix_count() const;
  Letters word(std::size_t index) const;
  std::size_t index_of(const Letters& word) const;
  std::size_t suffix(std::size_t index) const { return index % suffix_count(); }
  Letters suffix_word(std::size_t q) const;
};

// Throws BadParameters unless k >= 2, t < n and k^n stays small.
TruncatedModel make_truncated_model(std::size_t k, std::size_t n, std::size_t t);

// The letterwise action on quotient points; letter_perms[g] is how element g
// permutes the alphabet.
GroupAction suffix_action(const TruncatedModel& m, const FiniteGroup& g,
                          const std::vector<Permutation>& letter_perms);

// The same action on carrier words.
GroupAction carrier_action(const TruncatedModel& m, const FiniteGroup& g,
                           const std::vector<Permutation>& letter_perms);

}  // namespace qfm
