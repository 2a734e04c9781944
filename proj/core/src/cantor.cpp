#include "qfm/cantor.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "qfm/error.hpp"

namespace qfm {

namespace {

void same_alphabet(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
  if (x.k != y.k) {
    throw Error(ErrorKind::AlphabetMismatch,
                "alphabets of size " + std::to_string(x.k) + " and " + std::to_string(y.k),
                std::to_string(x.k) + "," + std::to_string(y.k));
  }
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Base-k value of a letter string, first letter most significant.
std::size_t value_of(const Letters& s, std::size_t k) {
  std::size_t v = 0;
  for (Letter c : s) v = v * k + c;
  return v;
}

Letters digits_of(std::size_t v, std::size_t k, std::size_t len) {
  Letters s(len);
  for (std::size_t i = len; i-- > 0;) {
    s[i] = static_cast<Letter>(v % k);
    v /= k;
  }
  return s;
}

void check_letter_perm(const Permutation& p, std::size_t k) {
  if (p.size() != k || !is_permutation(p)) {
    throw Error(ErrorKind::BadParameters, "not a permutation of the alphabet", format_map(p));
  }
}

}  // namespace

EventuallyPeriodicWord canonicalize(Letters u, Letters w, std::size_t k) {
  if (k < 2 || k > 10) throw Error(ErrorKind::BadParameters, "alphabet size must be 2..10", std::to_string(k));
  if (w.empty()) throw Error(ErrorKind::BadParameters, "the period must be nonempty", "");
  for (const Letters* s : {&u, &w}) {
    for (Letter c : *s) {
      if (c >= k) throw Error(ErrorKind::BadParameters, "letter outside the alphabet", std::to_string(c));
    }
  }
  for (std::size_t d = 1; d <= w.size(); ++d) {
    if (w.size() % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < w.size() && repeats; ++i) repeats = w[i] == w[i % d];
    if (repeats) {
      w.resize(d);
      break;
    }
  }
  while (!u.empty() && u.back() == w.back()) {
    std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
    u.pop_back();
  }
  return {k, std::move(u), std::move(w)};
}

Letter letter_at(const EventuallyPeriodicWord& x, std::size_t position) {
  if (position < x.u.size()) return x.u[position];
  return x.w[(position - x.u.size()) % x.w.size()];
}

bool e0_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
  same_alphabet(x, y);
  const std::size_t from = std::max(x.u.size(), y.u.size());
  const std::size_t span = std::lcm(x.w.size(), y.w.size());
  for (std::size_t i = from; i < from + span; ++i) {
    if (letter_at(x, i) != letter_at(y, i)) return false;
  }
  return true;
}

bool et_equivalent(const EventuallyPeriodicWord& x, const EventuallyPeriodicWord& y) {
  same_alphabet(x, y);
  if (x.w.size() != y.w.size()) return false;
  Letters twice = x.w;
  twice.insert(twice.end(), x.w.begin(), x.w.end());
  return std::search(twice.begin(), twice.end(), y.w.begin(), y.w.end()) != twice.end();
}

EventuallyPeriodicWord shift(const EventuallyPeriodicWord& x) {
  if (!x.u.empty()) return canonicalize(Letters(x.u.begin() + 1, x.u.end()), x.w, x.k);
  Letters w = x.w;
  std::rotate(w.begin(), w.begin() + 1, w.end());
  return canonicalize({}, std::move(w), x.k);
}

EventuallyPeriodicWord letter_act(const std::vector<Letter>& sigma, const EventuallyPeriodicWord& x) {
  check_letter_perm(Permutation(sigma.begin(), sigma.end()), x.k);
  Letters u = x.u;
  Letters w = x.w;
  for (Letter& c : u) c = sigma[c];
  for (Letter& c : w) c = sigma[c];
  return canonicalize(std::move(u), std::move(w), x.k);
}

bool is_aperiodic(const EventuallyPeriodicWord& x) {
  std::set<EventuallyPeriodicWord> seen;
  EventuallyPeriodicWord s = x;
  for (std::size_t i = 0; i <= x.u.size() + 2 * x.w.size(); ++i) {
    if (!seen.insert(s).second) return false;
    s = shift(s);
  }
  return true;
}

std::vector<EventuallyPeriodicWord> e0_class_enumerate(const EventuallyPeriodicWord& x,
                                                       std::size_t support, std::size_t positions) {
  const std::size_t len = std::max(positions, x.u.size());
  Letters prefix(len);
  for (std::size_t i = 0; i < len; ++i) prefix[i] = letter_at(x, i);
  Letters tail = x.w;
  std::rotate(tail.begin(), tail.begin() + static_cast<long>((len - x.u.size()) % tail.size()), tail.end());

  std::vector<EventuallyPeriodicWord> out;
  std::set<EventuallyPeriodicWord> seen;
  auto emit = [&](const Letters& p) {
    auto word = canonicalize(p, tail, x.k);
    if (seen.insert(word).second) out.push_back(std::move(word));
  };
  for (std::size_t changes = 0; changes <= std::min(support, positions); ++changes) {
    // positions chosen as an increasing index list
    std::vector<std::size_t> pos(changes);
    std::iota(pos.begin(), pos.end(), 0);
    while (true) {
      // offsets in 1..k-1 added to the original letters, odometer style
      std::vector<std::size_t> off(changes, 1);
      while (true) {
        Letters p = prefix;
        for (std::size_t i = 0; i < changes; ++i) p[pos[i]] = static_cast<Letter>((p[pos[i]] + off[i]) % x.k);
        emit(p);
        std::size_t i = changes;
        while (i > 0 && off[i - 1] == x.k - 1) off[--i] = 1;
        if (i == 0) break;
        ++off[i - 1];
      }
      std::size_t i = changes;
      while (i > 0 && pos[i - 1] == positions - changes + i - 1) --i;
      if (i == 0) break;
      ++pos[i - 1];
      for (std::size_t j = i; j < changes; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  return out;
}

std::string to_string(const EventuallyPeriodicWord& x) {
  std::string s;
  for (Letter c : x.u) s += static_cast<char>('0' + c);
  s += '|';
  for (Letter c : x.w) s += static_cast<char>('0' + c);
  return s;
}

EventuallyPeriodicWord parse_word(std::string_view text, std::size_t k) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw Error(ErrorKind::SyntaxError, "a word is written u|w", std::string(text));
  }
  auto letters = [&](std::string_view part) {
    Letters out;
    for (char c : part) {
      if (c < '0' || c > '9') throw Error(ErrorKind::SyntaxError, "letters are digits", std::string(text));
      out.push_back(static_cast<Letter>(c - '0'));
    }
    return out;
  };
  return canonicalize(letters(text.substr(0, bar)), letters(text.substr(bar + 1)), k);
}

std::size_t TruncatedModel::carrier_size() const { return power(k, n); }
std::size_t TruncatedModel::suffix_count() const { return power(k, n - t); }
Letters TruncatedModel::word(std::size_t index) const { return digits_of(index, k, n); }
std::size_t TruncatedModel::index_of(const Letters& w) const { return value_of(w, k); }
Letters TruncatedModel::suffix_word(std::size_t q) const { return digits_of(q, k, n - t); }

TruncatedModel make_truncated_model(std::size_t k, std::size_t n, std::size_t t) {
  if (k < 2 || k > 10) throw Error(ErrorKind::BadParameters, "alphabet size must be 2..10", std::to_string(k));
  if (n == 0 || t >= n) {
    throw Error(ErrorKind::BadParameters, "need 0 <= t < n",
                "n=" + std::to_string(n) + ",t=" + std::to_string(t));
  }
  std::size_t size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size *= k;
    if (size > (1U << 16)) throw Error(ErrorKind::BadParameters, "k^n exceeds 65536", std::to_string(n));
  }
  TruncatedModel m{k, n, t, nullptr};
  std::vector<std::string> labels;
  std::vector<std::size_t> classes;
  for (std::size_t i = 0; i < size; ++i) {
    std::string s;
    for (Letter c : m.word(i)) s += static_cast<char>('0' + c);
    labels.push_back(std::move(s));
    classes.push_back(m.suffix(i));
  }
  m.space = make_quotient(FiniteCarrier{size, std::move(labels)}, Partition::from_labels(classes));
  return m;
}

GroupAction suffix_action(const TruncatedModel& m, const FiniteGroup& g,
                          const std::vector<Permutation>& letter_perms) {
  if (letter_perms.size() != g.order()) {
    throw Error(ErrorKind::BadParameters, "one letter permutation per group element is needed", "");
  }
  std::vector<Permutation> act;
  for (const auto& sigma : letter_perms) {
    check_letter_perm(sigma, m.k);
    Permutation p(m.suffix_count());
    for (std::size_t q = 0; q < p.size(); ++q) {
      Letters s = m.suffix_word(q);
      for (Letter& c : s) c = static_cast<Letter>(sigma[c]);
      p[q] = value_of(s, m.k);
    }
    act.push_back(std::move(p));
  }
  return GroupAction(g, m.suffix_count(), std::move(act));
}

GroupAction carrier_action(const TruncatedModel& m, const FiniteGroup& g,
                           const std::vector<Permutation>& letter_perms) {
  if (letter_perms.size() != g.order()) {
    throw Error(ErrorKind::BadParameters, "one letter permutation per group element is needed", "");
  }
  std::vector<Permutation> act;
  for (const auto& sigma : letter_perms) {
    check_letter_perm(sigma, m.k);
    Permutation p(m.carrier_size());
    for (std::size_t x = 0; x < p.size(); ++x) {
      Letters s = m.word(x);
      for (Letter& c : s) c = static_cast<Letter>(sigma[c]);
      p[x] = m.index_of(s);
    }
    act.push_back(std::move(p));
  }
  return GroupAction(g, m.carrier_size(), std::move(act));
}

}  // namespace qfm
