#include "certificate.hpp"

#include <sstream>

#include "qfm/error.hpp"

namespace qfm::cli {

namespace {

constexpr std::string_view kMagic = "qfm certificate";
constexpr std::string_view kSep = " -- ";

[[noreturn]] void bad(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::InvalidCertificate, "certificate line " + std::to_string(line) + ": " + message,
              std::to_string(line));
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string value_text(const std::string& v) {
  std::string s = one_line(v);
  for (std::size_t at; (at = s.find(" = ")) != std::string::npos;) s.replace(at, 3, " == ");
  return s;
}

bool starts(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

}  // namespace

void normalize(Certificate& c) {
  for (auto& [k, v] : c.outputs) {
    k = one_line(k);
    v = value_text(v);
  }
  for (auto& ch : c.checks) {
    ch.name = one_line(ch.name);
    ch.detail = one_line(ch.detail);
  }
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

std::string Certificate::digest() const { return "fnv1a64:" + hex64(fnv1a64(input)); }

std::string write_certificate(const Certificate& c) {
  std::ostringstream os;
  os << kMagic << '\n';
  os << "version " << c.version << '\n';
  os << "operation " << c.operation << '\n';
  for (const auto& [k, v] : c.args) os << "arg " << k << '=' << v << '\n';
  os << "input-digest " << c.digest() << '\n';
  std::size_t lines = 0;
  std::string body;
  std::istringstream in(c.input);
  for (std::string l; std::getline(in, l);) {
    body += "| " + l + '\n';
    ++lines;
  }
  os << "input-lines " << lines << '\n' << body;
  // keys may contain " = ", values may not: the reader splits at the last one
  for (const auto& [k, v] : c.outputs) os << "output " << one_line(k) << " = " << value_text(v) << '\n';
  for (const auto& ch : c.checks) {
    os << "check " << (ch.passed ? "PASS " : "FAIL ") << one_line(ch.name);
    if (!ch.detail.empty()) os << kSep << one_line(ch.detail);
    os << '\n';
  }
  os << "verdict " << (c.passed() ? "PASS" : "FAIL") << '\n';
  os << "end\n";
  return os.str();
}

std::vector<Certificate> read_certificates(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    for (std::string l; std::getline(in, l);) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      lines.push_back(std::move(l));
    }
  }
  std::vector<Certificate> out;
  std::size_t i = 0;
  auto next = [&]() -> const std::string& {
    if (i >= lines.size()) bad(i, "unexpected end of text");
    return lines[i++];
  };
  auto field = [&](std::string_view key) {
    const std::string& l = next();
    if (!starts(l, std::string(key) + " ")) bad(i, "expected '" + std::string(key) + "'");
    return l.substr(key.size() + 1);
  };
  while (i < lines.size()) {
    if (lines[i].empty()) {
      ++i;
      continue;
    }
    if (next() != kMagic) bad(i, "expected '" + std::string(kMagic) + "'");
    Certificate c;
    c.version = field("version");
    c.operation = field("operation");
    while (i < lines.size() && starts(lines[i], "arg ")) {
      const std::string a = next().substr(4);
      const auto eq = a.find('=');
      if (eq == std::string::npos) bad(i, "arg without '='");
      c.args.emplace_back(a.substr(0, eq), a.substr(eq + 1));
    }
    const std::string digest = field("input-digest");
    std::size_t count = 0;
    try {
      count = std::stoul(field("input-lines"));
    } catch (const std::logic_error&) {
      bad(i, "bad line count");
    }
    for (std::size_t k = 0; k < count; ++k) {
      const std::string& l = next();
      if (!starts(l, "| ") && l != "|") bad(i, "input lines start with '| '");
      c.input += (l.size() > 2 ? l.substr(2) : std::string()) + '\n';
    }
    if (c.digest() != digest) bad(i, "input digest " + digest + " does not match " + c.digest());
    while (i < lines.size() && starts(lines[i], "output ")) {
      const std::string o = next().substr(7);
      const auto eq = o.rfind(" = ");
      if (eq == std::string::npos) bad(i, "output without ' = '");
      c.outputs.emplace_back(o.substr(0, eq), o.substr(eq + 3));
    }
    while (i < lines.size() && starts(lines[i], "check ")) {
      const std::string l = next().substr(6);
      Check ch;
      if (starts(l, "PASS ")) {
        ch.passed = true;
      } else if (!starts(l, "FAIL ")) {
        bad(i, "check must be PASS or FAIL");
      }
      const std::string rest = l.substr(5);
      const auto sep = rest.find(kSep);
      ch.name = rest.substr(0, sep);
      if (sep != std::string::npos) ch.detail = rest.substr(sep + kSep.size());
      c.checks.push_back(std::move(ch));
    }
    const std::string verdict = field("verdict");
    if (verdict != (c.passed() ? "PASS" : "FAIL")) bad(i, "verdict disagrees with the checks");
    if (next() != "end") bad(i, "expected 'end'");
    out.push_back(std::move(c));
  }
  if (out.empty()) bad(0, "no certificate found");
  return out;
}

}  // namespace qfm::cli
