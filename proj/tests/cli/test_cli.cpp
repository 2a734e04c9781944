#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/app.hpp"
#include "cli/commands.hpp"

using namespace qfm;
using namespace qfm::cli;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string& output(const Certificate& c, const std::string& key) {
  for (const auto& [k, v] : c.outputs) {
    if (k == key) return v;
  }
  FAIL("missing output " << key);
  static const std::string none;
  return none;
}

const Check* check(const Certificate& c, const std::string& name) {
  for (const auto& ch : c.checks) {
    if (ch.name == name) return &ch;
  }
  return nullptr;
}

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run app(std::vector<std::string> argv) {
  argv.insert(argv.begin(), "qfm");
  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_app(static_cast<int>(raw.size()), raw.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("qfm_cli_" + name);
  std::ofstream(p) << text;
  return p;
}

Error error_of(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("no error for: " << text);
  return Error(ErrorKind::InvalidArgument, "");
}

}  // namespace

TEST_CASE("empty and comment-only files") {
  CHECK(parse_instance("").items.empty());
  CHECK(parse_instance("# nothing\n\n   \n").items.empty());
  CHECK(print_instance(parse_instance("")).empty());
}

TEST_CASE("Q6 sample: one space, three classes") {
  const Instance inst = read_instance(QFM_SAMPLES "/q6.qfm");
  CHECK(inst.count(0) == 1);
  CHECK(inst.space("Q6").points() == 3);
  const std::string once = print_instance(inst);
  CHECK(print_instance(parse_instance(once)) == once);
}

TEST_CASE("every shipped sample prints back to itself") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(QFM_SAMPLES)) {
    if (entry.path().extension() != ".qfm") continue;
    ++seen;
    const std::string once = print_instance(read_instance(entry.path().string()));
    CHECK_MESSAGE(print_instance(parse_instance(once)) == once, entry.path());
  }
  CHECK(seen >= 5);
}

TEST_CASE("errors carry their location") {
  const Error fwd = error_of("space Q carrier 2\nrel F on P classes 0,1\nspace P carrier 2\n");
  CHECK(fwd.kind() == ErrorKind::UnknownReference);
  CHECK(fwd.witness() == "2:10");
  const Error run_ref = error_of("space Q carrier 2\nrun index rel=F\nrel F on Q classes 0,1\n");
  CHECK(run_ref.kind() == ErrorKind::UnknownReference);
  CHECK(run_ref.witness() == "2:11");
  const Error syn = error_of("space Q carrier two\n");
  CHECK(syn.kind() == ErrorKind::SyntaxError);
  CHECK(syn.witness() == "1:17");
  CHECK(error_of("space Q carrier 3 classes 0,1 1,2\n").kind() == ErrorKind::InvalidPartition);
  CHECK(error_of("space Q carrier 3\nmap f on Q 0,1\n").kind() == ErrorKind::SyntaxError);
  CHECK(error_of("space Q carrier 3\nspace Q carrier 2\n").kind() == ErrorKind::SyntaxError);
  CHECK(error_of("space Z integer \"0..\n").kind() == ErrorKind::SyntaxError);
  CHECK(error_of("group G table 0,1 0,1\n").kind() == ErrorKind::InvalidGroup);
}

TEST_CASE("fm-quotient on the two-point swap") {
  const Instance inst = read_instance(QFM_SAMPLES "/swap2.qfm");
  const Certificate c = run_command("fm-quotient", inst, {{"rel", "F"}});
  const Check* eq = check(c, "orbit partition equals F");
  REQUIRE(eq);
  CHECK(eq->passed);
  CHECK(c.passed());
  CHECK(output(c, "orbits") == "{0,1}");
}

TEST_CASE("cover on the et_shift gallery instance") {
  const Instance inst = gallery_instance(example_gallery("et_shift"));
  const auto runs = inst.runs();
  REQUIRE(runs.size() == 1);
  const Certificate c = run_command(runs[0].command, parse_instance(print_instance(inst)), runs[0].args);
  CHECK(c.passed());
  for (int n = 1; n <= 4; ++n) CHECK(output(c, "X_" + std::to_string(n)) == std::to_string(n - 1));
  const auto g1 = parse_translation(output(c, "g'"));
  const auto g2 = parse_translation(output(c, "g''"));
  for (std::int64_t x = -64; x <= 64; ++x) {
    // each is a product of disjoint transpositions
    REQUIRE(g1.apply(x).has_value());
    CHECK(g1.apply(*g1.apply(x)) == x);
    CHECK(g2.apply(*g2.apply(x)) == x);
    if (x >= 0) CHECK((g1.apply(x) == x + 1 || g2.apply(x) == x + 1));
  }
  CHECK_FALSE(g1.is_identity());
  CHECK_FALSE(g2.is_identity());
}

TEST_CASE("gallery ex35 then index gives 3") {
  const auto path = std::filesystem::temp_directory_path() / "qfm_cli_ex35.qfm";
  const Run emit = app({"gallery", "ex35", "--k", "2", "--n", "4", "--t", "2", "--emit-instance", "--out", path.string()});
  REQUIRE(emit.code == 0);
  const Run idx = app({"--input", path.string(), "--cmd", "index", "--arg", "rel=F"});
  CHECK(idx.code == 0);
  const auto certs = read_certificates(idx.out);
  REQUIRE(certs.size() == 1);
  CHECK(output(certs[0], "index") == "3");
}

TEST_CASE("certificates re-verify") {
  for (const auto& name : gallery_names()) {
    const Run g = app({"gallery", name});
    CHECK_MESSAGE(g.code == 0, name);
    const auto cert = temp_file(name + ".cert", g.out);
    const Run v = app({"verify", "--input", cert.string()});
    CHECK_MESSAGE(v.code == 0, name << v.out);
    const Run emitted = app({"gallery", name, "--emit-instance"});
    const auto inst = temp_file(name + ".qfm", emitted.out);
    const Run runs = app({"--input", inst.string()});
    CHECK_MESSAGE(runs.code == 0, name << runs.err);
    const Run again = app({"verify", "--input", temp_file(name + ".runs", runs.out).string()});
    CHECK_MESSAGE(again.code == 0, name << again.out);
  }
}

TEST_CASE("certificate text round trip and tampering") {
  const Instance inst = read_instance(QFM_SAMPLES "/finite_cover.qfm");
  const Certificate c = run_command("cover", inst, {{"rel", "F"}, {"g0", "g0"}});
  const std::string text = write_certificate(c);
  const auto back = read_certificates(text + "\n" + text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].outputs == c.outputs);
  CHECK(back[0].digest() == c.digest());
  CHECK(write_certificate(back[1]) == text);
  CHECK(verify_certificates(text).passed());

  std::string digest_broken = text;
  digest_broken.replace(digest_broken.find("| space Q carrier 7"), 19, "| space Q carrier 8");
  CHECK_THROWS_AS(read_certificates(digest_broken), Error);

  std::string output_broken = text;
  const auto at = output_broken.find("output g' = ");
  output_broken.replace(at, 13, "output g' = 0");
  const Certificate v = verify_certificates(output_broken);
  CHECK_FALSE(v.passed());

  std::string verdict_broken = text;
  verdict_broken.replace(verdict_broken.find("verdict PASS"), 12, "verdict FAIL");
  CHECK_THROWS_AS(read_certificates(verdict_broken), Error);
}

TEST_CASE("orbit graph export") {
  const Instance inst = parse_instance(
      "space Q carrier 3\n"
      "rel I on Q classes\n"
      "map c on Q 1,2,0\n"
      "space P carrier 4\n"
      "group S symmetric 2\n"
      "action A group S on P 0,1,2,3 1,0,3,2\n"
      "space Z integer \"..\"\n"
      "tmap t on Z \".. -> +1\"\n");
  const std::string eq = export_graph(inst, "I");
  CHECK(eq.find("->") == std::string::npos);
  const std::string tri = export_graph(inst, "c");
  CHECK(tri.find("0 -> 1 [label=\"c\"]") != std::string::npos);
  CHECK(tri.find("1 -> 2 [label=\"c\"]") != std::string::npos);
  CHECK(tri.find("2 -> 0 [label=\"c\"]") != std::string::npos);
  const std::string sw = export_graph(inst, "A");
  CHECK(sw.find("0 -> 1 [label=\"(0 1)\"]") != std::string::npos);
  CHECK(sw.find("1 -> 0 [label=\"(0 1)\"]") != std::string::npos);
  CHECK(sw.find("2 -> 3 [label=\"(0 1)\"]") != std::string::npos);
  CHECK(sw.find("3 -> 2 [label=\"(0 1)\"]") != std::string::npos);
  try {
    export_graph(inst, "t");
    FAIL("integer export accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedCarrier);
  }
}

TEST_CASE("exit status contract") {
  CHECK(app({"--input", QFM_SAMPLES "/actions.qfm"}).code == 0);
  const auto three = temp_file("three.qfm", "space Q carrier 3\nrel F on Q classes 0,1,2\nrun involution2 rel=F\n");
  CHECK(app({"--input", three.string()}).code == 1);
  const auto bad = temp_file("bad.qfm", "space Q carrier 3\nrel F on Q clases 0,1\n");
  const Run syn = app({"--input", bad.string()});
  CHECK(syn.code == 2);
  CHECK(syn.err.find("SyntaxError") != std::string::npos);
  CHECK(app({"--cmd", "nonsense", "--input", three.string()}).code == 2);
  CHECK(app({"--input", three.string(), "--cmd", "index"}).code == 2);
  CHECK(app({"gallery", "ex99"}).code == 2);
  CHECK(app({"--bogus"}).code == 2);
  const auto notfree = temp_file("notfree.qfm",
                                 "space X carrier 3\ngroup G symmetric 2\naction A group G on X 0,1,2 1,0,2\n");
  const Run nf = app({"--input", notfree.string(), "--cmd", "cocycle", "--arg", "action=A"});
  CHECK(nf.code == 1);
  CHECK(nf.err.find("NotFree") != std::string::npos);
}

TEST_CASE("every listed command runs on a sample") {
  const Instance maps = read_instance(QFM_SAMPLES "/maps.qfm");
  const Instance acts = read_instance(QFM_SAMPLES "/actions.qfm");
  const Instance q6 = read_instance(QFM_SAMPLES "/q6.qfm");
  CHECK(run_command("fm-classical", q6, {{"rel", "F"}}).passed());
  CHECK(run_command("generate", maps, {{"maps", "cyc,f"}}).passed());
  CHECK(output(run_command("tail", maps, {{"map", "f"}}), "classes") == "{0,1} {2,3} {4,5}");
  CHECK(run_command("uniformize", maps, {{"rel", "R"}}).passed());
  CHECK(run_command("selector", acts, {{"rel", "F"}}).passed());
  CHECK(output(run_command("normalizer", acts, {{"group", "G"}, {"sub", "0,(0 1)"}}), "normalizer") ==
        "{e,(0 1)}");
  CHECK(run_command("cocycle", acts, {{"action", "R"}}).passed());
  CHECK(output(run_command("index", q6, {{"space", "Q6"}}), "index") == "2");
  CHECK_THROWS_AS(run_command("verify", q6, {}), Error);
}
