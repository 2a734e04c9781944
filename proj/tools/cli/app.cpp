#include "app.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace qfm::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path, path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(std::ostream& err, const Error& e) {
  err << "error " << to_string(e.kind()) << ": " << message_of(e);
  if (!e.witness().empty()) err << " [witness " << e.witness() << "]";
  err << '\n';
}

}  // namespace

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Feldman-Moore constructions on quotient spaces, with checkable certificates", "qfm"};
  std::string input;
  std::string cmd;
  std::string out_path;
  std::string name;
  std::optional<std::size_t> k, n, t, level_bound, window;
  std::vector<std::string> extra;
  bool emit_instance = false;
  bool print = false;
  app.add_option("--input", input, "instance file, or a certificate file for verify");
  app.add_option("--cmd,command", cmd, "operation to run; without it the file's run directives are used");
  app.add_option("--out", out_path, "write here instead of standard output");
  app.add_option("--name,name", name, "gallery example name");
  app.add_option("--k", k, "alphabet size");
  app.add_option("--n", n, "word length of the truncated model");
  app.add_option("--t", t, "letters forgotten by the quotient");
  app.add_option("--K", level_bound, "explicit levels tried before acceleration must appear");
  app.add_option("--window", window, "integer probe window [-w, w]");
  app.add_option("--arg", extra, "operation argument key=value (repeatable)");
  app.add_flag("--emit-instance", emit_instance, "gallery: write the instance file instead of a certificate");
  app.add_flag("--print", print, "print the parsed instance in canonical form");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Args args;
  for (const auto& a : extra) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "error InvalidArgument: --arg expects key=value, got '" << a << "'\n";
      return 2;
    }
    args.emplace_back(a.substr(0, eq), a.substr(eq + 1));
  }
  if (!name.empty()) args.emplace_back("name", name);
  if (k) args.emplace_back("k", std::to_string(*k));
  if (n) args.emplace_back("n", std::to_string(*n));
  if (t) args.emplace_back("t", std::to_string(*t));
  if (level_bound) args.emplace_back("K", std::to_string(*level_bound));
  if (window) args.emplace_back("window", std::to_string(*window));

  // Parse phase: every failure here is a usage or input error.
  Instance inst;
  std::string text;
  try {
    if (!input.empty()) text = slurp(input);
    if (cmd != "verify" && !text.empty()) inst = parse_instance(text);
    if (cmd.empty() && input.empty()) throw Error(ErrorKind::InvalidArgument, "give --cmd or --input");
  } catch (const Error& e) {
    report(err, e);
    return 2;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) {
      err << "error InvalidArgument: cannot write " << out_path << '\n';
      return 2;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;

  try {
    if (print) {
      sink << print_instance(inst);
      return 0;
    }
    std::vector<Certificate> certs;
    if (cmd == "export-graph") {
      const auto of = std::find_if(args.begin(), args.end(), [](const auto& a) { return a.first == "of"; });
      if (of == args.end()) throw Error(ErrorKind::InvalidArgument, "export-graph needs --arg of=NAME");
      sink << export_graph(inst, of->second);
      return 0;
    } else if (cmd == "verify") {
      certs.push_back(verify_certificates(text));
    } else if (cmd == "gallery" && emit_instance) {
      const auto nm = std::find_if(args.begin(), args.end(), [](const auto& a) { return a.first == "name"; });
      if (nm == args.end()) throw Error(ErrorKind::InvalidArgument, "gallery needs a name");
      GalleryParams p;
      p.k = k;
      p.n = n;
      p.t = t;
      if (level_bound) p.level_bound = *level_bound;
      sink << print_instance(gallery_instance(example_gallery(nm->second, p)));
      return 0;
    } else if (!cmd.empty()) {
      certs.push_back(run_command(cmd, inst, args));
    } else {
      const auto runs = inst.runs();
      if (runs.empty()) {
        sink << print_instance(inst);
        return 0;
      }
      for (const auto& r : runs) {
        Args merged = r.args;
        merged.insert(merged.end(), args.begin(), args.end());
        certs.push_back(run_command(r.command, inst, merged));
      }
    }
    bool ok = true;
    for (const auto& c : certs) {
      sink << write_certificate(c);
      ok = ok && c.passed();
    }
    return ok ? 0 : 1;
  } catch (const Error& e) {
    report(err, e);
    return is_usage_error(e.kind()) ? 2 : 1;
  }
}

}  // namespace qfm::cli
