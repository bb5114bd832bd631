#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "graphmf/graphmf.h"

namespace {

using Json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(gm_status s) {
  switch (s) {
    case GM_OK:
      return kExitOk;
    case GM_ERR_INPUT:
    case GM_ERR_UNSUPPORTED:
      return kExitInput;
    default:
      return kExitInternal;
  }
}

void ensure(gm_status s) {
  if (s != GM_OK) throw Failure{exit_code(s), gm_last_error()};
}

struct ManifoldDeleter {
  void operator()(gm_manifold* m) const { gm_manifold_free(m); }
};
using ManifoldPtr = std::unique_ptr<gm_manifold, ManifoldDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  gm_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256(const std::string& bytes) {
  char* out = nullptr;
  ensure(gm_sha256_hex(bytes.data(), bytes.size(), &out));
  return take(out);
}

class Session {
 public:
  explicit Session(std::string command) : command_(std::move(command)) {}

  ManifoldPtr load(const std::string& path) {
    const std::string text = read_input(path);
    gm_manifold* m = nullptr;
    ensure(gm_manifold_from_json(text.c_str(), &m));
    return ManifoldPtr(m);
  }

  std::string read_input(const std::string& path) {
    std::string text = read_file(path);
    inputs_.push_back(Json{{"path", path}, {"sha256", sha256(text)}});
    return text;
  }

  void argument(const std::string& key, Json value) { arguments_[key] = std::move(value); }
  void warn(const std::string& w) { warnings_.push_back(w); }
  void collect_warnings(const Json& j) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items()) {
        if (k == "warnings" && v.is_array())
          for (const auto& w : v) warn(w.get<std::string>());
        else
          collect_warnings(v);
      }
    } else if (j.is_array()) {
      for (const auto& v : j) collect_warnings(v);
    }
  }

  Json report(const Json& results, const Failure* failure) const {
    Json r{{"tool", "graphmf"},
           {"version", gm_version()},
           {"command", command_},
           {"arguments", arguments_},
           {"inputs", inputs_},
           {"results", results},
           {"warnings", warnings_}};
    if (failure) r["error"] = Json{{"exit_code", failure->code}, {"message", failure->message}};
    return r;
  }

 private:
  std::string command_;
  Json arguments_ = Json::object();
  Json inputs_ = Json::array();
  std::vector<std::string> warnings_;
};

Json parse_result(char* s) { return Json::parse(take(s)); }

std::string yes_no(const Json& v) {
  if (v.is_null()) return "n/a";
  return v.get<bool>() ? "true" : "false";
}

std::string join(const Json& arr, const char* sep = ", ") {
  std::string out;
  for (const auto& x : arr) {
    if (!out.empty()) out += sep;
    out += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return out;
}

std::string bound_text(const Json& b) {
  if (b.at("kind") == "exp") return "exp";
  std::string out;
  const auto& c = b.at("coeffs");
  for (std::size_t i = c.size(); i-- > 0;) {
    const std::string v = c[i].is_string() ? c[i].get<std::string>() : c[i].dump();
    if (v == "0") continue;
    if (!out.empty()) out += " + ";
    out += v;
    if (i >= 1) out += "*L";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Json cmd_validate(Session& s, const std::string& path, std::ostream& os, int& code) {
  const std::string text = s.read_input(path);
  int valid = 0;
  char* out = nullptr;
  ensure(gm_validate_json(text.c_str(), &valid, &out));
  Json r = parse_result(out);
  if (valid) {
    os << "valid: true\n";
  } else {
    os << "valid: false\n";
    for (const auto& v : r.at("violations"))
      os << "  " << v.at("code").get<std::string>() << " [" << v.at("element").get<std::string>()
         << "]: " << v.at("message").get<std::string>() << "\n";
    code = kExitInput;
  }
  return r;
}

Json cmd_check(Session& s, const std::string& path, std::ostream& os) {
  auto m = s.load(path);
  char* out = nullptr;
  ensure(gm_check(m.get(), &out));
  Json r = parse_result(out);
  os << "irreducible: " << yes_no(r.at("irreducible"));
  const auto& failing = r.at("failing_gluings");
  if (!failing.empty()) os << "; failing gluing" << (failing.size() > 1 ? "s" : "") << ": " << join(failing);
  os << "\n";
  os << "closed: " << yes_no(r.at("closed")) << "; internal walls: " << r.at("internal_wall_count").dump()
     << "; boundary walls: " << r.at("boundary_wall_count").dump() << "\n";
  return r;
}

Json cmd_classify(Session& s, const std::string& path, std::ostream& os) {
  auto m = s.load(path);
  char* out = nullptr;
  ensure(gm_classify(m.get(), &out));
  Json r = parse_result(out);
  for (const auto& [k, v] : r.items()) os << k << ": " << yes_no(v.at("value")) << "\n";
  return r;
}

Json cmd_acyl(Session& s, const std::string& path, std::size_t max_len, std::ostream& os) {
  auto m = s.load(path);
  s.argument("max_len", max_len);
  char* out = nullptr;
  ensure(gm_acylindricity(m.get(), max_len, &out));
  Json r = parse_result(out);
  os << "bounded: " << yes_no(r.at("bounded"));
  if (r.at("bounded").get<bool>()) os << "; K: " << r.at("K").dump();
  os << "; path shapes checked: " << r.at("shapes_checked").dump() << "\n";
  if (!r.at("bounded").get<bool>()) s.warn("no acylindricity constant found up to max_len");
  return r;
}

Json cmd_equiv(Session& s, const std::string& path, const std::string& edge, const std::string& patterns,
               std::ostream& os) {
  auto m = s.load(path);
  const std::string pats = s.read_input(patterns);
  s.argument("edge", edge);
  char* out = nullptr;
  ensure(gm_equiv(m.get(), edge.c_str(), pats.c_str(), &out));
  Json r = parse_result(out);
  for (const auto& p : r.at("pairs"))
    os << "pattern " << p.at("i").dump() << " vs " << p.at("j").dump() << ": " << p.at("verdict").get<std::string>()
       << "\n";
  os << "pairwise inequivalent: " << yes_no(r.at("pairwise_inequivalent")) << "\n";
  if (r.at("undetermined_pairs").get<std::size_t>() > 0) s.warn("some pairs are undetermined within the search bound");
  return r;
}

Json cmd_generate(Session& s, const std::string& path, const std::string& edge, std::size_t count,
                  const std::string& out_dir, std::ostream& os) {
  auto m = s.load(path);
  s.argument("edge", edge);
  s.argument("count", count);
  char* out = nullptr;
  ensure(gm_generate(m.get(), edge.c_str(), count, &out));
  Json r = parse_result(out);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Failure{kExitInput, "cannot create " + out_dir + ": " + ec.message()};
    Json written = Json::array();
    std::size_t i = 0;
    for (const auto& p : r.at("patterns")) {
      char name[32];
      std::snprintf(name, sizeof name, "pattern_%02zu.json", ++i);
      const std::string file = (std::filesystem::path(out_dir) / name).string();
      std::ofstream f(file, std::ios::binary);
      if (!f) throw Failure{kExitInput, "cannot write " + file};
      f << p.at("manifest").dump(2) << "\n";
      written.push_back(name);
    }
    r["written"] = written;
  }
  std::size_t i = 0;
  for (const auto& p : r.at("patterns"))
    os << "pattern " << ++i << ": B = " << p.at("B").dump() << "; irreducible: " << yes_no(p.at("irreducible"))
       << "\n";
  return r;
}

Json cmd_obstruct(Session& s, const std::string& path, const std::string& kind, std::ostream& os) {
  auto m = s.load(path);
  s.argument("kind", kind);
  char* out = nullptr;
  ensure(gm_obstruct(m.get(), kind.c_str(), 0, &out));
  Json r = parse_result(out);
  for (const auto& c : r.at("certificates")) {
    os << c.at("kind").get<std::string>() << ": " << c.at("verdict").get<std::string>() << " ("
       << c.at("subkind").get<std::string>() << ")";
    const auto& w = c.at("witness");
    if (c.at("kind") == "monodromy" && w.contains("matrix")) os << "; matrix " << w.at("matrix").dump();
    if (c.at("kind") == "euler_class" && w.contains("kernel_vector"))
      os << "; kernel vector " << w.at("kernel_vector").dump();
    if (c.at("kind") == "twisted_double" && w.contains("positivity_sum"))
      os << "; positivity sum " << w.at("positivity_sum").dump();
    os << "\n";
  }
  return r;
}

Json cmd_invariant(Session& s, const std::string& a, const std::string& b, std::ostream& os) {
  auto ma = s.load(a);
  auto mb = s.load(b);
  char* out = nullptr;
  ensure(gm_invariant(ma.get(), mb.get(), &out));
  Json r = parse_result(out);
  os << "bisimilar: " << yes_no(r.at("bisimulation").at("bisimilar")) << "\n";
  os << "isomorphic quotient graphs: " << yes_no(r.at("isomorphism").at("isomorphic")) << "\n";
  os << r.at("isomorphism").at("conclusion").get<std::string>() << "\n";
  return r;
}

Json cmd_dehn(Session& s, const std::string& path, const std::string& lambda, const std::string& c,
              const std::string& k, std::ostream& os) {
  auto m = s.load(path);
  s.argument("lambda", lambda);
  s.argument("C", c);
  s.argument("K", k);
  char* out = nullptr;
  ensure(gm_dehn(m.get(), lambda.c_str(), c.c_str(), k.c_str(), &out));
  Json r = parse_result(out);
  os << "F(L) = " << bound_text(r.at("F")) << "\n";
  os << "G(L) = " << bound_text(r.at("G"));
  if (r.at("G").at("kind") == "poly") os << "  (degree " << r.at("G").at("degree").dump() << ")";
  os << "\n";
  return r;
}

bool write_report(const std::string& path, const Json& report) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << report.dump(2) << "\n";
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial checks for high-dimensional graph manifolds", "graphmf"};
  app.set_version_flag("--version", std::string(gm_version()));
  app.require_subcommand(1);

  std::string json_out;
  app.add_option("--json", json_out, "Write the full JSON report to this file");

  std::string path, path_b, edge, patterns, out_dir, kind = "monodromy";
  std::string lambda = "1", c_const = "1", k_const = "1";
  std::size_t max_len = 6, count = 10;

  auto* validate = app.add_subcommand("validate", "Structural validation of a manifest");
  auto* check = app.add_subcommand("check", "Transversality and irreducibility");
  auto* classify = app.add_subcommand("classify", "Group-property classification");
  auto* acyl = app.add_subcommand("acyl", "Bass-Serre acylindricity");
  auto* equiv = app.add_subcommand("equiv", "Gluing-pattern equivalence on one edge");
  auto* generate = app.add_subcommand("generate", "Pairwise inequivalent gluing patterns");
  auto* obstruct = app.add_subcommand("obstruct", "Non-positive-curvature obstruction certificates");
  auto* invariant = app.add_subcommand("invariant", "Quotient-graph invariants of two manifolds");
  auto* dehn = app.add_subcommand("dehn", "Dehn function upper bound");

  for (auto* sc : {validate, check, classify, acyl, equiv, generate, obstruct, invariant, dehn}) {
    sc->add_option("manifest", path, "Manifest path")->required();
    sc->add_option("--json", json_out, "Write the full JSON report to this file");
  }
  acyl->add_option("--max-len", max_len, "Longest path length examined")->check(CLI::Range(3, 64));
  equiv->add_option("--edge", edge, "Gluing id")->required();
  equiv->add_option("--patterns", patterns, "JSON file: array of matrices or {P, P_prime}")->required();
  generate->add_option("--edge", edge, "Gluing id")->required();
  generate->add_option("--count", count, "Number of patterns")->check(CLI::Range(1, 1000));
  generate->add_option("--out", out_dir, "Directory for the generated manifests");
  obstruct->add_option("--kind", kind, "monodromy, euler_class, twisted_double or all")
      ->check(CLI::IsMember({"monodromy", "euler_class", "twisted_double", "all"}));
  invariant->add_option("other", path_b, "Second manifest path")->required();
  dehn->add_option("--lambda", lambda, "Wall separation constant");
  dehn->add_option("--C", c_const, "Quadratic constant");
  dehn->add_option("--K", k_const, "Linear constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  CLI::App* sc = app.get_subcommands().front();
  Session session(sc->get_name());
  Json results = nullptr;
  int code = kExitOk;
  Failure failure{kExitOk, ""};
  std::ostringstream os;
  try {
    const std::string name = sc->get_name();
    if (name == "validate") results = cmd_validate(session, path, os, code);
    else if (name == "check") results = cmd_check(session, path, os);
    else if (name == "classify") results = cmd_classify(session, path, os);
    else if (name == "acyl") results = cmd_acyl(session, path, max_len, os);
    else if (name == "equiv") results = cmd_equiv(session, path, edge, patterns, os);
    else if (name == "generate") results = cmd_generate(session, path, edge, count, out_dir, os);
    else if (name == "obstruct") results = cmd_obstruct(session, path, kind, os);
    else if (name == "invariant") results = cmd_invariant(session, path, path_b, os);
    else if (name == "dehn") results = cmd_dehn(session, path, lambda, c_const, k_const, os);
    session.collect_warnings(results);
  } catch (const Failure& f) {
    failure = f;
    code = f.code;
  } catch (const std::exception& e) {
    failure = Failure{kExitInternal, e.what()};
    code = kExitInternal;
  }

  std::cout << os.str();
  if (failure.code != kExitOk) std::cerr << "error: " << failure.message << "\n";
  if (!json_out.empty()) {
    const Json report = session.report(results, failure.code != kExitOk ? &failure : nullptr);
    if (!write_report(json_out, report)) {
      std::cerr << "error: cannot write " << json_out << "\n";
      return kExitInput;
    }
  }
  return code;
}
