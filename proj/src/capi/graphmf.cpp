#include "graphmf/graphmf.h"

#include <openssl/evp.h>

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "graphmf/bass_serre.hpp"
#include "graphmf/equiv.hpp"
#include "graphmf/errors.hpp"
#include "graphmf/filling.hpp"
#include "graphmf/manifest.hpp"
#include "graphmf/model.hpp"
#include "graphmf/obstruction.hpp"
#include "graphmf/serialize.hpp"

struct gm_manifold {
  graphmf::GraphManifold m;
};

namespace {

using graphmf::Json;

thread_local std::string last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_json(const Json& j, char** out) { *out = dup_string(j.dump(2)); }

template <class F>
gm_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return GM_OK;
  } catch (const graphmf::InputError& e) {
    last_error = e.what();
    return GM_ERR_INPUT;
  } catch (const graphmf::UnsupportedError& e) {
    last_error = e.what();
    return GM_ERR_UNSUPPORTED;
  } catch (const Json::exception& e) {
    last_error = std::string("json: ") + e.what();
    return GM_ERR_INPUT;
  } catch (const graphmf::InvariantError& e) {
    last_error = std::string("internal invariant failed: ") + e.what();
    return GM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return GM_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error: unknown exception";
    return GM_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw graphmf::InputError(std::string(what) + " is null");
}

Json parse_text(const char* text, const char* what) {
  require(text, what);
  return Json::parse(text);
}

graphmf::TreePath parse_tree_path(const graphmf::GraphManifold& m, const Json& j) {
  if (!j.is_array()) throw graphmf::InputError("path must be an array");
  graphmf::TreePath p;
  for (const auto& s : j) {
    graphmf::TreeStep step;
    if (s.is_string()) {
      step.traversal = graphmf::parse_traversal(m, s.get<std::string>());
    } else if (s.is_object()) {
      step.traversal = graphmf::parse_traversal(m, s.at("traversal").get<std::string>());
      if (s.contains("token")) step.token = s.at("token").get<std::size_t>();
    } else {
      throw graphmf::InputError("path step must be a string or an object");
    }
    p.steps.push_back(step);
  }
  return p;
}

graphmf::Int parse_decimal(const char* s, const char* what) {
  require(s, what);
  graphmf::Int x;
  if (x.set_str(s, 10) != 0) throw graphmf::InputError(std::string(what) + " is not an integer: " + s);
  return x;
}

const graphmf::HomologyData& homology_of(const graphmf::GraphManifold& m) {
  if (!m.homology) throw graphmf::InputError("manifest has no homology section");
  return *m.homology;
}

const graphmf::Piece& twisted_double_piece(const graphmf::GraphManifold& m) {
  const auto& h = homology_of(m);
  if (h.piece) return m.piece(*h.piece);
  if (m.pieces.size() != 1) throw graphmf::InputError("homology.piece is required when there are several pieces");
  return m.pieces.front();
}

Json monodromy_result_json(const graphmf::GraphManifold& m, const graphmf::MonodromyResult& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back(Json{{"traversal", graphmf::traversal_name(m, s.traversal)},
                         {"fiber_block", graphmf::matrix_to_json(s.fiber_block)}});
  Json j{{"defined", r.defined}, {"steps", steps}};
  if (r.defined) {
    const graphmf::OrderAnalysis a = graphmf::analyse_order(r.matrix);
    Json charpoly = Json::array();
    for (const auto& c : a.charpoly) charpoly.push_back(graphmf::int_to_json(c));
    j["matrix"] = graphmf::matrix_to_json(r.matrix);
    j["finite_order"] = a.finite;
    j["order"] = a.finite ? Json(a.order) : Json(nullptr);
    j["subkind"] = a.subkind;
    j["charpoly"] = charpoly;
    j["cyclotomic_factors"] = a.cyclotomic_factors;
  } else {
    j["reason"] = r.reason;
  }
  return j;
}

}  // namespace

extern "C" {

const char* gm_version(void) { return "0.1.0"; }

const char* gm_last_error(void) { return last_error.c_str(); }

void gm_string_free(char* s) { std::free(s); }

gm_status gm_manifold_from_json(const char* json, gm_manifold** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    const Json j = parse_text(json, "json");
    *out = new gm_manifold{graphmf::load_manifest(j)};
  });
}

gm_status gm_manifold_from_file(const char* path, gm_manifold** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    std::ifstream in(path);
    if (!in) throw graphmf::InputError(std::string("cannot open ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new gm_manifold{graphmf::load_manifest(Json::parse(ss.str()))};
  });
}

void gm_manifold_free(gm_manifold* m) { delete m; }

gm_status gm_manifold_to_json(const gm_manifold* m, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    put_json(graphmf::manifest_to_json(m->m), out);
  });
}

size_t gm_manifold_dimension(const gm_manifold* m) { return m ? m->m.n : 0; }

size_t gm_piece_count(const gm_manifold* m) { return m ? m->m.pieces.size() : 0; }

size_t gm_gluing_count(const gm_manifold* m) { return m ? m->m.gluings.size() : 0; }

gm_status gm_is_irreducible(const gm_manifold* m, int* out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    *out = graphmf::is_irreducible(m->m).irreducible ? 1 : 0;
  });
}

gm_status gm_validate_json(const char* json, int* valid, char** report) {
  return guarded([&] {
    require(valid, "valid");
    require(report, "report");
    Json j;
    try {
      j = parse_text(json, "json");
    } catch (const Json::parse_error& e) {
      *valid = 0;
      put_json(Json{{"valid", false},
                    {"violations", Json::array({Json{{"code", "schema"}, {"element", ""}, {"message", e.what()}}})}},
               report);
      return;
    }
    const graphmf::ValidationReport r = graphmf::validate_manifest(j);
    *valid = r.valid() ? 1 : 0;
    put_json(Json{{"valid", r.valid()}, {"violations", graphmf::violations_to_json(r.violations)}}, report);
  });
}

gm_status gm_check(const gm_manifold* m, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    put_json(graphmf::check_report(m->m), out);
  });
}

gm_status gm_classify(const gm_manifold* m, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    put_json(graphmf::classify_report(m->m), out);
  });
}

gm_status gm_acylindricity(const gm_manifold* m, size_t max_len, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    const auto r = graphmf::check_acylindricity(m->m, max_len);
    put_json(graphmf::acylindricity_report(m->m, r), out);
  });
}

gm_status gm_path_fix_lattice(const gm_manifold* m, const char* path_json, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    const graphmf::TreePath p = parse_tree_path(m->m, parse_text(path_json, "path"));
    const graphmf::Lattice l = graphmf::path_fix_lattice(m->m, p);
    put_json(Json{{"path", graphmf::tree_path_to_json(m->m, p)}, {"lattice", graphmf::lattice_to_json(l)}}, out);
  });
}

gm_status gm_dehn_twist(const gm_manifold* m, const char* wall, const char* h_json, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(wall, "wall");
    require(out, "out");
    const graphmf::Vector h = graphmf::parse_vector(parse_text(h_json, "h"), "h");
    const auto r = graphmf::dehn_twist_has_infinite_order(m->m, wall, h);
    Json j = graphmf::dehn_twist_report(r);
    j["wall"] = wall;
    j["h"] = graphmf::vector_to_json(h);
    put_json(j, out);
  });
}

gm_status gm_equiv(const gm_manifold* pregraph, const char* edge, const char* patterns_json, char** out) {
  return guarded([&] {
    require(pregraph, "pregraph");
    require(edge, "edge");
    require(out, "out");
    const Json j = parse_text(patterns_json, "patterns");
    std::vector<graphmf::IntMatrix> pats;
    if (j.is_object()) {
      pats.push_back(graphmf::parse_matrix(j.at("P"), "P"));
      pats.push_back(graphmf::parse_matrix(j.at("P_prime"), "P_prime"));
    } else if (j.is_array()) {
      for (const auto& p : j) pats.push_back(graphmf::parse_matrix(p, "pattern"));
    } else {
      throw graphmf::InputError("patterns must be an array of matrices or {P, P_prime}");
    }
    if (pats.size() < 2) throw graphmf::InputError("at least two patterns are required");
    Json pairs = Json::array();
    std::size_t equivalent = 0, undetermined = 0;
    for (std::size_t i = 0; i < pats.size(); ++i)
      for (std::size_t k = i + 1; k < pats.size(); ++k) {
        const auto r = graphmf::gluing_patterns_equivalent(pregraph->m, edge, pats[i], pats[k]);
        if (r.verdict == graphmf::EquivVerdict::Equivalent) ++equivalent;
        if (r.verdict == graphmf::EquivVerdict::Undetermined) ++undetermined;
        Json e = graphmf::equivalence_report(r);
        e["i"] = i;
        e["j"] = k;
        pairs.push_back(e);
      }
    put_json(Json{{"edge", edge},
                  {"pattern_count", pats.size()},
                  {"pairs", pairs},
                  {"equivalent_pairs", equivalent},
                  {"undetermined_pairs", undetermined},
                  {"pairwise_inequivalent", equivalent == 0 && undetermined == 0}},
             out);
  });
}

gm_status gm_generate(const gm_manifold* pregraph, const char* edge, size_t count, char** out) {
  return guarded([&] {
    require(pregraph, "pregraph");
    require(edge, "edge");
    require(out, "out");
    const auto fam = graphmf::generate_distinct_family(pregraph->m, edge, count);
    put_json(graphmf::family_report(pregraph->m, edge, fam), out);
  });
}

gm_status gm_invariant(const gm_manifold* a, const gm_manifold* b, char** out) {
  return guarded([&] {
    require(a, "first manifold");
    require(b, "second manifold");
    require(out, "out");
    const auto bis = graphmf::qi_invariant_bisimilar(a->m, b->m);
    const auto iso = graphmf::iso_necessary(a->m, b->m);
    put_json(Json{{"bisimulation", graphmf::bisimulation_report(bis)},
                  {"isomorphism", graphmf::isomorphism_report(iso)}},
             out);
  });
}

gm_status gm_monodromy(const gm_manifold* m, const char* cycle_json, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    const Json j = parse_text(cycle_json, "cycle");
    if (!j.is_array()) throw graphmf::InputError("cycle must be an array of traversals");
    std::vector<graphmf::Traversal> cycle;
    for (const auto& s : j) cycle.push_back(graphmf::parse_traversal(m->m, s.get<std::string>()));
    put_json(monodromy_result_json(m->m, graphmf::cycle_fiber_monodromy(m->m, cycle)), out);
  });
}

gm_status gm_obstruct(const gm_manifold* m, const char* kind, size_t max_cycle_len, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(kind, "kind");
    require(out, "out");
    const std::string k = kind;
    if (k != "monodromy" && k != "euler_class" && k != "twisted_double" && k != "all")
      throw graphmf::InputError("unknown obstruction kind: " + k);
    const std::size_t len = max_cycle_len ? max_cycle_len : graphmf::default_max_cycle_len();
    Json certs = Json::array();
    Json result = Json::object();
    if (k == "monodromy" || k == "all")
      certs.push_back(graphmf::certificate_to_json(graphmf::detect_distorted_wall(m->m, len)));
    const bool has_h = m->m.homology.has_value();
    if (k == "euler_class" || (k == "all" && has_h)) {
      const auto& h = homology_of(m->m);
      certs.push_back(graphmf::certificate_to_json(graphmf::euler_class_obstruction(h.h1_boundary_rank, h.i_star)));
    }
    if (k == "twisted_double" || (k == "all" && has_h && !m->m.homology->b.empty())) {
      const auto td = graphmf::twisted_double_obstruction(twisted_double_piece(m->m), homology_of(m->m));
      certs.push_back(graphmf::certificate_to_json(td.certificate));
      result["twisted_double_manifest"] = graphmf::manifest_to_json(td.manifold);
    }
    bool obstructed = false;
    for (const auto& c : certs) obstructed = obstructed || c.at("verdict") == "obstructed";
    result["kind"] = k;
    result["certificates"] = certs;
    result["obstructed"] = obstructed;
    put_json(result, out);
  });
}

gm_status gm_verify_certificate(const char* certificate_json, const gm_manifold* m, int* valid, char** reason) {
  return guarded([&] {
    require(valid, "valid");
    const graphmf::Certificate c = graphmf::certificate_from_json(parse_text(certificate_json, "certificate"));
    std::string why;
    *valid = graphmf::verify_certificate(c, why, m ? &m->m : nullptr) ? 1 : 0;
    if (reason) *reason = dup_string(why);
  });
}

gm_status gm_dehn(const gm_manifold* m, const char* lambda, const char* C, const char* K, char** out) {
  return guarded([&] {
    require(m, "manifold");
    require(out, "out");
    const graphmf::Int l = parse_decimal(lambda, "lambda");
    const graphmf::Int c = parse_decimal(C, "C");
    const graphmf::Int k = parse_decimal(K, "K");
    const auto bounds = graphmf::piece_bounds(m->m);
    graphmf::BoundExpr f = bounds.front();
    for (std::size_t i = 1; i < bounds.size(); ++i) f = graphmf::add(f, bounds[i]);
    const graphmf::BoundExpr g = graphmf::compose_dehn_bound(bounds, l, c, k);
    Json pieces = Json::object();
    for (std::size_t i = 0; i < bounds.size(); ++i) pieces[m->m.pieces[i].id] = graphmf::bound_to_json(bounds[i]);
    put_json(Json{{"piece_bounds", pieces},
                  {"lambda", graphmf::int_to_json(l)},
                  {"C", graphmf::int_to_json(c)},
                  {"K", graphmf::int_to_json(k)},
                  {"F", graphmf::bound_to_json(f)},
                  {"G", graphmf::bound_to_json(g)}},
             out);
  });
}

gm_status gm_sha256_hex(const void* data, size_t len, char** out) {
  return guarded([&] {
    require(out, "out");
    if (len && !data) throw graphmf::InputError("data is null");
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    if (EVP_Digest(data, len, md, &md_len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("EVP_Digest failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < md_len; ++i) {
      s.push_back(hex[md[i] >> 4]);
      s.push_back(hex[md[i] & 15]);
    }
    *out = dup_string(s);
  });
}

}  // extern "C"
