#include "graphmf/manifest.hpp"

#include <climits>
#include <set>

#include "graphmf/errors.hpp"

namespace graphmf {
namespace {

void reject_unknown_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
}

const Json& require_key(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

std::string require_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw InputError(what + " must be a string");
  return j.get<std::string>();
}

std::size_t parse_size(const Json& j, const std::string& what) {
  Int v = parse_int(j, what.c_str());
  if (v < 0 || !v.fits_ulong_p()) throw InputError(what + " must be a non-negative machine-size integer");
  return v.get_ui();
}

Endpoint parse_endpoint(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw InputError(what + " must be [piece_id, cusp_id]");
  return {require_string(j[0], what + "[0]"), require_string(j[1], what + "[1]")};
}

}  // namespace

Int parse_int(const Json& j, const char* what) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
    return Int(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Int v;
    bool ok = !s.empty();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) ok = false;
    for (std::size_t i = start; ok && i < s.size(); ++i) ok = s[i] >= '0' && s[i] <= '9';
    if (!ok || v.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0)
      throw InputError(std::string(what) + ": '" + s + "' is not a decimal integer");
    return v;
  }
  throw InputError(std::string(what) + " must be an integer or a decimal string");
}

Rational parse_rational(const Json& j, const char* what) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      Int num = parse_int(Json(s.substr(0, slash)), what);
      Int den = parse_int(Json(s.substr(slash + 1)), what);
      if (den == 0) throw InputError(std::string(what) + ": zero denominator");
      Rational q(num, den);
      q.canonicalize();
      return q;
    }
  }
  return Rational(parse_int(j, what));
}

Vector parse_vector(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of integers");
  Vector v;
  for (const auto& x : j) v.push_back(parse_int(x, what));
  return v;
}

IntMatrix parse_matrix(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of rows");
  std::vector<Vector> rows;
  for (const auto& r : j) rows.push_back(parse_vector(r, what));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw InputError(std::string(what) + " has rows of different lengths");
  return IntMatrix::from_rows(rows, cols);
}

BoundExpr parse_bound(const Json& j) {
  if (j.is_string()) return BoundExpr::named(j.get<std::string>());
  reject_unknown_keys(j, {"kind", "coeffs", "degree"}, "dehn bound");
  const std::string kind = require_string(require_key(j, "kind", "dehn bound"), "dehn bound kind");
  if (kind == "exp") return BoundExpr::exponential();
  if (kind != "poly") throw InputError("dehn bound kind must be 'poly' or 'exp'");
  const Json& cs = require_key(j, "coeffs", "dehn bound");
  if (!cs.is_array()) throw InputError("dehn bound coeffs must be an array");
  std::vector<Rational> coeffs;
  for (const auto& c : cs) coeffs.push_back(parse_rational(c, "dehn bound coefficient"));
  return BoundExpr::polynomial(std::move(coeffs));
}

GraphManifold parse_manifest(const Json& j) {
  reject_unknown_keys(j, {"n", "extended", "pieces", "gluings", "theta", "shear", "homology", "dehn_bounds"},
                      "manifest");
  GraphManifold m;
  m.n = parse_size(require_key(j, "n", "manifest"), "n");
  if (auto it = j.find("extended"); it != j.end()) {
    if (!it->is_boolean()) throw InputError("extended must be a boolean");
    m.extended = it->get<bool>();
  }
  const Json& pieces = require_key(j, "pieces", "manifest");
  if (!pieces.is_array()) throw InputError("pieces must be an array");
  for (const auto& pj : pieces) {
    reject_unknown_keys(pj, {"id", "base_dim", "fiber_dim", "cusps", "label"}, "piece");
    Piece p;
    p.id = require_string(require_key(pj, "id", "piece"), "piece id");
    const std::string where = "piece '" + p.id + "'";
    p.base_dim = parse_size(require_key(pj, "base_dim", where), where + " base_dim");
    p.fiber_dim = parse_size(require_key(pj, "fiber_dim", where), where + " fiber_dim");
    const Json& cusps = require_key(pj, "cusps", where);
    if (!cusps.is_array()) throw InputError(where + " cusps must be an array");
    for (const auto& c : cusps) p.cusps.push_back(require_string(c, where + " cusp id"));
    if (auto it = pj.find("label"); it != pj.end()) p.label = require_string(*it, where + " label");
    m.pieces.push_back(std::move(p));
  }
  if (auto it = j.find("gluings"); it != j.end()) {
    if (!it->is_array()) throw InputError("gluings must be an array");
    std::size_t idx = 0;
    for (const auto& gj : *it) {
      ++idx;
      Gluing g;
      g.id = "g" + std::to_string(idx);
      reject_unknown_keys(gj, {"from", "to", "matrix"}, "gluing " + g.id);
      g.from = parse_endpoint(require_key(gj, "from", g.id), g.id + ".from");
      g.to = parse_endpoint(require_key(gj, "to", g.id), g.id + ".to");
      g.matrix = parse_matrix(require_key(gj, "matrix", g.id), (g.id + ".matrix").c_str());
      m.gluings.push_back(std::move(g));
    }
  }
  if (auto it = j.find("theta"); it != j.end()) {
    if (!it->is_object()) throw InputError("theta must map piece ids to arrays of matrices");
    for (const auto& [pid, mats] : it->items()) {
      if (!mats.is_array()) throw InputError("theta." + pid + " must be an array of matrices");
      auto& dst = m.theta[pid];
      for (const auto& mj : mats) dst.push_back(parse_matrix(mj, ("theta." + pid).c_str()));
    }
  }
  if (auto it = j.find("shear"); it != j.end()) {
    if (!it->is_object()) throw InputError("shear must map piece ids to arrays of vectors");
    for (const auto& [pid, gens] : it->items()) {
      if (!gens.is_array()) throw InputError("shear." + pid + " must be an array of vectors");
      auto& dst = m.shear[pid];
      for (const auto& v : gens) dst.push_back(parse_vector(v, ("shear." + pid).c_str()));
    }
  }
  if (auto it = j.find("homology"); it != j.end()) {
    const Json& hj = *it;
    reject_unknown_keys(hj, {"h1_boundary_rank", "h1_interior_rank", "i_star", "b", "weights", "piece"}, "homology");
    HomologyData h;
    h.h1_boundary_rank = parse_size(require_key(hj, "h1_boundary_rank", "homology"), "h1_boundary_rank");
    h.h1_interior_rank = parse_size(require_key(hj, "h1_interior_rank", "homology"), "h1_interior_rank");
    h.i_star = parse_matrix(require_key(hj, "i_star", "homology"), "i_star");
    if (h.i_star.rows() == 0 && h.h1_interior_rank == 0) h.i_star = IntMatrix(h.h1_interior_rank, h.h1_boundary_rank);
    if (auto b = hj.find("b"); b != hj.end()) {
      if (!b->is_array()) throw InputError("homology.b must be an array of vectors");
      for (const auto& v : *b) h.b.push_back(parse_vector(v, "homology.b"));
    }
    if (auto w = hj.find("weights"); w != hj.end()) h.weights = parse_vector(*w, "homology.weights");
    if (auto p = hj.find("piece"); p != hj.end()) h.piece = require_string(*p, "homology.piece");
    m.homology = std::move(h);
  }
  if (auto it = j.find("dehn_bounds"); it != j.end()) {
    if (!it->is_object()) throw InputError("dehn_bounds must map piece ids to bounds");
    for (const auto& [pid, bj] : it->items()) m.dehn_bounds.emplace(pid, parse_bound(bj));
  }
  return m;
}

ValidationReport validate_manifest(const Json& j) {
  ValidationReport r;
  try {
    GraphManifold m = parse_manifest(j);
    r.violations = find_violations(m);
    if (r.violations.empty()) r.manifold = std::move(m);
  } catch (const InputError& e) {
    r.violations.push_back({"schema", "manifest", e.what()});
  }
  return r;
}

GraphManifold load_manifest(const Json& j) {
  GraphManifold m = parse_manifest(j);
  require_valid(m);
  return m;
}

Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json rational_to_json(const Rational& value) {
  Rational x = value;
  x.canonicalize();
  if (x.get_den() == 1) return int_to_json(x.get_num());
  return Json(x.get_num().get_str() + "/" + x.get_den().get_str());
}

Json vector_to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r)));
  return a;
}

Json lattice_to_json(const Lattice& l) {
  Json basis = Json::array();
  for (const auto& v : l.basis()) basis.push_back(vector_to_json(v));
  return Json{{"ambient_rank", l.ambient_rank()}, {"rank", l.rank()}, {"basis", basis}};
}

Json bound_to_json(const BoundExpr& b) {
  Json coeffs = Json::array();
  if (b.is_exponential()) return Json{{"kind", "exp"}, {"coeffs", coeffs}, {"degree", "inf"}};
  for (const auto& c : b.coeffs()) coeffs.push_back(rational_to_json(c));
  return Json{{"kind", "poly"}, {"coeffs", coeffs}, {"degree", b.degree()}};
}

Json manifest_to_json(const GraphManifold& m) {
  Json j;
  j["n"] = m.n;
  if (m.extended) j["extended"] = true;
  Json pieces = Json::array();
  for (const auto& p : m.pieces) {
    Json pj{{"id", p.id}, {"base_dim", p.base_dim}, {"fiber_dim", p.fiber_dim}, {"cusps", p.cusps}};
    if (p.label) pj["label"] = *p.label;
    pieces.push_back(pj);
  }
  j["pieces"] = pieces;
  Json gluings = Json::array();
  for (const auto& g : m.gluings)
    gluings.push_back(Json{{"from", {g.from.piece, g.from.cusp}},
                           {"to", {g.to.piece, g.to.cusp}},
                           {"matrix", matrix_to_json(g.matrix)}});
  j["gluings"] = gluings;
  if (!m.theta.empty()) {
    Json t = Json::object();
    for (const auto& [pid, mats] : m.theta) {
      Json a = Json::array();
      for (const auto& x : mats) a.push_back(matrix_to_json(x));
      t[pid] = a;
    }
    j["theta"] = t;
  }
  if (!m.shear.empty()) {
    Json s = Json::object();
    for (const auto& [pid, gens] : m.shear) {
      Json a = Json::array();
      for (const auto& v : gens) a.push_back(vector_to_json(v));
      s[pid] = a;
    }
    j["shear"] = s;
  }
  if (m.homology) {
    const HomologyData& h = *m.homology;
    Json hj{{"h1_boundary_rank", h.h1_boundary_rank},
            {"h1_interior_rank", h.h1_interior_rank},
            {"i_star", matrix_to_json(h.i_star)}};
    if (!h.b.empty()) {
      Json b = Json::array();
      for (const auto& v : h.b) b.push_back(vector_to_json(v));
      hj["b"] = b;
      hj["weights"] = vector_to_json(h.weights);
    }
    if (h.piece) hj["piece"] = *h.piece;
    j["homology"] = hj;
  }
  if (!m.dehn_bounds.empty()) {
    Json d = Json::object();
    for (const auto& [pid, b] : m.dehn_bounds) d[pid] = bound_to_json(b);
    j["dehn_bounds"] = d;
  }
  return j;
}

}  // namespace graphmf
