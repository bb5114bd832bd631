#include "graphmf/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "graphmf/errors.hpp"

namespace graphmf {

std::size_t GraphManifold::piece_index(const std::string& id) const {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].id == id) return i;
  throw InputError("unknown piece '" + id + "'");
}

const Piece& GraphManifold::piece(const std::string& id) const { return pieces[piece_index(id)]; }

std::size_t GraphManifold::gluing_index(const std::string& id) const {
  for (std::size_t i = 0; i < gluings.size(); ++i)
    if (gluings[i].id == id) return i;
  throw InputError("unknown gluing '" + id + "'");
}

const Gluing& GraphManifold::gluing(const std::string& id) const { return gluings[gluing_index(id)]; }

Lattice fiber_lattice(std::size_t frame_dim, std::size_t fiber_dim) {
  if (fiber_dim > frame_dim) throw InputError("fiber dimension exceeds frame dimension");
  return Lattice::coordinate(frame_dim, frame_dim - fiber_dim, fiber_dim);
}

Lattice fiber_lattice(const GraphManifold& m, const std::string& piece_id) {
  return fiber_lattice(m.frame_dim(), m.piece(piece_id).fiber_dim);
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Number of connected components of the piece graph, skipping gluing `skip`.
std::size_t component_count(const GraphManifold& m, std::size_t skip) {
  std::vector<std::size_t> parent(m.pieces.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t g = 0; g < m.gluings.size(); ++g) {
    if (g == skip) continue;
    std::size_t a = find_root(parent, m.piece_index(m.gluings[g].from.piece));
    std::size_t b = find_root(parent, m.piece_index(m.gluings[g].to.piece));
    parent[a] = b;
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find_root(parent, i));
  return roots.size();
}

}  // namespace

bool is_matrix_group(const std::vector<IntMatrix>& elems, std::string& why) {
  auto member = [&](const IntMatrix& x) {
    for (const auto& e : elems)
      if (e == x) return true;
    return false;
  };
  if (elems.empty()) {
    why = "empty set";
    return false;
  }
  for (const auto& a : elems) {
    if (!member(inverse_unimodular(a))) {
      why = "not closed under inverse at " + a.to_string();
      return false;
    }
    for (const auto& b : elems)
      if (!member(a * b)) {
        why = "not closed under product at " + a.to_string() + " * " + b.to_string();
        return false;
      }
  }
  return true;
}

std::vector<Violation> find_violations(const GraphManifold& m) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string element, std::string message) {
    out.push_back({std::move(code), std::move(element), std::move(message)});
  };

  if (m.n < 3) add("dimension", "n", "ambient dimension must be at least 3");
  if (m.pieces.empty()) add("empty", "pieces", "manifold has no pieces");

  std::set<std::string> piece_ids;
  std::map<std::string, const Piece*> by_id;
  for (const auto& p : m.pieces) {
    if (!piece_ids.insert(p.id).second) add("duplicate-piece", p.id, "piece id used twice");
    by_id[p.id] = &p;
    if (p.base_dim == 2 && !m.extended)
      add("surface-piece", p.id, "base_dim 2 requires the extended flag");
    else if (p.base_dim < 2)
      add("dimension", p.id, "base_dim must be at least 3 (2 with extended)");
    if (p.base_dim + p.fiber_dim != m.n)
      add("dimension", p.id,
          "base_dim + fiber_dim = " + std::to_string(p.base_dim + p.fiber_dim) + " differs from n = " +
              std::to_string(m.n));
    if (p.cusps.empty()) add("empty-cusps", p.id, "piece has no boundary tori");
    std::set<std::string> cusps;
    for (const auto& c : p.cusps)
      if (!cusps.insert(c).second) add("duplicate-cusp", p.id + "." + c, "cusp id used twice in piece");
    if (p.label && p.label->empty()) add("empty-label", p.id, "label must be non-empty");
  }

  std::set<std::string> gluing_ids;
  std::set<Endpoint> used;
  bool endpoints_ok = true;
  for (const auto& g : m.gluings) {
    if (!gluing_ids.insert(g.id).second) add("duplicate-gluing", g.id, "gluing id used twice");
    for (const Endpoint* e : {&g.from, &g.to}) {
      auto it = by_id.find(e->piece);
      if (it == by_id.end()) {
        add("unknown-endpoint", g.id, "unknown piece '" + e->piece + "'");
        endpoints_ok = false;
        continue;
      }
      const auto& cs = it->second->cusps;
      if (std::find(cs.begin(), cs.end(), e->cusp) == cs.end()) {
        add("unknown-endpoint", g.id, "piece '" + e->piece + "' has no cusp '" + e->cusp + "'");
        endpoints_ok = false;
      }
    }
    if (g.from == g.to) add("self-endpoint", g.id, "a boundary torus cannot be glued to itself");
    for (const Endpoint* e : {&g.from, &g.to}) {
      if (!used.insert(*e).second)
        add("doubly-used-cusp", g.id, "cusp " + e->piece + "." + e->cusp + " is glued more than once");
    }
    const std::size_t k = m.n >= 1 ? m.n - 1 : 0;
    if (g.matrix.rows() != k || g.matrix.cols() != k) {
      add("dimension", g.id,
          "matrix is " + std::to_string(g.matrix.rows()) + "x" + std::to_string(g.matrix.cols()) +
              ", expected " + std::to_string(k) + "x" + std::to_string(k));
    } else if (!is_unimodular(g.matrix)) {
      add("non-unimodular", g.id, "matrix has determinant " + determinant(g.matrix).get_str());
    } else if (m.extended && endpoints_ok && by_id.count(g.from.piece) && by_id.count(g.to.piece)) {
      const Piece& a = *by_id[g.from.piece];
      const Piece& b = *by_id[g.to.piece];
      if (a.base_dim == 2 && b.base_dim == 2 && a.fiber_dim <= k && b.fiber_dim <= k &&
          image(fiber_lattice(k, a.fiber_dim), g.matrix) == fiber_lattice(k, b.fiber_dim))
        add("surface-fiber-identification", g.id, "gluing identifies the fibers of two surface pieces");
    }
  }

  if (endpoints_ok && !m.pieces.empty() && component_count(m, m.gluings.size()) != 1)
    add("disconnected", "gluings", "piece graph is not connected");

  for (const auto& [pid, elems] : m.theta) {
    auto it = by_id.find(pid);
    if (it == by_id.end()) {
      add("unknown-piece", "theta." + pid, "theta refers to an unknown piece");
      continue;
    }
    if (it->second->base_dim < 2) continue;
    const std::size_t b = it->second->base_dim - 1;
    bool shapes_ok = true;
    for (const auto& t : elems) {
      if (t.rows() != b || t.cols() != b) {
        add("dimension", "theta." + pid, "theta matrices must be " + std::to_string(b) + "x" + std::to_string(b));
        shapes_ok = false;
        break;
      }
      if (!is_unimodular(t)) {
        add("non-unimodular", "theta." + pid, "theta element " + t.to_string() + " is not unimodular");
        shapes_ok = false;
        break;
      }
    }
    std::string why;
    if (shapes_ok && !is_matrix_group(elems, why)) add("theta-not-group", "theta." + pid, why);
  }

  for (const auto& [pid, gens] : m.shear) {
    auto it = by_id.find(pid);
    if (it == by_id.end()) {
      add("unknown-piece", "shear." + pid, "shear refers to an unknown piece");
      continue;
    }
    if (it->second->base_dim < 2) continue;
    for (const auto& v : gens)
      if (v.size() != it->second->base_dim - 1)
        add("dimension", "shear." + pid, "shear generators must have length " + std::to_string(it->second->base_dim - 1));
  }

  for (const auto& [pid, bound] : m.dehn_bounds)
    if (!by_id.count(pid)) add("unknown-piece", "dehn_bounds." + pid, "dehn bound for an unknown piece");

  if (m.homology) {
    const HomologyData& h = *m.homology;
    if (h.i_star.rows() != h.h1_interior_rank || h.i_star.cols() != h.h1_boundary_rank)
      add("dimension", "homology.i_star",
          "i_star must be " + std::to_string(h.h1_interior_rank) + "x" + std::to_string(h.h1_boundary_rank));
    if (h.piece && !by_id.count(*h.piece)) add("unknown-piece", "homology.piece", "unknown piece '" + *h.piece + "'");
    if (h.b.size() != h.weights.size())
      add("dimension", "homology.weights", "one weight per boundary class is required");
    std::size_t total = 0;
    for (const auto& v : h.b) total += v.size();
    if (!h.b.empty() && total != h.h1_boundary_rank)
      add("dimension", "homology.b", "boundary classes must concatenate to length h1_boundary_rank");
    for (const auto& w : h.weights)
      if (w < 1) add("non-positive-weight", "homology.weights", "weights must be at least 1");
  }
  return out;
}

void require_valid(const GraphManifold& m) {
  const auto v = find_violations(m);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid manifold:";
  for (const auto& x : v) os << "\n  [" << x.code << "] " << x.element << ": " << x.message;
  throw InputError(os.str());
}

TransversalityResult matrix_is_transverse(const IntMatrix& matrix, std::size_t from_fiber_dim,
                                          std::size_t to_fiber_dim) {
  if (!matrix.is_square()) throw InputError("gluing matrix must be square");
  if (determinant(matrix) == 0) throw InputError("gluing matrix must be nonsingular");
  const std::size_t k = matrix.rows();
  const Lattice witness =
      intersect(image(fiber_lattice(k, from_fiber_dim), matrix), fiber_lattice(k, to_fiber_dim));
  return {witness.is_zero(), witness};
}

TransversalityResult gluing_is_transverse(const GraphManifold& m, const Gluing& g) {
  return matrix_is_transverse(g.matrix, m.piece(g.from.piece).fiber_dim, m.piece(g.to.piece).fiber_dim);
}

IrreducibilityResult is_irreducible(const GraphManifold& m) {
  IrreducibilityResult r;
  for (const auto& g : m.gluings)
    if (!gluing_is_transverse(m, g).transverse) r.failing_gluings.push_back(g.id);
  r.irreducible = r.failing_gluings.empty();
  return r;
}

bool has_transverse_pair(const GraphManifold& m) {
  for (const auto& g : m.gluings)
    if (gluing_is_transverse(m, g).transverse) return true;
  return false;
}

std::size_t internal_wall_count(const GraphManifold& m) { return m.gluings.size(); }

std::size_t boundary_wall_count(const GraphManifold& m) {
  std::size_t cusps = 0;
  for (const auto& p : m.pieces) cusps += p.cusps.size();
  return cusps - 2 * m.gluings.size();
}

bool is_closed(const GraphManifold& m) { return boundary_wall_count(m) == 0; }

std::vector<std::string> separating_walls(const GraphManifold& m) {
  std::vector<std::string> out;
  const std::size_t base = component_count(m, m.gluings.size());
  for (std::size_t g = 0; g < m.gluings.size(); ++g) {
    if (m.gluings[g].is_loop()) continue;
    if (component_count(m, g) > base) out.push_back(m.gluings[g].id);
  }
  return out;
}

PropertyReport classify_properties(const GraphManifold& m) {
  std::vector<std::string> trivial_fiber;
  for (const auto& p : m.pieces)
    if (p.fiber_dim == 0) trivial_fiber.push_back(p.id);
  const bool all_nontrivial = trivial_fiber.empty();
  const IrreducibilityResult irr = is_irreducible(m);
  const std::size_t walls = internal_wall_count(m);
  const std::size_t npieces = m.pieces.size();
  const bool closed = is_closed(m);
  const bool transverse_pair = has_transverse_pair(m);
  const std::vector<std::string> separating = separating_walls(m);

  auto join = [](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i];
    return s;
  };
  auto yn = [](bool b) { return std::string(b ? "true" : "false"); };
  const std::string fibers_line =
      "all fibers non-trivial: " + yn(all_nontrivial) +
      (all_nontrivial ? "" : " (trivial fiber: " + join(trivial_fiber) + ")");
  const std::string irr_line =
      "irreducible: " + yn(irr.irreducible) +
      (irr.irreducible ? "" : " (non-transverse: " + join(irr.failing_gluings) + ")");
  const std::string walls_line = "internal walls: " + std::to_string(walls);

  PropertyReport r;
  r.simplicial_volume_zero = {all_nontrivial, {fibers_line}};

  if (m.n % 2 == 0)
    r.euler_char_zero_if_even_dim = {all_nontrivial, {"n = " + std::to_string(m.n) + " is even", fibers_line}};
  else
    r.euler_char_zero_if_even_dim = {std::nullopt, {"n = " + std::to_string(m.n) + " is odd; not applicable"}};

  const bool single_fibered_no_walls = npieces == 1 && m.pieces[0].fiber_dim >= 1 && walls == 0;
  r.cstar_simple = {irr.irreducible && !single_fibered_no_walls,
                    {irr_line, "single piece with non-trivial fiber and no internal walls: " +
                                   yn(single_fibered_no_walls)}};

  const bool single_one_wall = npieces == 1 && walls == 1;
  r.sq_universal_guaranteed = {
      (irr.irreducible && !single_one_wall) || !separating.empty(),
      {irr_line, "single piece with exactly one internal wall: " + yn(single_one_wall),
       "separating internal walls: " + (separating.empty() ? std::string("none") : join(separating))}};

  r.relatively_hyperbolic = {!all_nontrivial, {fibers_line}};
  r.thick_order_one = {all_nontrivial && walls >= 1, {fibers_line, walls_line}};
  r.cohopf_hypothesis = {closed && transverse_pair,
                         {"closed: " + yn(closed), "has transverse pair: " + yn(transverse_pair)}};
  return r;
}

}  // namespace graphmf
