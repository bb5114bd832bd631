#include "graphmf/obstruction.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "graphmf/errors.hpp"

namespace graphmf {
namespace {

using Poly = std::vector<Int>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Division by a monic polynomial; returns false when the remainder is non-zero.
bool divide_monic(const Poly& num, const Poly& den, Poly& quotient) {
  Poly r = num;
  trim(r);
  const std::size_t dd = den.size() - 1;
  if (r.size() < den.size()) {
    quotient.clear();
    return r.empty();
  }
  quotient.assign(r.size() - dd, Int(0));
  for (std::size_t i = r.size(); i-- > dd;) {
    const Int c = r[i];
    if (c == 0) continue;
    quotient[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= c * den[j];
  }
  trim(r);
  trim(quotient);
  return r.empty();
}

// Phi_1 .. Phi_limit.
std::vector<Poly> cyclotomic_table(unsigned long limit) {
  std::vector<Poly> table(limit + 1);
  for (unsigned long m = 1; m <= limit; ++m) {
    Poly p(m + 1, Int(0));
    p[0] = -1;
    p[m] = 1;
    for (unsigned long e = 1; e < m; ++e) {
      if (m % e) continue;
      Poly q;
      divide_monic(p, table[e], q);
      p = q;
    }
    table[m] = p;
  }
  return table;
}

Json provenance(bool established, const std::string& mechanism) {
  return Json{{"source", established ? "established" : "extension"}, {"mechanism", mechanism}};
}

const char* kMonodromyEstablished = "unipotent fiber monodromy along a fiber-preserving cycle distorts the wall subgroup";
const char* kMonodromyExtension = "infinite-order fiber monodromy along a fiber-preserving cycle";
const char* kEuler =
    "non-injective boundary map in first homology gives a circle bundle over the double with "
    "infinite-order Euler class";
const char* kTwisted =
    "twisted double: a locally CAT(0) metric would force the weighted sum of squared boundary norms to vanish";

Json poly_to_json(const Poly& p) { return vector_to_json(p); }

Vector twisted_fiber_image(const Vector& b, const Int& weight) {
  Vector col;
  if (is_zero(b)) {
    col = zero_vector(b.size());
    if (!col.empty()) col[0] = 1;
  } else {
    for (const auto& x : b) col.push_back(weight * x);
  }
  col.push_back(1);
  return col;
}

}  // namespace

Json certificate_to_json(const Certificate& c) {
  return Json{{"kind", c.kind},
              {"verdict", c.verdict},
              {"subkind", c.subkind},
              {"witness", c.witness},
              {"provenance", c.provenance}};
}

Certificate certificate_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("certificate must be a JSON object");
  for (const char* key : {"kind", "verdict", "witness", "provenance"})
    if (!j.contains(key)) throw InputError(std::string("certificate is missing '") + key + "'");
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.verdict = j.at("verdict").get<std::string>();
  c.subkind = j.value("subkind", std::string());
  c.witness = j.at("witness");
  c.provenance = j.at("provenance");
  return c;
}

Traversal parse_traversal(const GraphManifold& m, const std::string& s) {
  if (s.size() < 2 || (s.back() != '+' && s.back() != '-'))
    throw InputError("traversal '" + s + "' must be a gluing id followed by + or -");
  return {m.gluing_index(s.substr(0, s.size() - 1)), s.back() == '+' ? Direction::Forward : Direction::Backward};
}

MonodromyResult cycle_fiber_monodromy(const GraphManifold& m, const std::vector<Traversal>& cycle) {
  if (cycle.empty()) throw InputError("cycle is empty");
  for (const auto& t : cycle)
    if (t.gluing >= m.gluings.size()) throw InputError("cycle refers to an unknown gluing");
  for (std::size_t i = 1; i < cycle.size(); ++i)
    if (arrival(m, cycle[i - 1]).piece != departure(m, cycle[i]).piece)
      throw InputError("cycle is not connected at step " + std::to_string(i + 1));
  if (arrival(m, cycle.back()).piece != departure(m, cycle.front()).piece)
    throw InputError("cycle is not closed");

  MonodromyResult r;
  const std::size_t k = m.frame_dim();
  const std::size_t d = m.piece(departure(m, cycle.front()).piece).fiber_dim;
  r.matrix = IntMatrix::identity(d);
  for (const auto& t : cycle) {
    const std::size_t df = m.piece(departure(m, t).piece).fiber_dim;
    const std::size_t dt = m.piece(arrival(m, t).piece).fiber_dim;
    const IntMatrix a = traversal_matrix(m, t);
    if (df != dt || image(fiber_lattice(k, df), a) != fiber_lattice(k, dt)) {
      r.defined = false;
      r.reason = traversal_name(m, t) + " does not map fiber onto fiber";
      r.steps.clear();
      r.matrix = IntMatrix();
      return r;
    }
    const IntMatrix block = a.block(k - d, k - d, d, d);
    r.steps.push_back({t, block});
    r.matrix = block * r.matrix;
  }
  r.defined = true;
  return r;
}

std::vector<Int> characteristic_polynomial(const IntMatrix& a) {
  if (!a.is_square()) throw InputError("characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  Poly c(n + 1, Int(0));
  c[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = next;
    const IntMatrix am = a * mk;
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    Int q;
    mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), k);
    c[n - k] = -q;
  }
  return c;
}

std::vector<Int> cyclotomic_polynomial(unsigned long m) {
  if (m == 0) throw InputError("cyclotomic index must be positive");
  return cyclotomic_table(m)[m];
}

OrderAnalysis analyse_order(const IntMatrix& a) {
  if (!a.is_square()) throw InputError("order analysis needs a square matrix");
  OrderAnalysis r;
  const std::size_t d = a.rows();
  r.charpoly = characteristic_polynomial(a);
  if (d == 0) {
    r.finite = true;
    r.order = 1;
    r.subkind = "finite_order";
    return r;
  }
  const unsigned long limit = 2 * d * d + 2;
  const auto table = cyclotomic_table(limit);
  Poly rest = r.charpoly;
  for (unsigned long m = 1; m <= limit && rest.size() > 1; ++m) {
    Poly q;
    while (rest.size() >= table[m].size() && divide_monic(rest, table[m], q)) {
      rest = q;
      r.cyclotomic_factors.push_back(m);
    }
  }
  const bool all_cyclotomic = rest.size() == 1;
  if (all_cyclotomic) {
    unsigned long l = 1;
    for (auto m : r.cyclotomic_factors) l = std::lcm(l, m);
    if (power(a, l).is_identity()) {
      r.finite = true;
      r.order = l;
      for (unsigned long e = 1; e <= l; ++e)
        if (l % e == 0 && power(a, e).is_identity()) {
          r.order = e;
          break;
        }
      r.subkind = "finite_order";
      return r;
    }
  }
  r.finite = false;
  const bool unipotent =
      all_cyclotomic && std::all_of(r.cyclotomic_factors.begin(), r.cyclotomic_factors.end(),
                                    [](unsigned long m) { return m == 1; });
  Int tr = 0;
  for (std::size_t i = 0; i < d; ++i) tr += a(i, i);
  if (unipotent)
    r.subkind = "unipotent";
  else if (all_cyclotomic)
    r.subkind = "quasi_unipotent";
  else if (d == 2 && abs(tr) > 2)
    r.subkind = "anosov";
  else
    r.subkind = "other_infinite_order";
  return r;
}

std::size_t default_max_cycle_len() {
  if (const char* env = std::getenv("GRAPHMF_MAX_CYCLE_LEN")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw InputError("GRAPHMF_MAX_CYCLE_LEN must be a positive integer");
  }
  return 8;
}

namespace {

Json monodromy_witness(const GraphManifold& m, const MonodromyResult& mr, const OrderAnalysis& oa) {
  Json cycle = Json::array();
  Json steps = Json::array();
  for (const auto& s : mr.steps) {
    cycle.push_back(traversal_name(m, s.traversal));
    steps.push_back(Json{{"traversal", traversal_name(m, s.traversal)}, {"fiber_block", matrix_to_json(s.fiber_block)}});
  }
  std::vector<std::uint64_t> factors(oa.cyclotomic_factors.begin(), oa.cyclotomic_factors.end());
  return Json{{"cycle", cycle},
              {"fiber_dim", mr.matrix.rows()},
              {"matrix", matrix_to_json(mr.matrix)},
              {"steps", steps},
              {"charpoly", poly_to_json(oa.charpoly)},
              {"cyclotomic_factors", factors}};
}

}  // namespace

Certificate detect_distorted_wall(const GraphManifold& m, std::size_t max_len) {
  if (max_len == 0) throw InputError("cycle length bound must be positive");
  const std::size_t k = m.frame_dim();

  // Fiber restriction of each traversal, when it maps fiber onto fiber.
  struct Move {
    Traversal t;
    IntMatrix block;
  };
  std::vector<Move> moves;
  for (std::size_t g = 0; g < m.gluings.size(); ++g)
    for (Direction dir : {Direction::Forward, Direction::Backward}) {
      Traversal t{g, dir};
      const std::size_t df = m.piece(departure(m, t).piece).fiber_dim;
      const std::size_t dt = m.piece(arrival(m, t).piece).fiber_dim;
      const IntMatrix a = traversal_matrix(m, t);
      if (df != dt || image(fiber_lattice(k, df), a) != fiber_lattice(k, dt)) continue;
      moves.push_back({t, a.block(k - df, k - df, df, df)});
    }

  struct State {
    std::vector<Traversal> walk;
    std::string start;
    IntMatrix acc;
  };
  std::vector<State> frontier;
  {
    std::vector<const Move*> order;
    for (const auto& mv : moves) order.push_back(&mv);
    std::stable_sort(order.begin(), order.end(), [](const Move* a, const Move* b) {
      return !a->block.is_identity() && b->block.is_identity();
    });
    for (const Move* mv : order) frontier.push_back({{mv->t}, departure(m, mv->t).piece, mv->block});
  }

  std::set<std::string> seen;
  std::size_t examined = 0;
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<State> next;
    for (const auto& s : frontier) {
      const std::string here = arrival(m, s.walk.back()).piece;
      const std::string key = s.start + "|" + here + "|" + s.acc.to_string();
      if (!seen.insert(key).second) continue;
      if (here == s.start) {
        ++examined;
        const OrderAnalysis oa = analyse_order(s.acc);
        if (!oa.finite) {
          const MonodromyResult mr = cycle_fiber_monodromy(m, s.walk);
          if (!mr.defined || !(mr.matrix == s.acc)) throw InvariantError("monodromy recomputation disagrees");
          Certificate c;
          c.kind = "monodromy";
          c.verdict = "obstructed";
          c.subkind = oa.subkind;
          c.witness = monodromy_witness(m, mr, oa);
          c.provenance = provenance(oa.subkind == "unipotent",
                                    oa.subkind == "unipotent" ? kMonodromyEstablished : kMonodromyExtension);
          return c;
        }
      }
      if (len == max_len) continue;
      for (const auto& mv : moves) {
        if (departure(m, mv.t).piece != here) continue;
        State e{s.walk, s.start, mv.block * s.acc};
        e.walk.push_back(mv.t);
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  Certificate c;
  c.kind = "monodromy";
  c.verdict = "no_obstruction_found";
  c.subkind = "within_bound";
  c.witness = Json{{"max_len", max_len}, {"closed_cycles_examined", examined}};
  c.provenance = provenance(true, kMonodromyEstablished);
  return c;
}

Certificate euler_class_obstruction(std::size_t h1_boundary_rank, const IntMatrix& i_star) {
  if (i_star.cols() != h1_boundary_rank)
    throw InputError("i_star has " + std::to_string(i_star.cols()) + " columns, expected h1_boundary_rank = " +
                     std::to_string(h1_boundary_rank));
  const Lattice ker = kernel(i_star);
  Certificate c;
  c.kind = "euler_class";
  c.provenance = provenance(true, kEuler);
  if (ker.is_zero()) {
    c.verdict = "no_obstruction_found";
    c.subkind = "injective_boundary_map";
    c.witness = Json{{"i_star", matrix_to_json(i_star)},
                     {"kernel_rank", 0},
                     {"note",
                      "injective boundary map; genuine truncated hyperbolic pieces never have this, so the homology "
                      "input is anomalous"}};
    return c;
  }
  Vector v = ker.basis().front();
  const Int g = content(v);
  for (auto& x : v) x /= g;
  c.verdict = "obstructed";
  c.subkind = "non_injective_boundary_map";
  c.witness = Json{{"i_star", matrix_to_json(i_star)},
                   {"kernel_rank", ker.rank()},
                   {"kernel_vector", vector_to_json(v)},
                   {"image", vector_to_json(i_star * v)}};
  return c;
}

TwistedDouble twisted_double_obstruction(const Piece& piece, const HomologyData& h) {
  const std::size_t cusps = piece.cusps.size();
  const std::size_t r = piece.base_dim - 1;
  if (piece.base_dim < 3) throw InputError("twisted double needs base_dim at least 3");
  if (h.b.size() != cusps) throw InputError("one boundary class b_i per cusp is required");
  if (h.weights.size() != cusps) throw InputError("one weight n_i per cusp is required");
  Vector concat;
  for (const auto& v : h.b) {
    if (v.size() != r) throw InputError("boundary classes must have length base_dim - 1 = " + std::to_string(r));
    concat.insert(concat.end(), v.begin(), v.end());
  }
  for (const auto& w : h.weights)
    if (w < 1) throw InputError("weights must be at least 1");
  if (is_zero(concat)) throw InputError("all boundary classes are zero");
  if (h.i_star.cols() != concat.size() || h.i_star.rows() != h.h1_interior_rank)
    throw InputError("i_star must be h1_interior_rank x (cusps * (base_dim - 1))");
  const Vector image_b = h.i_star * concat;
  if (!is_zero(image_b)) throw InputError("kernel witness fails: i_star applied to the boundary classes is non-zero");

  GraphManifold out;
  out.n = piece.base_dim + 1;
  Piece plus{piece.id + "+", piece.base_dim, 1, piece.cusps, piece.label};
  Piece minus{piece.id + "-", piece.base_dim, 1, piece.cusps, piece.label};
  out.pieces = {plus, minus};
  Json gluings = Json::array();
  Json norms = Json::array();
  Int total = 0;
  for (std::size_t i = 0; i < cusps; ++i) {
    IntMatrix a = IntMatrix::identity(out.frame_dim());
    const Vector col = twisted_fiber_image(h.b[i], h.weights[i]);
    for (std::size_t row = 0; row < col.size(); ++row) a(row, out.frame_dim() - 1) = col[row];
    out.gluings.push_back({"g" + std::to_string(i + 1), {plus.id, piece.cusps[i]}, {minus.id, piece.cusps[i]}, a});
    const Int norm = dot(h.b[i], h.b[i]);
    total += h.weights[i] * norm;
    norms.push_back(int_to_json(norm));
    gluings.push_back(Json{{"id", "g" + std::to_string(i + 1)},
                           {"cusp", piece.cusps[i]},
                           {"fiber_image", vector_to_json(col)}});
  }
  require_valid(out);
  if (!is_irreducible(out).irreducible || !has_transverse_pair(out))
    throw InvariantError("twisted double is not irreducible");

  Json bs = Json::array();
  for (const auto& v : h.b) bs.push_back(vector_to_json(v));
  Certificate c;
  c.kind = "twisted_double";
  c.verdict = "obstructed";
  c.subkind = "positivity";
  c.witness = Json{{"b", bs},
                   {"weights", vector_to_json(h.weights)},
                   {"norms_sq", norms},
                   {"inner_product", "standard"},
                   {"positivity_sum", int_to_json(total)},
                   {"i_star", matrix_to_json(h.i_star)},
                   {"i_star_of_b", vector_to_json(image_b)},
                   {"gluings", gluings},
                   {"irreducible", true},
                   {"has_transverse_pair", true}};
  c.provenance = provenance(true, kTwisted);
  return {c, out};
}

bool verify_certificate(const Certificate& c, std::string& reason, const GraphManifold* m) {
  try {
    const Json& w = c.witness;
    if (c.verdict != "obstructed" && c.verdict != "no_obstruction_found") {
      reason = "unknown verdict '" + c.verdict + "'";
      return false;
    }
    if (c.kind == "monodromy") {
      if (c.verdict == "no_obstruction_found") {
        if (m) {
          const Certificate again = detect_distorted_wall(*m, w.at("max_len").get<std::size_t>());
          if (again.verdict != c.verdict) {
            reason = "re-running the cycle search finds an obstruction";
            return false;
          }
        }
        return true;
      }
      const IntMatrix matrix = parse_matrix(w.at("matrix"), "matrix");
      const std::size_t d = matrix.rows();
      IntMatrix acc = IntMatrix::identity(d);
      for (const auto& s : w.at("steps")) acc = parse_matrix(s.at("fiber_block"), "fiber_block") * acc;
      if (!(acc == matrix)) {
        reason = "product of fiber blocks differs from the stated matrix";
        return false;
      }
      const OrderAnalysis oa = analyse_order(matrix);
      if (oa.finite) {
        reason = "matrix has finite order " + std::to_string(oa.order);
        return false;
      }
      if (oa.subkind != c.subkind) {
        reason = "subkind mismatch: recomputed " + oa.subkind;
        return false;
      }
      if (m) {
        std::vector<Traversal> cycle;
        for (const auto& t : w.at("cycle")) cycle.push_back(parse_traversal(*m, t.get<std::string>()));
        const MonodromyResult mr = cycle_fiber_monodromy(*m, cycle);
        if (!mr.defined || !(mr.matrix == matrix)) {
          reason = "cycle monodromy recomputed from the manifold differs";
          return false;
        }
      }
      return true;
    }
    if (c.kind == "euler_class") {
      const IntMatrix i_star = parse_matrix(w.at("i_star"), "i_star");
      if (c.verdict == "no_obstruction_found") {
        if (!kernel(i_star).is_zero()) {
          reason = "i_star has a non-zero kernel";
          return false;
        }
        return true;
      }
      const Vector v = parse_vector(w.at("kernel_vector"), "kernel_vector");
      if (v.size() != i_star.cols() || is_zero(v) || content(v) != 1 || !is_zero(i_star * v)) {
        reason = "kernel vector is not a primitive non-zero element of ker(i_star)";
        return false;
      }
      return true;
    }
    if (c.kind == "twisted_double") {
      const IntMatrix i_star = parse_matrix(w.at("i_star"), "i_star");
      Vector concat;
      std::vector<Vector> bs;
      for (const auto& b : w.at("b")) {
        bs.push_back(parse_vector(b, "b"));
        concat.insert(concat.end(), bs.back().begin(), bs.back().end());
      }
      const Vector weights = parse_vector(w.at("weights"), "weights");
      if (weights.size() != bs.size() || concat.size() != i_star.cols() || !is_zero(i_star * concat)) {
        reason = "boundary classes are not in the kernel of i_star";
        return false;
      }
      Int total = 0;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        if (weights[i] < 1) {
          reason = "non-positive weight";
          return false;
        }
        total += weights[i] * dot(bs[i], bs[i]);
      }
      if (total <= 0 || total != parse_int(w.at("positivity_sum"), "positivity_sum")) {
        reason = "positivity sum is not the stated strictly positive value";
        return false;
      }
      const Json& gl = w.at("gluings");
      if (gl.size() != bs.size()) {
        reason = "one gluing per boundary class expected";
        return false;
      }
      for (std::size_t i = 0; i < bs.size(); ++i)
        if (parse_vector(gl[i].at("fiber_image"), "fiber_image") != twisted_fiber_image(bs[i], weights[i])) {
          reason = "gluing fiber image does not match (n_i b_i, 1)";
          return false;
        }
      return true;
    }
    reason = "unknown certificate kind '" + c.kind + "'";
    return false;
  } catch (const std::exception& e) {
    reason = std::string("malformed certificate: ") + e.what();
    return false;
  }
}

}  // namespace graphmf
