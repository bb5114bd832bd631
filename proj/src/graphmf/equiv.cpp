#include "graphmf/equiv.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "graphmf/errors.hpp"
#include "graphmf/normal_form.hpp"

namespace graphmf {

const char* to_string(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::Equivalent: return "equivalent";
    case EquivVerdict::NotEquivalent: return "not_equivalent";
    case EquivVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

std::vector<IntMatrix> theta_of(const GraphManifold& m, const Piece& p) {
  auto it = m.theta.find(p.id);
  if (it == m.theta.end()) return {IntMatrix::identity(p.base_dim - 1)};
  std::string why;
  if (!is_matrix_group(it->second, why)) throw InputError("theta." + p.id + " is not a group: " + why);
  return it->second;
}

IntMatrix shear_of(const GraphManifold& m, const Piece& p) {
  const std::size_t b = p.base_dim - 1;
  auto it = m.shear.find(p.id);
  if (it == m.shear.end()) return IntMatrix::identity(b);
  return IntMatrix::from_columns(it->second, b);
}

void require_pattern_shape(const IntMatrix& a, std::size_t k, const char* name) {
  if (a.rows() != k || a.cols() != k)
    throw InputError(std::string(name) + " must be " + std::to_string(k) + "x" + std::to_string(k));
  if (determinant(a) == 0) throw InputError(std::string(name) + " must be nonsingular");
}

// Unknowns x = [Y1 | w1 | Y2 | w2], each block row-major; v_i = Y_i S_i^T.
struct Layout {
  std::size_t y1, w1, y2, w2, total;
};

Layout layout_of(const EdgeBlocks& e) {
  Layout l;
  l.y1 = 0;
  l.w1 = l.y1 + e.k1 * e.shear1.cols();
  l.y2 = l.w1 + e.k1 * e.k1;
  l.w2 = l.y2 + e.k2 * e.shear2.cols();
  l.total = l.w2 + e.k2 * e.k2;
  return l;
}

IntMatrix read_block(const Vector& x, std::size_t offset, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = x[offset + r * cols + c];
  return m;
}

IntMatrix side_matrix(const IntMatrix& theta, const IntMatrix& shear, const Vector& x, std::size_t y_off,
                      std::size_t w_off, std::size_t k) {
  const IntMatrix y = read_block(x, y_off, k, shear.cols());
  const IntMatrix w = read_block(x, w_off, k, k);
  return block_matrix(theta, y * shear.transpose(), w);
}

Vector flatten(const IntMatrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  return v;
}

bool unit_det(const IntMatrix& w) {
  const Int d = determinant(w);
  return d == 1 || d == -1;
}

// Every assignment of the listed coordinates to values in `values` (lexicographic).
void for_each_assignment(std::size_t slots, const std::vector<long>& values,
                         const std::function<bool(const std::vector<long>&)>& f) {
  std::vector<std::size_t> idx(slots, 0);
  for (;;) {
    std::vector<long> a(slots);
    for (std::size_t i = 0; i < slots; ++i) a[i] = values[idx[i]];
    if (f(a)) return;
    std::size_t i = 0;
    while (i < slots && idx[i] + 1 == values.size()) idx[i++] = 0;
    if (i == slots) return;
    ++idx[i];
  }
}

}  // namespace

IntMatrix block_matrix(const IntMatrix& theta, const IntMatrix& v, const IntMatrix& w) {
  const std::size_t b = theta.rows();
  const std::size_t k = w.rows();
  IntMatrix n(b + k, b + k);
  n.set_block(0, 0, theta);
  if (k) {
    n.set_block(b, 0, v);
    n.set_block(b, b, w);
  }
  return n;
}

EdgeBlocks edge_blocks(const GraphManifold& pre, const std::string& edge) {
  const Gluing& g = pre.gluing(edge);
  if (g.is_loop()) throw UnsupportedError("gluing pattern equivalence is not supported for loop edge " + edge);
  const Piece& p1 = pre.piece(g.from.piece);
  const Piece& p2 = pre.piece(g.to.piece);
  EdgeBlocks e;
  e.b1 = p1.base_dim - 1;
  e.k1 = p1.fiber_dim;
  e.b2 = p2.base_dim - 1;
  e.k2 = p2.fiber_dim;
  e.theta1 = theta_of(pre, p1);
  e.theta2 = theta_of(pre, p2);
  e.shear1 = shear_of(pre, p1);
  e.shear2 = shear_of(pre, p2);
  return e;
}

EquivalenceResult gluing_patterns_equivalent(const GraphManifold& pre, const std::string& edge,
                                             const IntMatrix& P, const IntMatrix& P_prime) {
  const EdgeBlocks e = edge_blocks(pre, edge);
  const std::size_t n1 = pre.frame_dim();
  require_pattern_shape(P, n1, "P");
  require_pattern_shape(P_prime, n1, "P'");
  const Layout lay = layout_of(e);

  // Linear part of x -> P' N1(x) - N2(x) P, one column per unknown.
  IntMatrix linear(n1 * n1, lay.total);
  {
    const IntMatrix zero1(e.b1, e.b1), zero2(e.b2, e.b2);
    for (std::size_t j = 0; j < lay.total; ++j) {
      Vector x(lay.total, Int(0));
      x[j] = 1;
      const IntMatrix a = side_matrix(zero1, e.shear1, x, lay.y1, lay.w1, e.k1);
      const IntMatrix b = side_matrix(zero2, e.shear2, x, lay.y2, lay.w2, e.k2);
      const Vector col = flatten(P_prime * a - b * P);
      for (std::size_t r = 0; r < col.size(); ++r) linear(r, j) = col[r];
    }
  }

  const IntMatrix top_right_prime = P_prime.block(0, e.b1, e.b2, e.k1);
  const IntMatrix top_right = P.block(0, e.b1, e.b2, e.k1);
  const Lattice lambda_prime = Lattice::from_generators(e.b2, top_right_prime.columns());

  EquivalenceResult result;
  bool undetermined = false;
  std::vector<std::size_t> w_slots;
  for (std::size_t i = 0; i < e.k1 * e.k1; ++i) w_slots.push_back(lay.w1 + i);
  for (std::size_t i = 0; i < e.k2 * e.k2; ++i) w_slots.push_back(lay.w2 + i);

  for (const auto& t1 : e.theta1) {
    for (const auto& t2 : e.theta2) {
      ++result.theta_pairs;
      const IntMatrix id1 = block_matrix(t1, IntMatrix(e.k1, e.b1), IntMatrix::identity(e.k1));
      const IntMatrix id2 = block_matrix(t2, IntMatrix(e.k2, e.b2), IntMatrix::identity(e.k2));
      if (P_prime * id1 == id2 * P) {
        result.verdict = EquivVerdict::Equivalent;
        result.n1 = id1;
        result.n2 = id2;
        return result;
      }
      // The top-right blocks satisfy B' w1 = theta2 B, so their column lattices agree.
      if (Lattice::from_generators(e.b2, (t2 * top_right).columns()) != lambda_prime) {
        ++result.lattice_rejections;
        continue;
      }
      const IntMatrix base1 = block_matrix(t1, IntMatrix(e.k1, e.b1), IntMatrix(e.k1, e.k1));
      const IntMatrix base2 = block_matrix(t2, IntMatrix(e.k2, e.b2), IntMatrix(e.k2, e.k2));
      Vector rhs = flatten(base2 * P - P_prime * base1);

      // Solve with the w entries pinned to `w_values`.
      auto solve_pinned = [&](const std::vector<Int>& w_values) -> std::optional<Vector> {
        IntMatrix a(linear.rows() + w_slots.size(), lay.total);
        a.set_block(0, 0, linear);
        Vector b = rhs;
        for (std::size_t i = 0; i < w_slots.size(); ++i) {
          a(linear.rows() + i, w_slots[i]) = 1;
          b.push_back(w_values[i]);
        }
        auto sol = solve_integer_system(a, b);
        if (!sol) return std::nullopt;
        return sol->particular;
      };
      auto accept = [&](const Vector& x) {
        const IntMatrix m1 = side_matrix(t1, e.shear1, x, lay.y1, lay.w1, e.k1);
        const IntMatrix m2 = side_matrix(t2, e.shear2, x, lay.y2, lay.w2, e.k2);
        if (!unit_det(read_block(x, lay.w1, e.k1, e.k1)) || !unit_det(read_block(x, lay.w2, e.k2, e.k2)))
          return false;
        if (!(P_prime * m1 == m2 * P)) throw InvariantError("equivalence witness fails to verify");
        result.verdict = EquivVerdict::Equivalent;
        result.n1 = m1;
        result.n2 = m2;
        return true;
      };

      if (e.k1 <= 1 && e.k2 <= 1) {
        bool found = false;
        for_each_assignment(w_slots.size(), {1, -1}, [&](const std::vector<long>& signs) {
          std::vector<Int> w(signs.begin(), signs.end());
          auto x = solve_pinned(w);
          found = x && accept(*x);
          return found;
        });
        if (found) return result;
        continue;
      }

      auto sol = solve_integer_system(linear, rhs);
      if (!sol) continue;
      Vector w0;
      for (auto s : w_slots) w0.push_back(sol->particular[s]);
      std::vector<Vector> w_dirs;
      for (const auto& kv : sol->kernel_basis) {
        Vector d;
        for (auto s : w_slots) d.push_back(kv[s]);
        w_dirs.push_back(d);
      }
      const Lattice w_span = Lattice::from_generators(w_slots.size(), w_dirs);
      if (w_span.is_zero()) {
        if (accept(sol->particular)) return result;
        continue;
      }
      const std::size_t r = w_span.rank();
      bool found = false;
      if (r <= 5) {
        for_each_assignment(r, {0, 1, -1, 2, -2}, [&](const std::vector<long>& c) {
          std::vector<Int> w(w0.begin(), w0.end());
          for (std::size_t i = 0; i < r; ++i)
            for (std::size_t s = 0; s < w.size(); ++s) w[s] += Int(c[i]) * w_span.basis()[i][s];
          auto x = solve_pinned(w);
          found = x && accept(*x);
          return found;
        });
      }
      if (found) return result;
      undetermined = true;
    }
  }
  result.verdict = undetermined ? EquivVerdict::Undetermined : EquivVerdict::NotEquivalent;
  if (undetermined) result.note = "bounded search over unimodular fiber blocks found no witness";
  return result;
}

namespace {

// Transverse permutation: the from-fiber lands on the first coordinates.
IntMatrix cyclic_transverse(std::size_t dim, std::size_t from_fiber, std::size_t to_fiber) {
  if (from_fiber + to_fiber > dim)
    throw InputError("no transverse gluing exists between fibers of ranks " + std::to_string(from_fiber) +
                     " and " + std::to_string(to_fiber) + " in dimension " + std::to_string(dim));
  IntMatrix m(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) m((j + from_fiber) % dim, j) = 1;
  return m;
}

}  // namespace

std::vector<GluingPattern> generate_distinct_family(const GraphManifold& pre, const std::string& edge,
                                                    std::size_t count) {
  const EdgeBlocks e = edge_blocks(pre, edge);
  if (e.k1 != e.k2) throw InputError("family generation needs equal fiber ranks on both sides of " + edge);
  const std::size_t k = e.k1;
  const std::size_t b = e.b1;
  if (k == 0 || k >= b)
    throw InputError("family generation needs 0 < k < n-1-k (k = " + std::to_string(k) + ", n-1-k = " +
                     std::to_string(b) + ")");
  if (count == 0) return {};

  std::map<std::string, IntMatrix> others;
  for (const auto& g : pre.gluings) {
    if (g.id == edge) continue;
    const std::size_t kf = pre.piece(g.from.piece).fiber_dim;
    const std::size_t kt = pre.piece(g.to.piece).fiber_dim;
    if (g.matrix.rows() == pre.frame_dim() && is_unimodular(g.matrix) && matrix_is_transverse(g.matrix, kf, kt).transverse)
      others.emplace(g.id, g.matrix);
    else
      others.emplace(g.id, cyclic_transverse(pre.frame_dim(), kf, kt));
  }

  std::vector<GluingPattern> out;
  std::vector<Lattice> orbit_reps;
  const std::size_t limit = 64 * count + 64;
  for (std::size_t t = 1; out.size() < count; ++t) {
    if (t > limit) throw InputError("could not find enough distinct orbits for " + edge);
    IntMatrix B(b, k);
    for (std::size_t i = 0; i + 1 < k; ++i) B(i, i) = 1;
    B(k - 1, k - 1) = 1;
    B(b - 1, k - 1) = static_cast<long>(t);
    const Lattice lambda = Lattice::from_generators(b, B.columns());
    bool fresh = true;
    for (const auto& theta : e.theta2) {
      const Lattice moved = image(lambda, theta);
      for (const auto& rep : orbit_reps)
        if (moved == rep) fresh = false;
      if (!fresh) break;
    }
    if (!fresh) continue;
    orbit_reps.push_back(lambda);
    IntMatrix P = IntMatrix::identity(pre.frame_dim());
    P.set_block(0, b, B);
    GluingPattern pat;
    pat.matrices = others;
    pat.matrices[edge] = P;
    pat.B = B;
    pat.lambda = lambda;
    out.push_back(std::move(pat));
  }
  return out;
}

GraphManifold apply_pattern(const GraphManifold& pre, const GluingPattern& pattern) {
  GraphManifold m = pre;
  for (auto& g : m.gluings) {
    auto it = pattern.matrices.find(g.id);
    if (it != pattern.matrices.end()) g.matrix = it->second;
  }
  return m;
}

namespace {

void require_labels(const GraphManifold& m, const char* which) {
  for (const auto& p : m.pieces)
    if (!p.label || p.label->empty())
      throw InputError(std::string(which) + ": piece '" + p.id + "' has no label");
}

std::vector<std::vector<std::size_t>> adjacency(const GraphManifold& m) {
  std::vector<std::vector<std::size_t>> adj(m.pieces.size());
  for (const auto& g : m.gluings) {
    const std::size_t a = m.piece_index(g.from.piece);
    const std::size_t b = m.piece_index(g.to.piece);
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

}  // namespace

BisimulationResult qi_invariant_bisimilar(const GraphManifold& a, const GraphManifold& b) {
  require_labels(a, "first manifold");
  require_labels(b, "second manifold");
  const std::size_t na = a.pieces.size();
  std::vector<std::vector<std::size_t>> adj;
  for (const auto& row : adjacency(a)) adj.push_back(row);
  for (auto row : adjacency(b)) {
    for (auto& x : row) x += na;
    adj.push_back(row);
  }
  std::vector<std::string> labels;
  for (const auto& p : a.pieces) labels.push_back(*p.label);
  for (const auto& p : b.pieces) labels.push_back(*p.label);

  std::vector<std::size_t> color(labels.size());
  {
    std::map<std::string, std::size_t> ids;
    for (const auto& l : labels) ids.emplace(l, ids.size());
    for (std::size_t i = 0; i < labels.size(); ++i) color[i] = ids[labels[i]];
  }
  std::size_t classes = std::set<std::size_t>(color.begin(), color.end()).size();
  for (;;) {
    std::map<std::pair<std::size_t, std::set<std::size_t>>, std::size_t> sig_ids;
    std::vector<std::size_t> next(color.size());
    for (std::size_t v = 0; v < color.size(); ++v) {
      std::set<std::size_t> nb;
      for (auto u : adj[v]) nb.insert(color[u]);
      auto key = std::make_pair(color[v], nb);
      auto it = sig_ids.emplace(key, sig_ids.size()).first;
      next[v] = it->second;
    }
    color = std::move(next);
    if (sig_ids.size() == classes) break;
    classes = sig_ids.size();
  }

  BisimulationResult r;
  std::set<std::size_t> ca(color.begin(), color.begin() + static_cast<std::ptrdiff_t>(na));
  std::set<std::size_t> cb(color.begin() + static_cast<std::ptrdiff_t>(na), color.end());
  r.bisimilar = ca == cb;
  for (std::size_t i = 0; i < na; ++i) r.classes["1:" + a.pieces[i].id] = color[i];
  for (std::size_t i = 0; i < b.pieces.size(); ++i) r.classes["2:" + b.pieces[i].id] = color[na + i];
  if (r.bisimilar)
    r.warnings.push_back(
        "labelled-tree equivalence is necessary for quasi-isometry but not sufficient; the invariant is not complete");
  return r;
}

IsomorphismResult iso_necessary(const GraphManifold& a, const GraphManifold& b) {
  require_labels(a, "first manifold");
  require_labels(b, "second manifold");
  IsomorphismResult r;
  const std::size_t n = a.pieces.size();
  if (n != b.pieces.size() || a.gluings.size() != b.gluings.size() || a.n != b.n) return r;

  auto multiplicities = [](const GraphManifold& m) {
    const std::size_t k = m.pieces.size();
    std::vector<std::vector<std::size_t>> mult(k, std::vector<std::size_t>(k, 0));
    for (const auto& g : m.gluings) {
      const std::size_t x = m.piece_index(g.from.piece);
      const std::size_t y = m.piece_index(g.to.piece);
      ++mult[x][y];
      if (x != y) ++mult[y][x];
    }
    return mult;
  };
  const auto ma = multiplicities(a);
  const auto mb = multiplicities(b);
  auto invariant = [](const GraphManifold& m, const std::vector<std::vector<std::size_t>>& mult, std::size_t i) {
    const Piece& p = m.pieces[i];
    std::size_t degree = 0;
    for (auto x : mult[i]) degree += x;
    return std::make_tuple(*p.label, p.base_dim, p.fiber_dim, p.cusps.size(), mult[i][i], degree);
  };

  std::vector<std::size_t> map(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || invariant(a, ma, i) != invariant(b, mb, j)) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = ma[i][k] == mb[j][map[k]];
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (place(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (place(0)) {
    r.isomorphic = true;
    for (std::size_t i = 0; i < n; ++i) r.bijection[a.pieces[i].id] = b.pieces[map[i]].id;
  }
  return r;
}

}  // namespace graphmf
