#include "graphmf/bass_serre.hpp"

#include "graphmf/errors.hpp"

namespace graphmf {

const Endpoint& departure(const GraphManifold& m, const Traversal& t) {
  const Gluing& g = m.gluings.at(t.gluing);
  return t.dir == Direction::Forward ? g.from : g.to;
}

const Endpoint& arrival(const GraphManifold& m, const Traversal& t) {
  const Gluing& g = m.gluings.at(t.gluing);
  return t.dir == Direction::Forward ? g.to : g.from;
}

IntMatrix traversal_matrix(const GraphManifold& m, const Traversal& t) {
  const IntMatrix& a = m.gluings.at(t.gluing).matrix;
  return t.dir == Direction::Forward ? a : inverse_unimodular(a);
}

std::string traversal_name(const GraphManifold& m, const Traversal& t) {
  return m.gluings.at(t.gluing).id + (t.dir == Direction::Forward ? "+" : "-");
}

namespace {

bool reverses(const Traversal& a, const Traversal& b) { return a.gluing == b.gluing && a.dir != b.dir; }

// Running fix-lattice of a path in the frame of its first departure.
struct PathState {
  TreePath path;
  IntMatrix acc;      // product of traversal matrices so far
  IntMatrix acc_inv;  // its inverse
  Lattice lattice;
};

struct TraversalTable {
  std::vector<Traversal> all;
  std::vector<IntMatrix> matrix;
  std::vector<IntMatrix> inverse;
};

TraversalTable build_table(const GraphManifold& m) {
  TraversalTable t;
  for (std::size_t g = 0; g < m.gluings.size(); ++g)
    for (Direction d : {Direction::Forward, Direction::Backward}) {
      Traversal tr{g, d};
      t.all.push_back(tr);
      t.matrix.push_back(traversal_matrix(m, tr));
      t.inverse.push_back(traversal_matrix(m, Traversal{g, d == Direction::Forward ? Direction::Backward
                                                                                  : Direction::Forward}));
    }
  return t;
}

std::size_t table_index(const Traversal& t) { return 2 * t.gluing + (t.dir == Direction::Forward ? 0 : 1); }

PathState start_state(const GraphManifold& m, const TraversalTable& tab, const TreeStep& step) {
  const std::size_t i = table_index(step.traversal);
  return {TreePath{{step}}, tab.matrix[i], tab.inverse[i], Lattice::full(m.frame_dim())};
}

// Crosses the interior vertex at the end of `s` and then the edge `step`.
PathState extend(const GraphManifold& m, const TraversalTable& tab, const PathState& s, const TreeStep& step) {
  const std::string& v = arrival(m, s.path.steps.back().traversal).piece;
  const Lattice fiber_here = image(fiber_lattice(m, v), s.acc_inv);
  PathState next;
  next.path = s.path;
  next.path.steps.push_back(step);
  next.lattice = intersect(s.lattice, fiber_here);
  const std::size_t i = table_index(step.traversal);
  next.acc = tab.matrix[i] * s.acc;
  next.acc_inv = s.acc_inv * tab.inverse[i];
  return next;
}

TreeStep next_step(const TreePath& p, const Traversal& t) {
  const TreeStep& last = p.steps.back();
  return {t, reverses(last.traversal, t) ? last.token + 1 : 0};
}

std::vector<Traversal> departing(const GraphManifold& m, const TraversalTable& tab, const std::string& piece) {
  std::vector<Traversal> out;
  for (const auto& t : tab.all)
    if (departure(m, t).piece == piece) out.push_back(t);
  return out;
}

}  // namespace

bool is_reduced(const TreePath& p) {
  for (std::size_t i = 1; i < p.steps.size(); ++i)
    if (reverses(p.steps[i - 1].traversal, p.steps[i].traversal) && p.steps[i - 1].token == p.steps[i].token)
      return false;
  return true;
}

Lattice path_fix_lattice(const GraphManifold& m, const TreePath& p) {
  if (p.steps.empty()) throw InputError("path must have at least one edge");
  for (const auto& s : p.steps)
    if (s.traversal.gluing >= m.gluings.size()) throw InputError("path refers to an unknown gluing");
  for (std::size_t i = 1; i < p.steps.size(); ++i)
    if (arrival(m, p.steps[i - 1].traversal).piece != departure(m, p.steps[i].traversal).piece)
      throw InputError("path is not connected at step " + std::to_string(i + 1));
  if (!is_reduced(p)) throw InputError("path is not reduced");
  const TraversalTable tab = build_table(m);
  PathState s = start_state(m, tab, p.steps[0]);
  for (std::size_t i = 1; i < p.steps.size(); ++i) s = extend(m, tab, s, p.steps[i]);
  return s.lattice;
}

std::vector<TreePath> enumerate_path_shapes(const GraphManifold& m, std::size_t length) {
  std::vector<TreePath> out;
  if (length == 0) return out;
  const TraversalTable tab = build_table(m);
  std::vector<TreePath> level;
  for (const auto& t : tab.all) level.push_back(TreePath{{TreeStep{t, 0}}});
  for (std::size_t len = 1; len < length; ++len) {
    std::vector<TreePath> next;
    for (const auto& p : level)
      for (const auto& t : departing(m, tab, arrival(m, p.steps.back().traversal).piece)) {
        TreePath q = p;
        q.steps.push_back(next_step(p, t));
        next.push_back(std::move(q));
      }
    level = std::move(next);
  }
  return level;
}

AcylindricityResult check_acylindricity(const GraphManifold& m, std::size_t max_len) {
  if (max_len < 3) throw InputError("max_len must be at least 3");
  AcylindricityResult r;
  r.max_len = max_len;
  const TraversalTable tab = build_table(m);
  if (tab.all.empty()) {
    r.bounded = true;
    r.K = 1;
    r.witness_lattice = Lattice::zero(m.frame_dim());
    return r;
  }
  std::vector<PathState> level;
  for (const auto& t : tab.all) level.push_back(start_state(m, tab, TreeStep{t, 0}));
  r.shapes_checked = level.size();
  for (std::size_t len = 1; len < max_len; ++len) {
    std::vector<PathState> next;
    for (const auto& s : level)
      for (const auto& t : departing(m, tab, arrival(m, s.path.steps.back().traversal).piece)) {
        PathState e = extend(m, tab, s, next_step(s.path, t));
        ++r.shapes_checked;
        if (!e.lattice.is_zero()) next.push_back(std::move(e));
      }
    if (next.empty()) {
      r.bounded = true;
      r.K = len + 1;
      r.witness = level.front().path;
      r.witness_lattice = level.front().lattice;
      return r;
    }
    level = std::move(next);
  }
  r.bounded = false;
  r.witness = level.front().path;
  r.witness_lattice = level.front().lattice;
  return r;
}

DehnTwistResult dehn_twist_has_infinite_order(const GraphManifold& m, const std::string& wall, const Vector& h) {
  const Gluing& g = m.gluing(wall);
  if (h.size() != m.frame_dim()) throw InputError("h must have length n-1 = " + std::to_string(m.frame_dim()));
  if (is_zero(h)) throw InputError("h must be non-zero");
  DehnTwistResult r;
  const Lattice to_side = image(fiber_lattice(m, g.to.piece), inverse_unimodular(g.matrix));
  r.fiber_sum = sum(fiber_lattice(m, g.from.piece), to_side);
  r.intersection = intersect(Lattice::from_generators(h.size(), {h}), r.fiber_sum);
  r.infinite_order = r.intersection.is_zero();
  return r;
}

}  // namespace graphmf
