#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphmf/lattice.hpp"
#include "graphmf/model.hpp"

namespace graphmf {

enum class Direction { Forward, Backward };

/// One gluing crossed in the quotient graph.
struct Traversal {
  std::size_t gluing = 0;
  Direction dir = Direction::Forward;

  friend bool operator==(const Traversal&, const Traversal&) = default;
};

const Endpoint& departure(const GraphManifold& m, const Traversal& t);
const Endpoint& arrival(const GraphManifold& m, const Traversal& t);
/// The gluing matrix, inverted for backward traversals.
IntMatrix traversal_matrix(const GraphManifold& m, const Traversal& t);
std::string traversal_name(const GraphManifold& m, const Traversal& t);

/// A lift of a traversal to the Bass-Serre tree; `token` distinguishes the lifts of
/// one gluing at a vertex (cosets of the cusp subgroup).
struct TreeStep {
  Traversal traversal;
  std::size_t token = 0;
};

struct TreePath {
  std::vector<TreeStep> steps;
  std::size_t length() const { return steps.size(); }
};

/// No step crosses back over the tree edge it just arrived by.
bool is_reduced(const TreePath& p);

/// Elements of the first edge group (in the departure frame of the first step) that
/// fix every edge of the path. Throws InputError for disconnected or non-reduced paths.
Lattice path_fix_lattice(const GraphManifold& m, const TreePath& p);

/// All reduced quotient-graph path shapes of the given length, one per traversal sequence.
std::vector<TreePath> enumerate_path_shapes(const GraphManifold& m, std::size_t length);

struct AcylindricityResult {
  /// Some length up to max_len has only zero fix-lattices.
  bool bounded = false;
  /// Least such length when bounded.
  std::size_t K = 0;
  std::size_t max_len = 0;
  /// A longest path with non-zero fix-lattice (length K-1, or max_len when unbounded).
  std::optional<TreePath> witness;
  Lattice witness_lattice;
  std::size_t shapes_checked = 0;
};

AcylindricityResult check_acylindricity(const GraphManifold& m, std::size_t max_len);

struct DehnTwistResult {
  bool infinite_order = false;
  /// F_from + (fiber of the to-side pulled back), in the wall's from-frame.
  Lattice fiber_sum;
  /// span{h} intersected with fiber_sum.
  Lattice intersection;
};

DehnTwistResult dehn_twist_has_infinite_order(const GraphManifold& m, const std::string& wall,
                                              const Vector& h);

}  // namespace graphmf
