#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphmf/filling.hpp"
#include "graphmf/lattice.hpp"
#include "graphmf/matrix.hpp"

namespace graphmf {

/// A boundary torus: owning piece and cusp id.
struct Endpoint {
  std::string piece;
  std::string cusp;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

/// N x T^d with N of dimension base_dim; each cusp frame has the base directions
/// first and the d fiber directions last.
struct Piece {
  std::string id;
  std::size_t base_dim = 0;
  std::size_t fiber_dim = 0;
  std::vector<std::string> cusps;
  std::optional<std::string> label;
};

/// Linear part of an affine gluing, mapping the from-frame to the to-frame.
struct Gluing {
  std::string id;
  Endpoint from;
  Endpoint to;
  IntMatrix matrix;

  bool is_loop() const { return from.piece == to.piece; }
};

/// User-supplied free homology of a piece: i_star maps H1(boundary) to H1(interior).
struct HomologyData {
  std::size_t h1_boundary_rank = 0;
  std::size_t h1_interior_rank = 0;
  IntMatrix i_star;
  std::optional<std::string> piece;
  /// Per-cusp boundary classes and positive weights for the twisted double.
  std::vector<Vector> b;
  std::vector<Int> weights;
};

struct GraphManifold {
  std::size_t n = 0;
  bool extended = false;
  std::vector<Piece> pieces;
  std::vector<Gluing> gluings;
  /// Finite groups acting on the base part of the cusp lattices, per piece.
  std::map<std::string, std::vector<IntMatrix>> theta;
  /// Generators of the admissible shear rows, per piece; absent means all of Z^(base_dim-1).
  std::map<std::string, std::vector<Vector>> shear;
  std::optional<HomologyData> homology;
  std::map<std::string, BoundExpr> dehn_bounds;

  std::size_t frame_dim() const { return n - 1; }
  std::size_t piece_index(const std::string& id) const;
  const Piece& piece(const std::string& id) const;
  std::size_t gluing_index(const std::string& id) const;
  const Gluing& gluing(const std::string& id) const;
};

/// Closed under product and inverse; elements must be unimodular.
bool is_matrix_group(const std::vector<IntMatrix>& elems, std::string& why);

struct Violation {
  std::string code;
  std::string element;
  std::string message;
};

/// Every structural invariant that fails, in a stable order.
std::vector<Violation> find_violations(const GraphManifold& m);
/// Throws InputError listing the violations, if any.
void require_valid(const GraphManifold& m);

/// span of the last fiber_dim coordinates of Z^(n-1).
Lattice fiber_lattice(std::size_t frame_dim, std::size_t fiber_dim);
Lattice fiber_lattice(const GraphManifold& m, const std::string& piece_id);

struct TransversalityResult {
  bool transverse = false;
  Lattice witness;
};

/// image(F_from) meets F_to in zero; any nonsingular square matrix is accepted.
TransversalityResult matrix_is_transverse(const IntMatrix& matrix, std::size_t from_fiber_dim,
                                          std::size_t to_fiber_dim);
TransversalityResult gluing_is_transverse(const GraphManifold& m, const Gluing& g);

struct IrreducibilityResult {
  bool irreducible = true;
  std::vector<std::string> failing_gluings;
};

IrreducibilityResult is_irreducible(const GraphManifold& m);
bool has_transverse_pair(const GraphManifold& m);
bool is_closed(const GraphManifold& m);
std::size_t internal_wall_count(const GraphManifold& m);
std::size_t boundary_wall_count(const GraphManifold& m);
/// Gluings whose removal disconnects the piece graph.
std::vector<std::string> separating_walls(const GraphManifold& m);

struct PropertyVerdict {
  /// nullopt when the property is not applicable (e.g. odd dimension).
  std::optional<bool> value;
  std::vector<std::string> trail;
};

struct PropertyReport {
  PropertyVerdict simplicial_volume_zero;
  PropertyVerdict euler_char_zero_if_even_dim;
  PropertyVerdict cstar_simple;
  PropertyVerdict sq_universal_guaranteed;
  PropertyVerdict relatively_hyperbolic;
  PropertyVerdict thick_order_one;
  PropertyVerdict cohopf_hypothesis;
};

PropertyReport classify_properties(const GraphManifold& m);

}  // namespace graphmf
