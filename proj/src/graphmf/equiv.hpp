#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphmf/lattice.hpp"
#include "graphmf/model.hpp"

namespace graphmf {

/// Block data of one non-loop edge of a pregraph: from-side (1) and to-side (2).
struct EdgeBlocks {
  std::size_t b1 = 0, k1 = 0, b2 = 0, k2 = 0;
  std::vector<IntMatrix> theta1, theta2;
  /// Columns generate the admissible rows of the lower-left block v_i.
  IntMatrix shear1, shear2;
};

/// Throws UnsupportedError for loops and InputError when a theta set is not a group.
EdgeBlocks edge_blocks(const GraphManifold& pre, const std::string& edge);

/// [[theta, 0], [v, w]].
IntMatrix block_matrix(const IntMatrix& theta, const IntMatrix& v, const IntMatrix& w);

enum class EquivVerdict { Equivalent, NotEquivalent, Undetermined };
const char* to_string(EquivVerdict v);

struct EquivalenceResult {
  EquivVerdict verdict = EquivVerdict::NotEquivalent;
  /// P' N1 = N2 P.
  std::optional<IntMatrix> n1, n2;
  std::size_t theta_pairs = 0;
  std::size_t lattice_rejections = 0;
  std::string note;
};

/// Decides whether block-form N1, N2 exist with P' N1 = N2 P on the given edge.
/// P and P' must be square of size n-1 and nonsingular.
EquivalenceResult gluing_patterns_equivalent(const GraphManifold& pre, const std::string& edge,
                                             const IntMatrix& P, const IntMatrix& P_prime);

struct GluingPattern {
  std::map<std::string, IntMatrix> matrices;
  /// Upper-right block of the family edge and the lattice its columns span.
  IntMatrix B;
  Lattice lambda;
};

/// `count` shear patterns [[I, B_j], [0, I]] on `edge` with column lattices in pairwise
/// distinct orbits of the to-side theta group; every other edge gets a transverse matrix.
std::vector<GluingPattern> generate_distinct_family(const GraphManifold& pre, const std::string& edge,
                                                    std::size_t count);

/// `pre` with the pattern's matrices substituted.
GraphManifold apply_pattern(const GraphManifold& pre, const GluingPattern& pattern);

struct BisimulationResult {
  bool bisimilar = false;
  /// Stable class index of every piece, keyed "1:<id>" and "2:<id>".
  std::map<std::string, std::size_t> classes;
  std::vector<std::string> warnings;
};

/// Labelled quotient-graph bisimilarity. Throws InputError when a label is missing.
BisimulationResult qi_invariant_bisimilar(const GraphManifold& a, const GraphManifold& b);

struct IsomorphismResult {
  bool isomorphic = false;
  /// Piece of `a` to piece of `b`.
  std::map<std::string, std::string> bijection;
};

/// Labelled multigraph isomorphism of the quotient graphs.
IsomorphismResult iso_necessary(const GraphManifold& a, const GraphManifold& b);

}  // namespace graphmf
