#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "graphmf/bass_serre.hpp"
#include "graphmf/manifest.hpp"
#include "graphmf/model.hpp"

namespace graphmf {

/// Machine-checkable obstruction report.
struct Certificate {
  std::string kind;     // monodromy | euler_class | twisted_double
  std::string verdict;  // obstructed | no_obstruction_found
  std::string subkind;
  Json witness;
  Json provenance;
};

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

struct MonodromyStep {
  Traversal traversal;
  IntMatrix fiber_block;
};

struct MonodromyResult {
  bool defined = false;
  IntMatrix matrix;
  std::vector<MonodromyStep> steps;
  std::string reason;
};

/// Product of the fiber restrictions along a closed cycle, when every traversal maps
/// fiber onto fiber. Throws InputError if the cycle is empty, disconnected or not closed.
MonodromyResult cycle_fiber_monodromy(const GraphManifold& m, const std::vector<Traversal>& cycle);

/// Parses "g3+" / "g3-".
Traversal parse_traversal(const GraphManifold& m, const std::string& s);

std::vector<Int> characteristic_polynomial(const IntMatrix& a);
/// Phi_m with coefficients from the constant term up.
std::vector<Int> cyclotomic_polynomial(unsigned long m);

struct OrderAnalysis {
  bool finite = false;
  /// Multiplicative order when finite.
  unsigned long order = 0;
  /// finite_order | unipotent | quasi_unipotent | anosov | other_infinite_order
  std::string subkind;
  std::vector<Int> charpoly;
  /// Indices m of the cyclotomic factors of the characteristic polynomial, with repetition.
  std::vector<unsigned long> cyclotomic_factors;
};

OrderAnalysis analyse_order(const IntMatrix& a);

/// Default search bound for closed cycles, overridden by GRAPHMF_MAX_CYCLE_LEN.
std::size_t default_max_cycle_len();

Certificate detect_distorted_wall(const GraphManifold& m, std::size_t max_len);

Certificate euler_class_obstruction(std::size_t h1_boundary_rank, const IntMatrix& i_star);

struct TwistedDouble {
  Certificate certificate;
  GraphManifold manifold;
};

/// Twisted double of `piece` x S^1 from boundary classes b_i and weights n_i with
/// i_star (concatenated b) = 0.
TwistedDouble twisted_double_obstruction(const Piece& piece, const HomologyData& h);

/// Re-checks a certificate from its payload. When `m` is given, monodromy cycles are
/// also recomputed against it.
bool verify_certificate(const Certificate& c, std::string& reason, const GraphManifold* m = nullptr);

}  // namespace graphmf
