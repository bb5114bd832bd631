#pragma once

// One randomized lattice case cross-checked against the brute-force oracle.

#include <random>
#include <sstream>
#include <string>

#include "graphmf/lattice.hpp"
#include "support/oracle.hpp"

namespace oracle {

// Returns an empty string on agreement, otherwise a description of the first mismatch.
inline std::string check_random_lattice_case(std::mt19937& rng) {
  using namespace graphmf;
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  const std::size_t m = dim(rng);
  std::uniform_int_distribution<std::size_t> count(0, m + 1);
  const auto ga = random_generators(rng, m, count(rng));
  const auto gb = random_generators(rng, m, count(rng));
  const Lattice a = Lattice::from_generators(m, ga);
  const Lattice b = Lattice::from_generators(m, gb);
  const Lattice meet = intersect(a, b);
  const Lattice join = sum(a, b);
  const Lattice sat = saturate(a);

  std::vector<Vector> gab = ga;
  gab.insert(gab.end(), gb.begin(), gb.end());
  const SpanOracle oa(m, ga), ob(m, gb), oab(m, gab);

  std::ostringstream err;
  auto where = [&](const char* op, const Vector& v) {
    err << op << " disagrees at " << to_string(v) << " (m=" << m << ")";
  };
  if (a.rank() != oa.rank()) {
    err << "rank " << a.rank() << " vs oracle " << oa.rank();
    return err.str();
  }
  bool ok = true;
  for_each_in_box(m, box_radius(m), [&](const Vector& v) {
    if (!ok) return;
    const bool in_a = oa.contains(v);
    const bool in_b = ob.contains(v);
    if (a.contains(v) != in_a) { where("contains", v); ok = false; return; }
    if (meet.contains(v) != (in_a && in_b)) { where("intersect", v); ok = false; return; }
    if (join.contains(v) != oab.contains(v)) { where("sum", v); ok = false; return; }
    if (sat.contains(v) != oa.in_rational_span(v)) { where("saturate", v); ok = false; return; }
  });
  if (!ok) return err.str();

  const auto sat_index = index_in(a, sat);
  const auto oracle_sat_index = coset_index(a.basis(), sat.basis());
  if (!sat_index || !oracle_sat_index || *sat_index != Int(static_cast<unsigned long>(*oracle_sat_index))) {
    err << "index_in(a, saturate(a)) mismatch";
    return err.str();
  }
  const auto join_index = index_in(a, join);
  const auto oracle_join_index = coset_index(a.basis(), gab);
  if (join_index.has_value() != oracle_join_index.has_value() ||
      (join_index && *join_index != Int(static_cast<unsigned long>(*oracle_join_index)))) {
    err << "index_in(a, a+b) mismatch";
    return err.str();
  }
  return {};
}

}  // namespace oracle
