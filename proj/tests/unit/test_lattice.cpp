#include <doctest.h>

#include <algorithm>
#include <random>

#include "graphmf/errors.hpp"
#include "graphmf/lattice.hpp"
#include "graphmf/normal_form.hpp"
#include "support/lattice_check.hpp"
#include "support/oracle.hpp"

using namespace graphmf;
using graphmf::make_vector;

namespace {

Lattice span(std::size_t m, std::initializer_list<std::initializer_list<long>> gens) {
  std::vector<Vector> vs;
  for (const auto& g : gens) vs.push_back(make_vector(g));
  return Lattice::from_generators(m, vs);
}

// Every box point agrees between the lattice and the oracle built from `gens`.
void require_box_agreement(const Lattice& l, const std::vector<Vector>& gens, long radius) {
  oracle::SpanOracle o(l.ambient_rank(), gens);
  oracle::for_each_in_box(l.ambient_rank(), radius, [&](const Vector& v) {
    REQUIRE(l.contains(v) == o.contains(v));
  });
}

}  // namespace

TEST_CASE("from_generators absorbs dependent generators") {
  const Lattice l = span(2, {{2, 0}, {0, 3}, {2, 3}});
  CHECK(l == span(2, {{2, 0}, {0, 3}}));
  CHECK(l.rank() == 2);
  require_box_agreement(l, {make_vector({2, 0}), make_vector({0, 3})}, 6);
  CHECK(Lattice::from_generators(3, {}).is_zero());
  CHECK(span(2, {{1, 0}, {0, 1}}) == Lattice::full(2));
  CHECK_THROWS_AS(span(2, {{1, 2, 3}}), InputError);
}

TEST_CASE("intersect") {
  CHECK(intersect(span(3, {{1, 0, 1}}), span(3, {{0, 0, 1}})).is_zero());
  const Lattice a = span(2, {{2, 0}, {0, 2}});
  CHECK(intersect(a, a) == a);
  const Lattice meet = intersect(a, span(2, {{1, 1}}));
  CHECK(meet == span(2, {{2, 2}}));
  require_box_agreement(meet, {make_vector({2, 2})}, 8);
  CHECK_THROWS_AS(intersect(Lattice::full(2), Lattice::full(3)), InputError);
}

TEST_CASE("sum") {
  CHECK(sum(span(3, {{1, 0, 0}}), span(3, {{0, 1, 0}})) == span(3, {{1, 0, 0}, {0, 1, 0}}));
  const Lattice b = span(2, {{0, 3}, {2, 3}});
  CHECK(sum(Lattice::zero(2), b) == b);
  CHECK(sum(span(2, {{2, 0}}), b) == span(2, {{2, 0}, {0, 3}}));
}

TEST_CASE("saturate") {
  CHECK(saturate(span(2, {{2, 0}})) == span(2, {{1, 0}}));
  CHECK(saturate(Lattice::full(3)) == Lattice::full(3));
  // span{(2,2),(0,4)} has rank 2 in Z^2, so its saturation is all of Z^2.
  const Lattice s = saturate(span(2, {{2, 2}, {0, 4}}));
  CHECK(s == Lattice::full(2));
  oracle::for_each_in_box(2, 8, [&](const Vector& v) { REQUIRE(s.contains(v)); });
  CHECK(smith_invariant_factors(s.basis_matrix()) == std::vector<Int>{1, 1});
  const Lattice t = saturate(span(3, {{2, 4, 6}, {0, 0, 3}}));
  CHECK(t == span(3, {{1, 2, 0}, {0, 0, 1}}));
}

TEST_CASE("index_in") {
  CHECK(*index_in(span(2, {{2, 0}, {0, 3}}), Lattice::full(2)) == 6);
  CHECK(*oracle::coset_index(span(2, {{2, 0}, {0, 3}}).basis(), Lattice::full(2).basis()) == 6);
  const Lattice a = span(3, {{1, 2, 3}});
  CHECK(*index_in(a, a) == 1);
  CHECK_FALSE(index_in(span(2, {{1, 0}}), Lattice::full(2)).has_value());
  CHECK_THROWS_AS(index_in(span(2, {{1, 0}}), span(2, {{2, 0}})), InputError);
}

TEST_CASE("kernel, image and invariant factors") {
  const IntMatrix m{{1, 1}};
  const Lattice k = kernel(m);
  CHECK(k == span(2, {{1, -1}}));
  require_box_agreement(k, oracle::box_kernel(m, 6), 6);
  CHECK(kernel(IntMatrix::identity(3)).is_zero());
  CHECK(smith_invariant_factors(IntMatrix{{2, 0}, {0, 3}}) == std::vector<Int>{1, 6});
  CHECK(smith_invariant_factors(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) ==
        std::vector<Int>{2, 6, 12});
  CHECK(image(span(2, {{1, 0}}), IntMatrix{{1, 1}, {0, 1}, {2, 0}}) == span(3, {{1, 0, 2}}));
}

TEST_CASE("HNF canonicity under permutation and unimodular recombination") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 4;
    auto gens = oracle::random_generators(rng, m, m);
    const Lattice l = Lattice::from_generators(m, gens);
    auto perm = gens;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(Lattice::from_generators(m, perm) == l);
    if (gens.size() >= 2) {
      auto mixed = gens;
      for (std::size_t i = 0; i < m; ++i) mixed[0][i] += 3 * mixed[1][i];
      CHECK(Lattice::from_generators(m, mixed) == l);
    }
  }
}

TEST_CASE("kernel matches brute-force null vectors") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m(1 + trial % 2, 3);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) = d(rng);
    const Lattice k = kernel(m);
    oracle::for_each_in_box(3, 5, [&](const Vector& v) { REQUIRE(k.contains(v) == is_zero(m * v)); });
  }
}

TEST_CASE("saturate idempotent and index chains multiply") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + trial % 4;
    const Lattice c = Lattice::from_generators(m, oracle::random_generators(rng, m, m));
    const Lattice s = saturate(c);
    CHECK(saturate(s) == s);
    CHECK(is_sublattice(c, s));
    CHECK(index_in(c, s).has_value());
    const Lattice b = sum(c, Lattice::from_generators(m, {c.is_zero() ? zero_vector(m) : s.basis()[0]}));
    const auto ab = index_in(b, s), bc = index_in(c, b), ac = index_in(c, s);
    REQUIRE(ab.has_value());
    REQUIRE(bc.has_value());
    CHECK(*ac == *ab * *bc);
  }
}

TEST_CASE("randomized oracle cases") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 60; ++i) {
    const std::string err = oracle::check_random_lattice_case(rng);
    CHECK_MESSAGE(err.empty(), err);
  }
}
