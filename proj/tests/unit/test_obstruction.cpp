#include <doctest.h>

#include <cstdlib>
#include <random>

#include "graphmf/errors.hpp"
#include "graphmf/obstruction.hpp"
#include "support/fixtures.hpp"
#include "support/random_manifold.hpp"

using namespace graphmf;

namespace {

Int eval_poly(const std::vector<Int>& c, const Int& x) {
  Int acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Smallest k <= limit with a^k = I, or 0.
unsigned long order_by_powers(const IntMatrix& a, unsigned long limit) {
  IntMatrix p = a;
  for (unsigned long k = 1; k <= limit; ++k) {
    if (p.is_identity()) return k;
    p = p * a;
  }
  return 0;
}

IntMatrix permutation_matrix(const std::vector<std::size_t>& perm) {
  IntMatrix p(perm.size(), perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) p(perm[i], i) = 1;
  return p;
}

}  // namespace

TEST_CASE("characteristic polynomial agrees with det(xI - A)") {
  std::mt19937 rng(2);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = static_cast<std::size_t>(randgen::uniform(rng, 1, 4));
    IntMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) a(i, j) = randgen::uniform(rng, -4, 4);
    const auto cp = characteristic_polynomial(a);
    REQUIRE(cp.size() == d + 1);
    CHECK(cp.back() == 1);
    for (long x = -3; x <= 3; ++x) {
      IntMatrix m = IntMatrix::identity(d);
      for (std::size_t i = 0; i < d; ++i) m(i, i) = x;
      CHECK(eval_poly(cp, Int(x)) == determinant(m - a));
    }
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  // x^n - 1 is the product of Phi_m over the divisors m of n.
  for (unsigned long n = 1; n <= 20; ++n)
    for (long x = -3; x <= 3; ++x) {
      Int prod = 1;
      for (unsigned long m = 1; m <= n; ++m)
        if (n % m == 0) prod *= eval_poly(cyclotomic_polynomial(m), Int(x));
      Int xn;
      mpz_pow_ui(xn.get_mpz_t(), Int(x).get_mpz_t(), n);
      CHECK(prod == xn - 1);
    }
}

TEST_CASE("order analysis agrees with iterated powers") {
  CHECK(analyse_order(IntMatrix{{1, 0}, {1, 1}}).subkind == "unipotent");
  CHECK(analyse_order(IntMatrix{{2, 1}, {1, 1}}).subkind == "anosov");
  CHECK(analyse_order(IntMatrix{{-1, 0}, {1, -1}}).subkind == "quasi_unipotent");
  const OrderAnalysis r = analyse_order(IntMatrix{{0, -1}, {1, -1}});
  CHECK(r.finite);
  CHECK(r.order == 3);

  std::mt19937 rng(6);
  for (int t = 0; t < 80; ++t) {
    const std::size_t d = static_cast<std::size_t>(randgen::uniform(rng, 1, 4));
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix s = permutation_matrix(perm);
    for (std::size_t i = 0; i < d; ++i)
      if (randgen::uniform(rng, 0, 1)) s(perm[i], i) = -1;
    const IntMatrix g = randgen::random_unimodular(rng, d);
    IntMatrix a = g * s * inverse_unimodular(g);
    if (t % 3 == 0) {
      // Unipotent perturbation: infinite order unless it is trivial.
      IntMatrix u = IntMatrix::identity(d);
      if (d > 1) u(d - 1, 0) = 1;
      a = a * u;
    }
    const OrderAnalysis oa = analyse_order(a);
    const unsigned long brute = order_by_powers(a, 200);
    CHECK(oa.finite == (brute != 0));
    if (oa.finite) CHECK(oa.order == brute);
  }
}

TEST_CASE("notqi monodromy certificate") {
  const GraphManifold m = fixtures::manifold("notqi.json");
  const Certificate c = detect_distorted_wall(m, default_max_cycle_len());
  CHECK(c.kind == "monodromy");
  CHECK(c.verdict == "obstructed");
  CHECK(c.subkind == "unipotent");
  CHECK(parse_matrix(c.witness.at("matrix"), "m") == IntMatrix{{1, 0}, {1, 1}});
  CHECK(c.provenance.at("source") == "established");
  std::string why;
  CHECK(verify_certificate(c, why, &m));
  CHECK(verify_certificate(certificate_from_json(certificate_to_json(c)), why, &m));

  Certificate bad = c;
  bad.witness["matrix"] = Json::array({Json::array({1, 0}), Json::array({2, 1})});
  CHECK_FALSE(verify_certificate(bad, why, &m));
  bad = c;
  bad.subkind = "anosov";
  CHECK_FALSE(verify_certificate(bad, why));

  const MonodromyResult mr =
      cycle_fiber_monodromy(m, {parse_traversal(m, "g2+"), parse_traversal(m, "g1-")});
  CHECK(mr.defined);
  CHECK(mr.matrix == (IntMatrix{{1, 0}, {1, 1}}));
  CHECK_THROWS_AS(cycle_fiber_monodromy(m, {parse_traversal(m, "g2+")}), InputError);
  CHECK_THROWS_AS(parse_traversal(m, "g3+"), InputError);
  CHECK_THROWS_AS(parse_traversal(m, "g1"), InputError);
}

TEST_CASE("irreducible manifolds never give monodromy obstructions") {
  std::mt19937 rng(17);
  for (int t = 0; t < 25; ++t) {
    randgen::Options o;
    o.closed = true;
    o.max_pieces = 3;
    const GraphManifold m = randgen::random_manifold(rng, o);
    const Certificate c = detect_distorted_wall(m, 4);
    CHECK(c.verdict == "no_obstruction_found");
  }
  const GraphManifold d = fixtures::manifold("truth_double_transverse.json");
  CHECK(detect_distorted_wall(d, 6).verdict == "no_obstruction_found");
}

TEST_CASE("GRAPHMF_MAX_CYCLE_LEN overrides the default") {
  CHECK(default_max_cycle_len() == 8);
  setenv("GRAPHMF_MAX_CYCLE_LEN", "3", 1);
  CHECK(default_max_cycle_len() == 3);
  unsetenv("GRAPHMF_MAX_CYCLE_LEN");
}

TEST_CASE("Euler class obstruction") {
  const Certificate c = euler_class_obstruction(2, IntMatrix{{1, 0}});
  CHECK(c.verdict == "obstructed");
  const Vector v = parse_vector(c.witness.at("kernel_vector"), "v");
  CHECK((v == make_vector({0, 1}) || v == make_vector({0, -1})));
  std::string why;
  CHECK(verify_certificate(c, why));
  CHECK(euler_class_obstruction(2, IntMatrix{{1, 0}, {0, 1}}).verdict == "no_obstruction_found");
  CHECK_THROWS_AS(euler_class_obstruction(3, IntMatrix{{1, 0}}), InputError);

  // The verdict depends only on the column space.
  std::mt19937 rng(31);
  for (int t = 0; t < 40; ++t) {
    const std::size_t rows = static_cast<std::size_t>(randgen::uniform(rng, 1, 3));
    const std::size_t cols = static_cast<std::size_t>(randgen::uniform(rng, 1, 4));
    IntMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) a(i, j) = randgen::uniform(rng, -3, 3);
    const IntMatrix u = randgen::random_unimodular(rng, cols);
    const Certificate c1 = euler_class_obstruction(cols, a);
    const Certificate c2 = euler_class_obstruction(cols, a * u);
    CHECK(c1.verdict == c2.verdict);
    CHECK(verify_certificate(c1, why));
    CHECK(verify_certificate(c2, why));
  }
}

TEST_CASE("twisted double of a knot complement") {
  const GraphManifold k = fixtures::manifold("knot_double.json");
  for (long weight : {1L, 5L}) {
    HomologyData h = *k.homology;
    h.weights = {Int(weight)};
    const TwistedDouble td = twisted_double_obstruction(k.pieces.front(), h);
    CHECK(td.certificate.verdict == "obstructed");
    CHECK(parse_int(td.certificate.witness.at("positivity_sum"), "s") == weight);
    CHECK(is_irreducible(td.manifold).irreducible);
    CHECK(has_transverse_pair(td.manifold));
    CHECK(td.manifold.n == 4);
    // f+ = f- + n b: the last column of the gluing carries n*b over the fiber.
    CHECK(td.manifold.gluings.front().matrix.column(2) == make_vector({0, weight, 1}));
    std::string why;
    CHECK(verify_certificate(td.certificate, why));
    Certificate bad = td.certificate;
    bad.witness["positivity_sum"] = weight + 1;
    CHECK_FALSE(verify_certificate(bad, why));
  }
  HomologyData h = *k.homology;
  h.b = {make_vector({1, 0})};
  CHECK_THROWS_AS(twisted_double_obstruction(k.pieces.front(), h), InputError);
  h.b = {make_vector({0, 0})};
  CHECK_THROWS_AS(twisted_double_obstruction(k.pieces.front(), h), InputError);
}
