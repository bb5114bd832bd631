#include <doctest.h>

#include <random>

#include "graphmf/errors.hpp"
#include "graphmf/filling.hpp"

using namespace graphmf;

namespace {

// Direct evaluation of lambda * L * F(lambda*C*L^2 + lambda*K*L + L).
Rational substituted(const std::vector<BoundExpr>& bounds, const Int& lambda, const Int& c, const Int& k,
                     const Rational& l) {
  const Rational inner = Rational(lambda * c) * l * l + Rational(lambda * k) * l + l;
  Rational f = 0;
  for (const auto& b : bounds) f += b.evaluate(inner);
  return Rational(lambda) * l * f;
}

}  // namespace

TEST_CASE("quadratic pieces give a degree-5 bound") {
  const std::vector<BoundExpr> q{BoundExpr::quadratic()};
  const BoundExpr g = compose_dehn_bound(q, 1, 1, 1);
  CHECK(g.degree() == 5);
  // L * (L^2 + 2L)^2 = L^5 + 4L^4 + 4L^3.
  CHECK(g == BoundExpr::polynomial({0, 0, 0, 4, 4, 1}));
}

TEST_CASE("composition matches symbolic substitution") {
  std::mt19937 rng(10);
  for (int t = 0; t < 100; ++t) {
    std::vector<BoundExpr> bounds;
    const int pieces = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int p = 0; p < pieces; ++p) {
      std::vector<Rational> coeffs;
      const int deg = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int i = 0; i <= deg; ++i)
        coeffs.push_back(Rational(std::uniform_int_distribution<int>(0, 6)(rng), std::uniform_int_distribution<int>(1, 3)(rng)));
      bounds.push_back(BoundExpr::polynomial(coeffs));
    }
    const Int lambda = std::uniform_int_distribution<int>(1, 4)(rng);
    const Int c = std::uniform_int_distribution<int>(1, 4)(rng);
    const Int k = std::uniform_int_distribution<int>(0, 4)(rng);
    const BoundExpr g = compose_dehn_bound(bounds, lambda, c, k);
    for (int l = 0; l <= 8; ++l) CHECK(g.evaluate(Rational(l)) == substituted(bounds, lambda, c, k, Rational(l)));
    long fdeg = -1;
    for (const auto& b : bounds) fdeg = std::max(fdeg, b.degree());
    if (fdeg >= 0) CHECK(g.degree() == 1 + 2 * fdeg);
  }
}

TEST_CASE("exponential absorbs and inputs are checked") {
  const BoundExpr g = compose_dehn_bound({BoundExpr::linear(), BoundExpr::exponential()}, 1, 1, 1);
  CHECK(g.is_exponential());
  CHECK(add(BoundExpr::quadratic(), BoundExpr::linear()) == BoundExpr::polynomial({0, 1, 1}));
  CHECK(BoundExpr::named("linear") == BoundExpr::linear());
  CHECK_THROWS_AS(BoundExpr::named("cubic"), InputError);
  CHECK_THROWS_AS(BoundExpr::polynomial({Rational(-1)}), InputError);
  CHECK_THROWS_AS(compose_dehn_bound({}, 1, 1, 1), InputError);
  CHECK_THROWS_AS(compose_dehn_bound({BoundExpr::linear()}, 0, 1, 1), InputError);
  CHECK_THROWS_AS(compose_dehn_bound({BoundExpr::linear()}, 1, 0, 1), InputError);
  CHECK_THROWS_AS(compose_dehn_bound({BoundExpr::linear()}, 1, 1, -1), InputError);
  CHECK_THROWS(BoundExpr::exponential().degree());
  CHECK(BoundExpr::polynomial({}).degree() == -1);
}
