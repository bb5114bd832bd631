#include <doctest.h>

#include <random>

#include "graphmf/bass_serre.hpp"
#include "graphmf/errors.hpp"
#include "graphmf/obstruction.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_manifold.hpp"

using namespace graphmf;

namespace {

// v fixes the path iff at every interior vertex its transported image lies in that fiber.
bool fixes_path(const GraphManifold& m, const TreePath& p, const Vector& v) {
  Vector w = v;
  for (std::size_t i = 0; i + 1 < p.steps.size(); ++i) {
    w = traversal_matrix(m, p.steps[i].traversal) * w;
    const Piece& here = m.piece(arrival(m, p.steps[i].traversal).piece);
    for (std::size_t c = 0; c + here.fiber_dim < w.size(); ++c)
      if (w[c] != 0) return false;
  }
  return true;
}

TreePath path_of(const GraphManifold& m, std::initializer_list<const char*> steps) {
  TreePath p;
  std::size_t token = 0;
  for (const char* s : steps) {
    const Traversal t = parse_traversal(m, s);
    if (!p.steps.empty() && p.steps.back().traversal.gluing == t.gluing && p.steps.back().traversal.dir != t.dir)
      token = p.steps.back().token + 1;
    else
      token = 0;
    p.steps.push_back({t, token});
  }
  return p;
}

}  // namespace

TEST_CASE("fix-lattice of short paths") {
  const GraphManifold m = fixtures::manifold("notqi.json");
  CHECK(path_fix_lattice(m, path_of(m, {"g1+"})) == Lattice::full(4));
  const Lattice two = path_fix_lattice(m, path_of(m, {"g1+", "g2-"}));
  CHECK(two == fiber_lattice(4, 2));
  CHECK_THROWS_AS(path_fix_lattice(m, path_of(m, {"g1+", "g1+"})), InputError);
  TreePath back = path_of(m, {"g1+", "g1-"});
  back.steps[1].token = back.steps[0].token;
  CHECK_FALSE(is_reduced(back));
  CHECK_THROWS_AS(path_fix_lattice(m, back), InputError);
  CHECK_THROWS_AS(path_fix_lattice(m, TreePath{}), InputError);
}

TEST_CASE("notqi is not acylindrical within the bound") {
  const GraphManifold m = fixtures::manifold("notqi.json");
  const AcylindricityResult r = check_acylindricity(m, 5);
  CHECK_FALSE(r.bounded);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->length() == 5);
  CHECK_FALSE(r.witness_lattice.is_zero());
  CHECK_THROWS_AS(check_acylindricity(m, 2), InputError);
}

TEST_CASE("fix-lattices agree with box enumeration") {
  std::mt19937 rng(21);
  int paths = 0;
  for (int t = 0; t < 12; ++t) {
    randgen::Options o;
    o.n_max = 5;
    o.max_pieces = 3;
    o.irreducible = t % 2 == 0;
    const GraphManifold m = randgen::random_manifold(rng, o);
    for (std::size_t len = 1; len <= 3; ++len) {
      const auto shapes = enumerate_path_shapes(m, len);
      for (std::size_t s = 0; s < shapes.size(); s += 1 + shapes.size() / 4) {
        const Lattice l = path_fix_lattice(m, shapes[s]);
        ++paths;
        oracle::for_each_in_box(m.frame_dim(), 2, [&](const Vector& v) {
          REQUIRE(l.contains(v) == fixes_path(m, shapes[s], v));
        });
      }
    }
  }
  CHECK(paths > 0);
}

TEST_CASE("path shapes are connected, reduced and complete") {
  const GraphManifold m = fixtures::manifold("truth_chain3.json");
  // Chain V1 - V2 - V3: 4 traversals, and every step has a successor set given by the degree.
  CHECK(enumerate_path_shapes(m, 1).size() == 4);
  for (const auto& p : enumerate_path_shapes(m, 3)) {
    CHECK(is_reduced(p));
    for (std::size_t i = 1; i < p.length(); ++i)
      CHECK(arrival(m, p.steps[i - 1].traversal).piece == departure(m, p.steps[i].traversal).piece);
  }
}

TEST_CASE("irreducible manifolds are acylindrical with K at most 3") {
  std::mt19937 rng(99);
  for (int t = 0; t < 30; ++t) {
    const GraphManifold m = randgen::random_manifold(rng);
    const AcylindricityResult r = check_acylindricity(m, 3);
    REQUIRE(r.bounded);
    CHECK(r.K <= 3);
    for (const auto& p : enumerate_path_shapes(m, 3)) REQUIRE(path_fix_lattice(m, p).is_zero());
  }
}

TEST_CASE("Dehn twist order") {
  const GraphManifold m = fixtures::manifold("truth_double_transverse.json");
  const auto r = dehn_twist_has_infinite_order(m, "g1", make_vector({0, 1, 0}));
  CHECK(r.infinite_order);
  CHECK(r.fiber_sum.rank() == 2);
  CHECK(r.intersection.is_zero());
  CHECK_FALSE(dehn_twist_has_infinite_order(m, "g1", make_vector({0, 0, 1})).infinite_order);
  CHECK_FALSE(dehn_twist_has_infinite_order(m, "g1", make_vector({2, 0, 0})).infinite_order);
  CHECK(dehn_twist_has_infinite_order(m, "g1", make_vector({1, 1, 1})).infinite_order);
  CHECK_THROWS_AS(dehn_twist_has_infinite_order(m, "g1", make_vector({0, 0, 0})), InputError);
  CHECK_THROWS_AS(dehn_twist_has_infinite_order(m, "g9", make_vector({0, 1, 0})), InputError);

  std::mt19937 rng(4);
  for (int t = 0; t < 40; ++t) {
    const GraphManifold g = randgen::random_manifold(rng);
    if (g.gluings.empty()) continue;
    const Gluing& w = g.gluings.front();
    const std::size_t frame = g.frame_dim();
    Vector h(frame);
    for (auto& x : h) x = randgen::uniform(rng, -3, 3);
    if (is_zero(h)) continue;
    const auto res = dehn_twist_has_infinite_order(g, w.id, h);
    // Oracle: h is rationally dependent on the two fiber images.
    std::vector<Vector> gens;
    const IntMatrix inv = inverse_unimodular(w.matrix);
    const std::size_t df = g.piece(w.from.piece).fiber_dim, dt = g.piece(w.to.piece).fiber_dim;
    for (std::size_t i = frame - df; i < frame; ++i) {
      Vector e = zero_vector(frame);
      e[i] = 1;
      gens.push_back(e);
    }
    for (std::size_t i = frame - dt; i < frame; ++i) {
      Vector e = zero_vector(frame);
      e[i] = 1;
      gens.push_back(inv * e);
    }
    const std::size_t base = oracle::rational_rank(gens);
    gens.push_back(h);
    REQUIRE(res.infinite_order == (oracle::rational_rank(gens) > base));
  }
}
