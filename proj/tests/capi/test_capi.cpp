#include <doctest.h>
#include <json.hpp>

#include <string>

#include "graphmf/graphmf.h"
#include "support/fixture_paths.hpp"

using Json = nlohmann::json;

namespace {

struct Manifold {
  gm_manifold* m = nullptr;
  explicit Manifold(const std::string& name) {
    REQUIRE(gm_manifold_from_file(fixtures::path(name).c_str(), &m) == GM_OK);
  }
  ~Manifold() { gm_manifold_free(m); }
};

Json take(char* s) {
  Json j = Json::parse(s);
  gm_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("manifold handles") {
  Manifold n("notqi.json");
  CHECK(gm_manifold_dimension(n.m) == 5);
  CHECK(gm_piece_count(n.m) == 2);
  CHECK(gm_gluing_count(n.m) == 2);
  int irr = -1;
  CHECK(gm_is_irreducible(n.m, &irr) == GM_OK);
  CHECK(irr == 0);
  char* out = nullptr;
  REQUIRE(gm_manifold_to_json(n.m, &out) == GM_OK);
  CHECK(take(out).at("n") == 5);
  CHECK(std::string(gm_last_error()).empty());
}

TEST_CASE("status codes and last error") {
  gm_manifold* m = nullptr;
  CHECK(gm_manifold_from_json("{", &m) == GM_ERR_INPUT);
  CHECK(m == nullptr);
  CHECK_FALSE(std::string(gm_last_error()).empty());
  CHECK(gm_manifold_from_file("/nonexistent/x.json", &m) == GM_ERR_INPUT);
  CHECK(gm_manifold_from_json(fixtures::text("invalid_self_gluing.json").c_str(), &m) == GM_ERR_INPUT);
  CHECK(gm_manifold_from_json(nullptr, &m) == GM_ERR_INPUT);

  Manifold n("notqi.json");
  char* out = nullptr;
  CHECK(gm_acylindricity(n.m, 2, &out) == GM_ERR_INPUT);
  CHECK(gm_obstruct(n.m, "bogus", 0, &out) == GM_ERR_INPUT);
  CHECK(gm_dehn(n.m, "x", "1", "1", &out) == GM_ERR_INPUT);
  CHECK(gm_dehn_twist(n.m, "g1", "[1,2]", &out) == GM_ERR_INPUT);
  CHECK(gm_check(nullptr, &out) == GM_ERR_INPUT);

  const std::string loop = R"({"n":4,"pieces":[{"id":"V","base_dim":3,"fiber_dim":1,"cusps":["a","b"]}],
    "gluings":[{"from":["V","a"],"to":["V","b"],"matrix":[[0,0,1],[0,1,0],[1,0,0]]}]})";
  gm_manifold* l = nullptr;
  REQUIRE(gm_manifold_from_json(loop.c_str(), &l) == GM_OK);
  CHECK(gm_equiv(l, "g1", "[[[1,0,0],[0,1,0],[0,0,1]],[[1,0,0],[0,1,0],[0,0,1]]]", &out) == GM_ERR_UNSUPPORTED);
  gm_manifold_free(l);
}

TEST_CASE("validate reports violations") {
  int valid = -1;
  char* out = nullptr;
  REQUIRE(gm_validate_json(fixtures::text("invalid_self_gluing.json").c_str(), &valid, &out) == GM_OK);
  CHECK(valid == 0);
  const Json r = take(out);
  CHECK(r.at("violations").size() >= 1);
  REQUIRE(gm_validate_json("not json", &valid, &out) == GM_OK);
  CHECK(valid == 0);
  CHECK(take(out).at("violations")[0].at("code") == "schema");
  REQUIRE(gm_validate_json(fixtures::text("notqi.json").c_str(), &valid, &out) == GM_OK);
  CHECK(valid == 1);
  gm_string_free(out);
}

TEST_CASE("check, obstruct and verify through the C API") {
  Manifold n("notqi.json");
  char* out = nullptr;
  REQUIRE(gm_check(n.m, &out) == GM_OK);
  const Json c = take(out);
  CHECK(c.at("irreducible") == false);
  CHECK(c.at("failing_gluings") == Json::array({"g1", "g2"}));

  REQUIRE(gm_obstruct(n.m, "monodromy", 0, &out) == GM_OK);
  const Json o = take(out);
  const Json cert = o.at("certificates")[0];
  CHECK(cert.at("verdict") == "obstructed");
  CHECK(cert.at("witness").at("matrix") == Json::parse("[[1,0],[1,1]]"));

  int valid = -1;
  char* reason = nullptr;
  REQUIRE(gm_verify_certificate(cert.dump().c_str(), n.m, &valid, &reason) == GM_OK);
  CHECK(valid == 1);
  gm_string_free(reason);

  REQUIRE(gm_monodromy(n.m, R"(["g2+","g1-"])", &out) == GM_OK);
  const Json mono = take(out);
  CHECK(mono.at("defined") == true);
  CHECK(mono.at("subkind") == "unipotent");

  REQUIRE(gm_path_fix_lattice(n.m, R"(["g1+","g2-"])", &out) == GM_OK);
  CHECK(take(out).at("lattice").at("rank") == 2);
}

TEST_CASE("family, equivalence, invariants and Dehn bound") {
  Manifold pre("family_pregraph.json");
  char* out = nullptr;
  REQUIRE(gm_generate(pre.m, "g1", 4, &out) == GM_OK);
  const Json fam = take(out);
  REQUIRE(fam.at("patterns").size() == 4);
  Json mats = Json::array();
  for (const auto& p : fam.at("patterns")) mats.push_back(p.at("matrices").at("g1"));
  REQUIRE(gm_equiv(pre.m, "g1", mats.dump().c_str(), &out) == GM_OK);
  const Json eq = take(out);
  CHECK(eq.at("pairs").size() == 6);
  CHECK(eq.at("pairwise_inequivalent") == true);

  Manifold a("notsuff_a.json"), b("notsuff_b.json");
  REQUIRE(gm_invariant(a.m, b.m, &out) == GM_OK);
  CHECK(take(out).at("bisimulation").at("bisimilar") == true);

  Manifold chain("truth_chain3.json");
  REQUIRE(gm_dehn(chain.m, "1", "1", "1", &out) == GM_OK);
  CHECK(take(out).at("G").at("degree") == 5);
}

TEST_CASE("sha256") {
  char* out = nullptr;
  REQUIRE(gm_sha256_hex("abc", 3, &out) == GM_OK);
  CHECK(std::string(out) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  gm_string_free(out);
  REQUIRE(gm_sha256_hex(nullptr, 0, &out) == GM_OK);
  CHECK(std::string(out) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  gm_string_free(out);
  CHECK(std::string(gm_version()).size() > 0);
}
