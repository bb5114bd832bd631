#include "graphmf/serialize.hpp"

namespace graphmf {

Json violations_to_json(const std::vector<Violation>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(Json{{"code", x.code}, {"element", x.element}, {"message", x.message}});
  return a;
}

Json tree_path_to_json(const GraphManifold& m, const TreePath& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps)
    steps.push_back(Json{{"traversal", traversal_name(m, s.traversal)},
                         {"from", departure(m, s.traversal).piece},
                         {"to", arrival(m, s.traversal).piece},
                         {"token", s.token}});
  return steps;
}

Json check_report(const GraphManifold& m) {
  Json gluings = Json::array();
  for (const auto& g : m.gluings) {
    const TransversalityResult t = gluing_is_transverse(m, g);
    gluings.push_back(Json{{"id", g.id}, {"transverse", t.transverse}, {"witness", lattice_to_json(t.witness)}});
  }
  const IrreducibilityResult irr = is_irreducible(m);
  return Json{{"irreducible", irr.irreducible},
              {"failing_gluings", irr.failing_gluings},
              {"gluings", gluings},
              {"has_transverse_pair", has_transverse_pair(m)},
              {"closed", is_closed(m)},
              {"internal_wall_count", internal_wall_count(m)},
              {"boundary_wall_count", boundary_wall_count(m)},
              {"separating_walls", separating_walls(m)}};
}

Json classify_report(const GraphManifold& m) {
  const PropertyReport r = classify_properties(m);
  auto field = [](const PropertyVerdict& v) {
    Json value = v.value ? Json(*v.value) : Json(nullptr);
    return Json{{"value", value}, {"trail", v.trail}};
  };
  return Json{{"simplicial_volume_zero", field(r.simplicial_volume_zero)},
              {"euler_char_zero_if_even_dim", field(r.euler_char_zero_if_even_dim)},
              {"cstar_simple", field(r.cstar_simple)},
              {"sq_universal_guaranteed", field(r.sq_universal_guaranteed)},
              {"relatively_hyperbolic", field(r.relatively_hyperbolic)},
              {"thick_order_one", field(r.thick_order_one)},
              {"cohopf_hypothesis", field(r.cohopf_hypothesis)}};
}

Json acylindricity_report(const GraphManifold& m, const AcylindricityResult& r) {
  Json j{{"bounded", r.bounded},
         {"max_len", r.max_len},
         {"shapes_checked", r.shapes_checked},
         {"K", r.bounded ? Json(r.K) : Json(nullptr)}};
  if (r.witness) {
    j["witness_path"] = tree_path_to_json(m, *r.witness);
    j["witness_lattice"] = lattice_to_json(r.witness_lattice);
  } else {
    j["witness_path"] = nullptr;
    j["witness_lattice"] = nullptr;
  }
  return j;
}

Json dehn_twist_report(const DehnTwistResult& r) {
  return Json{{"infinite_order", r.infinite_order},
              {"fiber_sum", lattice_to_json(r.fiber_sum)},
              {"intersection", lattice_to_json(r.intersection)}};
}

Json equivalence_report(const EquivalenceResult& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"equivalent", r.verdict == EquivVerdict::Equivalent},
         {"theta_pairs", r.theta_pairs},
         {"lattice_rejections", r.lattice_rejections}};
  j["N1"] = r.n1 ? matrix_to_json(*r.n1) : Json(nullptr);
  j["N2"] = r.n2 ? matrix_to_json(*r.n2) : Json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json family_report(const GraphManifold& pre, const std::string& edge, const std::vector<GluingPattern>& family) {
  Json patterns = Json::array();
  for (const auto& p : family) {
    Json mats = Json::object();
    for (const auto& [id, a] : p.matrices) mats[id] = matrix_to_json(a);
    const GraphManifold m = apply_pattern(pre, p);
    patterns.push_back(Json{{"matrices", mats},
                            {"B", matrix_to_json(p.B)},
                            {"lambda", lattice_to_json(p.lambda)},
                            {"irreducible", is_irreducible(m).irreducible},
                            {"manifest", manifest_to_json(m)}});
  }
  return Json{{"edge", edge}, {"count", family.size()}, {"patterns", patterns}};
}

Json bisimulation_report(const BisimulationResult& r) {
  return Json{{"bisimilar", r.bisimilar}, {"classes", r.classes}, {"warnings", r.warnings}};
}

Json isomorphism_report(const IsomorphismResult& r) {
  return Json{{"isomorphic", r.isomorphic},
              {"bijection", r.isomorphic ? Json(r.bijection) : Json(nullptr)},
              {"conclusion", r.isomorphic ? "labelled quotient graphs are isomorphic"
                                          : "no bijection: fundamental groups are not isomorphic"}};
}

std::vector<BoundExpr> piece_bounds(const GraphManifold& m) {
  std::vector<BoundExpr> out;
  for (const auto& p : m.pieces) {
    auto it = m.dehn_bounds.find(p.id);
    out.push_back(it == m.dehn_bounds.end() ? BoundExpr::quadratic() : it->second);
  }
  return out;
}

}  // namespace graphmf
