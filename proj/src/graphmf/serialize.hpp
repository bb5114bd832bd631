#pragma once

#include <string>
#include <vector>

#include "graphmf/bass_serre.hpp"
#include "graphmf/equiv.hpp"
#include "graphmf/manifest.hpp"
#include "graphmf/model.hpp"
#include "graphmf/obstruction.hpp"

namespace graphmf {

Json violations_to_json(const std::vector<Violation>& v);
Json tree_path_to_json(const GraphManifold& m, const TreePath& p);

/// Transversality of every gluing plus the global structural predicates.
Json check_report(const GraphManifold& m);
Json classify_report(const GraphManifold& m);
Json acylindricity_report(const GraphManifold& m, const AcylindricityResult& r);
Json dehn_twist_report(const DehnTwistResult& r);
Json equivalence_report(const EquivalenceResult& r);
Json family_report(const GraphManifold& pre, const std::string& edge, const std::vector<GluingPattern>& family);
Json bisimulation_report(const BisimulationResult& r);
Json isomorphism_report(const IsomorphismResult& r);

/// Piece bounds in piece order: the manifest's dehn_bounds entry or quadratic.
std::vector<BoundExpr> piece_bounds(const GraphManifold& m);

}  // namespace graphmf
