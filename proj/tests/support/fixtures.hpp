#pragma once

#include <string>

#include "graphmf/manifest.hpp"
#include "support/fixture_paths.hpp"

namespace fixtures {

inline graphmf::Json json(const std::string& name) { return graphmf::Json::parse(text(name)); }

inline graphmf::GraphManifold manifold(const std::string& name) { return graphmf::load_manifest(json(name)); }

}  // namespace fixtures
