#pragma once

#include <fstream>
#include <sstream>
#include <string>

#ifndef GRAPHMF_FIXTURE_DIR
#error "GRAPHMF_FIXTURE_DIR must be defined"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(GRAPHMF_FIXTURE_DIR) + "/" + name; }

inline std::string text(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
