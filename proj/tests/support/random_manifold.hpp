#pragma once

// Random valid graph manifolds for property tests: a random spanning tree plus extra
// edges (loops included), random unimodular gluings resampled until transverse.

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>

#include "graphmf/model.hpp"

namespace randgen {

using graphmf::GraphManifold;
using graphmf::IntMatrix;

inline long uniform(std::mt19937& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline IntMatrix random_unimodular(std::mt19937& rng, std::size_t m) {
  IntMatrix a = IntMatrix::identity(m);
  if (m < 2) {
    if (uniform(rng, 0, 1)) a(0, 0) = -1;
    return a;
  }
  const std::size_t steps = 3 * m;
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(m) - 2));
    if (j >= i) ++j;
    const long c = uniform(rng, -2, 2);
    for (std::size_t k = 0; k < m; ++k) a(i, k) += c * a(j, k);
    if (uniform(rng, 0, 3) == 0)
      for (std::size_t k = 0; k < m; ++k) std::swap(a(i, k), a(j, k));
  }
  return a;
}

struct Options {
  std::size_t n_min = 4, n_max = 6;
  std::size_t max_pieces = 5;
  std::size_t max_extra_edges = 2;
  bool irreducible = true;
  bool closed = false;
};

inline GraphManifold random_manifold(std::mt19937& rng, const Options& o = {}) {
  GraphManifold m;
  m.n = static_cast<std::size_t>(uniform(rng, static_cast<long>(o.n_min), static_cast<long>(o.n_max)));
  const std::size_t frame = m.n - 1;
  const std::size_t pieces = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(o.max_pieces)));
  // Two fibers must fit transversally in the frame.
  const long d_max = static_cast<long>(std::min(m.n - 3, frame / 2));
  for (std::size_t i = 0; i < pieces; ++i) {
    graphmf::Piece p;
    p.id = "P" + std::to_string(i + 1);
    p.fiber_dim = static_cast<std::size_t>(uniform(rng, 0, d_max));
    p.base_dim = m.n - p.fiber_dim;
    m.pieces.push_back(p);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 1; i < pieces; ++i)
    edges.push_back({static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(i) - 1)), i});
  const std::size_t extra = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(o.max_extra_edges)));
  for (std::size_t e = 0; e < extra; ++e)
    edges.push_back({static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pieces) - 1)),
                     static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pieces) - 1))});
  if (o.closed && edges.empty()) edges.push_back({0, 0});
  auto new_cusp = [&](std::size_t i) {
    auto& p = m.pieces[i];
    p.cusps.push_back("c" + std::to_string(p.cusps.size() + 1));
    return graphmf::Endpoint{p.id, p.cusps.back()};
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    graphmf::Gluing g;
    g.id = "g" + std::to_string(e + 1);
    g.from = new_cusp(edges[e].first);
    g.to = new_cusp(edges[e].second);
    const std::size_t df = m.pieces[edges[e].first].fiber_dim;
    const std::size_t dt = m.pieces[edges[e].second].fiber_dim;
    g.matrix = random_unimodular(rng, frame);
    if (o.irreducible)
      for (int tries = 0; tries < 1000 && !graphmf::matrix_is_transverse(g.matrix, df, dt).transverse; ++tries)
        g.matrix = random_unimodular(rng, frame);
    m.gluings.push_back(g);
  }
  if (!o.closed)
    for (std::size_t i = 0; i < pieces; ++i)
      if (m.pieces[i].cusps.empty() || uniform(rng, 0, 2) == 0) new_cusp(i);
  return m;
}

}  // namespace randgen
