#ifndef WEBSK_RANDOM_WEB_HPP
#define WEBSK_RANDOM_WEB_HPP

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "websk/error.hpp"
#include "websk/web.hpp"

namespace websk {

// Configuration model: 3n half-edges paired uniformly at random. Self-loops
// and parallel edges are kept, so every cubic multigraph shape can appear.
template <class Rng>
Web random_cubic_web(Rng& rng, std::size_t vertex_count, std::size_t free_loops = 0) {
  if (vertex_count % 2 != 0) throw InputError("a cubic multigraph needs an even vertex count");
  std::vector<std::size_t> points(3 * vertex_count);
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = i / 3;
  std::shuffle(points.begin(), points.end(), rng);

  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < vertex_count; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < points.size(); i += 2)
    edges.push_back({"e" + std::to_string(i / 2), vertices[points[i]], vertices[points[i + 1]]});
  return Web(std::move(vertices), std::move(edges), free_loops);
}

}  // namespace websk

#endif  // WEBSK_RANDOM_WEB_HPP
