#ifndef WEBSK_ISOMORPHISM_HPP
#define WEBSK_ISOMORPHISM_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "websk/error.hpp"
#include "websk/web.hpp"

namespace websk {

// Canonical form of a closed web by individualization/refinement with full
// backtracking. Meant for desk-scale graphs (test oracles, round trips);
// webs with more than kMaxCanonicalEdges edges are rejected.
inline constexpr std::size_t kMaxCanonicalEdges = 60;

namespace detail {

using Matrix = std::vector<std::vector<unsigned>>;

// Refines a coloring until stable. New colors are ranks of the vertex
// signatures, so they depend only on the isomorphism class.
inline std::vector<std::size_t> refine(const Matrix& m, std::vector<std::size_t> colors) {
  const std::size_t n = m.size();
  std::size_t classes = 0;
  {
    auto sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    classes = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
  }
  while (true) {
    using Signature = std::pair<std::size_t, std::vector<std::pair<std::size_t, unsigned>>>;
    std::vector<Signature> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      sig[i].first = colors[i];
      for (std::size_t j = 0; j < n; ++j)
        if (m[i][j] != 0) sig[i].second.emplace_back(j == i ? n + 1 : colors[j], m[i][j]);
      std::sort(sig[i].second.begin(), sig[i].second.end());
    }
    auto distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t i = 0; i < n; ++i)
      colors[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[i]) - distinct.begin());
    if (distinct.size() == classes) return colors;
    classes = distinct.size();
  }
}

inline void search_canonical(const Matrix& m, const std::vector<std::size_t>& colors,
                             std::optional<std::vector<unsigned>>& best) {
  const std::size_t n = m.size();
  std::vector<std::size_t> cell_size(n, 0);
  for (auto c : colors) ++cell_size[c];
  std::optional<std::size_t> target;
  for (std::size_t c = 0; c < n; ++c)
    if (cell_size[c] > 1 && (!target || cell_size[c] < cell_size[*target])) target = c;

  if (!target) {
    std::vector<std::size_t> at(n);
    for (std::size_t i = 0; i < n; ++i) at[colors[i]] = i;
    std::vector<unsigned> code;
    code.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) code.push_back(m[at[i]][at[j]]);
    if (!best || code < *best) best = std::move(code);
    return;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (colors[v] != *target) continue;
    std::vector<std::size_t> split(n);
    for (std::size_t i = 0; i < n; ++i) split[i] = 2 * colors[i] + (colors[i] == *target && i != v ? 1 : 0);
    search_canonical(m, refine(m, std::move(split)), best);
  }
}

}  // namespace detail

inline std::string canonical_form(const Web& web) {
  require_closed(web, "canonical_form");
  if (web.edges().size() > kMaxCanonicalEdges)
    throw ResourceError("canonical form is limited to " + std::to_string(kMaxCanonicalEdges) + " edges");
  const auto g = index_web(web);
  const std::size_t n = g.vertex_count;
  detail::Matrix m(n, std::vector<unsigned>(n, 0));
  for (const auto& ends : g.ends) {
    ++m[ends[0]][ends[1]];
    if (ends[0] != ends[1]) ++m[ends[1]][ends[0]];
  }
  std::optional<std::vector<unsigned>> best;
  if (n > 0) detail::search_canonical(m, detail::refine(m, std::vector<std::size_t>(n, 0)), best);

  std::string out = "n=" + std::to_string(n) + ";loops=" + std::to_string(web.free_loops()) + ";";
  if (best)
    for (auto x : *best) out += std::to_string(x) + ",";
  return out;
}

inline bool isomorphic(const Web& a, const Web& b) {
  if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size() ||
      a.free_loops() != b.free_loops())
    return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace websk

#endif  // WEBSK_ISOMORPHISM_HPP
