#ifndef WEBSK_TAIT_HPP
#define WEBSK_TAIT_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "websk/error.hpp"
#include "websk/web.hpp"

namespace websk {

// Number of Tait colorings: edge 3-colorings with three distinct colors at
// every vertex, times 3 for each free loop. Always exact.
using TaitCount = boost::multiprecision::cpp_int;

inline constexpr std::size_t kBruteEdgeLimit = 18;
inline constexpr std::size_t kDefaultStateCap = 4782969;  // 3^14
inline constexpr std::size_t kMaxFrontier = 32;

inline TaitCount pow3(std::size_t n) {
  TaitCount r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 3;
  return r;
}

// Exhaustive enumeration of all 3^|E| edge colorings. Test oracle only.
// The odometer re-checks just the endpoints of edges whose digit changed.
inline TaitCount tait_brute(const Web& web) {
  require_closed(web, "tait_brute");
  const auto& edges = web.edges();
  if (edges.size() > kBruteEdgeLimit)
    throw ResourceError("tait_brute is limited to " + std::to_string(kBruteEdgeLimit) + " edges, web has " +
                        std::to_string(edges.size()));
  const auto g = index_web(web);
  const std::size_t m = edges.size();
  std::vector<std::uint8_t> color(m, 0);
  auto valid = [&](std::size_t v) {
    unsigned mask = 0;
    for (const auto& he : g.incidence[v]) mask |= 1u << color[he.edge];
    return mask == 7u;
  };
  std::vector<bool> ok(g.vertex_count);
  std::size_t bad = 0;
  for (std::size_t v = 0; v < g.vertex_count; ++v) {
    ok[v] = valid(v);
    bad += !ok[v];
  }
  auto recheck = [&](std::size_t k) {
    for (auto v : g.ends[k]) {
      bool now = valid(v);
      if (now != ok[v]) {
        bad += ok[v] ? 1 : -1;
        ok[v] = now;
      }
    }
  };

  std::uint64_t count = 0;
  while (true) {
    if (bad == 0) ++count;
    std::size_t k = 0;
    while (k < m && color[k] == 2) {
      color[k] = 0;
      recheck(k);
      ++k;
    }
    if (k == m) break;
    ++color[k];
    recheck(k);
  }
  return TaitCount(count) * pow3(web.free_loops());
}

namespace detail {

// Frontier dynamic program over one connected component given by its vertex
// indices. The state is the coloring of the edges crossing the cut between
// processed and unprocessed vertices, packed two bits per edge.
inline TaitCount tait_component_dp(const IndexedWeb& g, const std::vector<std::size_t>& verts,
                                   std::size_t state_cap) {
  constexpr std::size_t kFree = IndexedWeb::kNone;
  std::vector<bool> done(g.vertex_count, false);
  std::vector<std::size_t> slot(g.ends.size(), kFree);  // frontier position of an open edge
  std::vector<std::size_t> frontier;

  for (auto v : verts)
    for (const auto& he : g.incidence[v])
      if (g.ends[he.edge][0] == g.ends[he.edge][1]) return 0;

  std::unordered_map<std::uint64_t, TaitCount> states{{0, 1}};
  for (std::size_t step = 0; step < verts.size(); ++step) {
    // Greedy order: smallest resulting frontier, then most edges closed.
    std::size_t pick = kFree;
    std::size_t best_size = 0;
    std::size_t best_closed = 0;
    for (auto v : verts) {
      if (done[v]) continue;
      std::size_t closed = 0;
      for (const auto& he : g.incidence[v]) closed += slot[he.edge] != kFree;
      std::size_t size = frontier.size() - closed + (3 - closed);
      if (pick == kFree || size < best_size || (size == best_size && closed > best_closed)) {
        pick = v;
        best_size = size;
        best_closed = closed;
      }
    }
    done[pick] = true;

    std::vector<std::size_t> closing_pos;
    std::vector<std::size_t> opening;
    for (const auto& he : g.incidence[pick]) {
      if (slot[he.edge] != kFree) closing_pos.push_back(slot[he.edge]);
      else opening.push_back(he.edge);
    }

    std::vector<std::size_t> next_frontier;
    std::vector<std::size_t> carry_from;  // old position for surviving entries
    for (std::size_t p = 0; p < frontier.size(); ++p) {
      bool closes = false;
      for (auto c : closing_pos) closes = closes || c == p;
      if (!closes) {
        carry_from.push_back(p);
        next_frontier.push_back(frontier[p]);
      }
    }
    for (auto e : opening) next_frontier.push_back(e);
    if (next_frontier.size() > kMaxFrontier)
      throw ResourceError("Tait DP frontier width " + std::to_string(next_frontier.size()) + " exceeds " +
                          std::to_string(kMaxFrontier));

    std::unordered_map<std::uint64_t, TaitCount> next;
    const std::size_t combos = opening.size() == 0 ? 1 : opening.size() == 1 ? 3 : opening.size() == 2 ? 9 : 27;
    for (const auto& [key, count] : states) {
      unsigned used = 0;
      bool clash = false;
      for (auto p : closing_pos) {
        unsigned bit = 1u << ((key >> (2 * p)) & 3u);
        clash = clash || (used & bit);
        used |= bit;
      }
      if (clash) continue;
      std::uint64_t base = 0;
      for (std::size_t i = 0; i < carry_from.size(); ++i)
        base |= ((key >> (2 * carry_from[i])) & 3u) << (2 * i);
      for (std::size_t c = 0; c < combos; ++c) {
        unsigned mask = used;
        std::uint64_t k = base;
        std::size_t rest = c;
        bool fine = true;
        for (std::size_t i = 0; i < opening.size(); ++i) {
          unsigned col = rest % 3;
          rest /= 3;
          unsigned bit = 1u << col;
          if (mask & bit) {
            fine = false;
            break;
          }
          mask |= bit;
          k |= std::uint64_t{col} << (2 * (carry_from.size() + i));
        }
        if (fine) next[k] += count;
      }
    }
    states = std::move(next);
    if (states.size() > state_cap)
      throw ResourceError("Tait DP state count " + std::to_string(states.size()) + " exceeds cap " +
                          std::to_string(state_cap));

    for (auto e : frontier) slot[e] = kFree;
    frontier = std::move(next_frontier);
    for (std::size_t p = 0; p < frontier.size(); ++p) slot[frontier[p]] = p;
    if (states.empty()) return 0;
  }
  auto it = states.find(0);
  return it == states.end() ? TaitCount(0) : it->second;
}

}  // namespace detail

// Exact count by frontier DP on each component, multiplied together.
// Exceeding the state cap raises ResourceError rather than approximating.
inline TaitCount tait_count(const Web& web, std::size_t state_cap = kDefaultStateCap) {
  require_closed(web, "tait_count");
  const auto g = index_web(web);
  detail::DisjointSets sets(g.vertex_count);
  for (const auto& ends : g.ends) sets.unite(ends[0], ends[1]);
  std::vector<std::vector<std::size_t>> groups(g.vertex_count);
  for (std::size_t v = 0; v < g.vertex_count; ++v) groups[sets.find(v)].push_back(v);

  TaitCount total = pow3(web.free_loops());
  for (const auto& verts : groups) {
    if (verts.empty()) continue;
    total *= detail::tait_component_dp(g, verts, state_cap);
    if (total == 0) break;
  }
  return total;
}

// Local form of the Tutte relation for one boundary coloring (a,b,c,d) of
// the stubs NW, NE, SW, SE: the weights of K0, K1, L0, L1 with signs.
inline int tutte_local_residual(int a, int b, int c, int d) {
  auto same_pair = [](int x, int y, int z, int w) {
    return (x == z && y == w) || (x == w && y == z);
  };
  int k0 = (a == b) && (c == d);
  int k1 = (a == c) && (b == d);
  int l0 = (a != b) && (c != d) && same_pair(a, b, c, d);
  int l1 = (a != c) && (b != d) && same_pair(a, c, b, d);
  return k0 - k1 + l0 - l1;
}

struct TutteCheck {
  TaitCount k0, k1, l0, l1;
  TaitCount residual() const { return k0 - k1 + l0 - l1; }
};

inline TutteCheck verify_tutte_site(const SkeinSite& site, std::size_t state_cap = kDefaultStateCap) {
  return {tait_count(apply_picture(site, Picture::K0), state_cap),
          tait_count(apply_picture(site, Picture::K1), state_cap),
          tait_count(apply_picture(site, Picture::L0), state_cap),
          tait_count(apply_picture(site, Picture::L1), state_cap)};
}

// τ(K0) − τ(K1) + τ(L0) − τ(L1) at the site exposed by excising edge e.
inline TutteCheck verify_tutte(const Web& web, std::string_view edge_id,
                               std::size_t state_cap = kDefaultStateCap) {
  return verify_tutte_site(excise_edge_site(web, edge_id), state_cap);
}

}  // namespace websk

#endif  // WEBSK_TAIT_HPP
