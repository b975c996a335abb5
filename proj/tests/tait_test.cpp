#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace websk;
using websk::testing::corpus;

namespace {

// Naive oracle: every colour assignment, then check every vertex.
long long naive_tait(const Web& w) {
  const auto g = index_web(w);
  const std::size_t m = g.ends.size();
  std::vector<int> col(m, 0);
  long long count = 0;
  long long total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= 3;
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (std::size_t i = 0; i < m; ++i, c /= 3) col[i] = static_cast<int>(c % 3);
    bool ok = true;
    for (std::size_t v = 0; v < g.vertex_count && ok; ++v) {
      int mask = 0;
      for (const auto& he : g.incidence[v]) mask |= 1 << col[he.edge];
      ok = mask == 7 && g.incidence[v].size() == 3;
      for (std::size_t a = 0; a < 3 && ok; ++a)
        for (std::size_t b = a + 1; b < 3; ++b)
          if (g.incidence[v][a].edge == g.incidence[v][b].edge) ok = false;
    }
    if (ok) ++count;
  }
  for (std::size_t i = 0; i < w.free_loops(); ++i) count *= 3;
  return count;
}

// Weight of each picture for a boundary colouring, enumerating the bar.
std::array<int, 4> picture_weights(int a, int b, int c, int d) {
  auto distinct = [](int x, int y, int z) { return x != y && y != z && x != z; };
  int l0 = 0, l1 = 0;
  for (int x = 0; x < 3; ++x) {
    l0 += distinct(a, b, x) && distinct(c, d, x);
    l1 += distinct(a, c, x) && distinct(b, d, x);
  }
  return {a == b && c == d, a == c && b == d, l0, l1};
}

}  // namespace

TEST(Tait, CorpusValues) {
  EXPECT_EQ(tait_count(corpus("circle")), 3);
  EXPECT_EQ(tait_count(Web::circles(2)), 9);
  EXPECT_EQ(tait_count(corpus("dumbbell")), 0);
  EXPECT_EQ(tait_count(corpus("theta")), 6);
  EXPECT_EQ(tait_count(corpus("k4")), 6);
  EXPECT_EQ(tait_count(corpus("prism")), 6);
  EXPECT_EQ(tait_count(corpus("dodecahedron")), 60);
  EXPECT_EQ(tait_count(Web()), 1);
}

TEST(Tait, BruteCorpusValues) {
  EXPECT_EQ(tait_brute(corpus("circle")), 3);
  EXPECT_EQ(tait_brute(corpus("theta")), 6);
  EXPECT_EQ(tait_brute(corpus("dumbbell")), 0);
  EXPECT_EQ(tait_brute(corpus("k4")), 6);
  EXPECT_EQ(tait_brute(corpus("prism")), 6);
}

TEST(Tait, BruteGuard) { EXPECT_THROW(tait_brute(corpus("dodecahedron")), ResourceError); }

TEST(Tait, StateCap) {
  EXPECT_THROW(tait_count(corpus("dodecahedron"), 2), ResourceError);
  EXPECT_EQ(tait_count(corpus("theta"), 9), 6);
}

TEST(Tait, NaiveOracleAgrees) {
  std::mt19937_64 rng(websk::testing::seed() + 10);
  for (int i = 0; i < 80; ++i) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 4), rng() % 2);
    EXPECT_EQ(tait_count(w), naive_tait(w)) << print_web(w);
    EXPECT_EQ(tait_brute(w), naive_tait(w)) << print_web(w);
  }
}

TEST(Tait, DynamicProgramMatchesBrute) {
  std::mt19937_64 rng(websk::testing::seed() + 11);
  for (int i = 0; i < 200; ++i) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 5), rng() % 2);
    EXPECT_EQ(tait_count(w), tait_brute(w)) << print_web(w);
  }
}

TEST(Tait, Multiplicative) {
  std::mt19937_64 rng(websk::testing::seed() + 12);
  for (int i = 0; i < 60; ++i) {
    Web a = random_cubic_web(rng, 2 * (1 + rng() % 8), rng() % 2);
    Web b = random_cubic_web(rng, 2 * (1 + rng() % 8), rng() % 2);
    EXPECT_EQ(tait_count(disjoint_union(a, b)), tait_count(a) * tait_count(b));
  }
}

TEST(Tait, BridgeForcesZero) {
  std::mt19937_64 rng(websk::testing::seed() + 13);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 12));
    if (!has_bridge(w)) continue;
    ++seen;
    EXPECT_EQ(tait_count(w), 0) << print_web(w);
  }
  EXPECT_GT(seen, 10);
}

TEST(Tait, DivisibleBySix) {
  std::mt19937_64 rng(websk::testing::seed() + 14);
  for (int i = 0; i < 100; ++i) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 14));
    EXPECT_EQ(tait_count(w) % 6, 0);
  }
}

TEST(Tutte, LocalIdentityExhaustive) {
  int cases = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          auto w = picture_weights(a, b, c, d);
          const int oracle = w[0] - w[1] + w[2] - w[3];
          EXPECT_EQ(oracle, 0) << a << b << c << d;
          EXPECT_EQ(tutte_local_residual(a, b, c, d), oracle) << a << b << c << d;
          ++cases;
        }
  EXPECT_EQ(cases, 81);
}

TEST(Tutte, ThetaMiddleEdge) {
  auto t = verify_tutte(corpus("theta"), "e2");
  EXPECT_EQ(t.k0, 3);
  EXPECT_EQ(t.k1, 9);
  EXPECT_EQ(t.l0, 6);
  EXPECT_EQ(t.l1, 0);
  EXPECT_EQ(t.residual(), 0);
}

TEST(Tutte, EveryCorpusEdge) {
  for (auto name : {"theta", "k4", "prism", "dodecahedron"}) {
    Web w = corpus(name);
    for (const auto& e : w.edges()) EXPECT_EQ(verify_tutte(w, e.id).residual(), 0) << name << " " << e.id;
  }
}

TEST(Tutte, DodecahedronValues) {
  auto t = verify_tutte(corpus("dodecahedron"), "e7");
  EXPECT_EQ(t.l0, 60);
  EXPECT_EQ(t.k1 + t.l1 - t.k0, 60);
}

TEST(Tutte, RandomSitesAndSwap) {
  std::mt19937_64 rng(websk::testing::seed() + 15);
  for (int i = 0; i < 100; ++i) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 8), rng() % 2);
    const auto& e = w.edges()[rng() % w.edges().size()];
    if (e.is_self_loop()) continue;
    SkeinSite site = excise_edge_site(w, e.id);
    auto t = verify_tutte_site(site);
    EXPECT_EQ(t.residual(), 0);
    EXPECT_EQ(t.l0, tait_count(w));
    // swapping NW and NE turns K1 into the crossing smoothing
    SkeinSite sw = site.swapped_north();
    EXPECT_EQ(verify_tutte_site(sw).residual(), 0);
    EXPECT_EQ(tait_count(apply_picture(sw, Picture::K1)), tait_count(apply_picture(site, Picture::K2abstract)));
  }
}
