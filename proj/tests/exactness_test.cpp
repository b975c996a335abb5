#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace websk;
using CS = ConstraintSystem;

namespace {

// All rank triples making A -f-> B -g-> C -h-> A exact, by enumeration.
std::vector<std::array<int, 3>> brute_ranks(int a, int b, int c) {
  std::vector<std::array<int, 3>> out;
  for (int f = 0; f <= std::min(a, b); ++f)
    for (int g = 0; g <= std::min(b, c); ++g)
      for (int h = 0; h <= std::min(c, a); ++h)
        if (f + h == a && g + f == b && h + g == c) out.push_back({f, g, h});
  return out;
}

}  // namespace

TEST(Triangle, Examples) {
  auto s = solve_triangle(2, 3, 3);
  ASSERT_TRUE(s.feasible);
  EXPECT_EQ(s.ranks[0], 1);
  EXPECT_EQ(s.ranks[1], 2);
  EXPECT_EQ(s.ranks[2], 1);
  auto bad = solve_triangle(1, 0, 0);
  EXPECT_FALSE(bad.feasible);
  EXPECT_FALSE(bad.reason.empty());
  EXPECT_FALSE(solve_triangle(1, 1, 4).feasible);
  EXPECT_FALSE(solve_triangle(-1, 1, 0).feasible);
  EXPECT_TRUE(solve_triangle(0, 0, 0).feasible);
}

TEST(Triangle, MatchesEnumeration) {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = 0; c <= 8; ++c) {
        auto all = brute_ranks(a, b, c);
        ASSERT_LE(all.size(), 1u);
        auto s = solve_triangle(a, b, c);
        EXPECT_EQ(s.feasible, !all.empty()) << a << b << c;
        if (s.feasible) {
          for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(s.ranks[i], all[0][i]);
        }
      }
}

TEST(Constraints, DeriveTwoRank) {
  CS sys;
  sys.add_exact_triangle("T", {"A", "B", "C"}, {"f", "g", "h"});
  auto id = sys.derive_two_rank("T", "f");
  EXPECT_EQ(id.lhs, LinearExpr::var(CS::rank("f"), 2));
  EXPECT_EQ(id.rhs, LinearExpr::var("|A|") + LinearExpr::var("|B|") - LinearExpr::var("|C|"));
  EXPECT_EQ(to_string(sys.derive_two_rank("T", "h")), "2*rank(h) = |A| - |B| + |C|");
  EXPECT_THROW(sys.derive_two_rank("T", "x"), ValidationError);
  EXPECT_THROW(sys.derive_two_rank("U", "f"), ValidationError);
  EXPECT_THROW(sys.add_exact_triangle("T", {"A", "B", "C"}, {"f", "g", "h"}), ValidationError);
}

TEST(Constraints, RandomConsistentInstances) {
  std::mt19937_64 rng(websk::testing::seed() + 30);
  std::uniform_int_distribution<int> d(0, 50);
  for (int i = 0; i < 300; ++i) {
    std::map<std::string, Integer> v{{CS::rank("f"), d(rng)}, {CS::rank("g"), d(rng)}, {CS::rank("h"), d(rng)}};
    v["|A|"] = v[CS::rank("f")] + v[CS::rank("h")];
    v["|B|"] = v[CS::rank("g")] + v[CS::rank("f")];
    v["|C|"] = v[CS::rank("h")] + v[CS::rank("g")];
    CS sys;
    sys.add_exact_triangle("T", {"A", "B", "C"}, {"f", "g", "h"});
    for (auto m : {"f", "g", "h"}) {
      auto id = sys.derive_two_rank("T", m);
      EXPECT_EQ(id.lhs.evaluate(v), id.rhs.evaluate(v));
    }
    for (auto s : {"A", "B", "C"}) sys.fix(CS::space(s), v[CS::space(s)]);
    auto p = sys.propagate();
    ASSERT_TRUE(p.feasible) << p.reason;
    for (auto m : {"f", "g", "h"}) {
      EXPECT_TRUE(p.bounds.at(CS::rank(m)).fixed());
      EXPECT_EQ(p.bounds.at(CS::rank(m)).lo, v[CS::rank(m)]);
    }
  }
}

TEST(Constraints, PropagationInfeasible) {
  CS sys;
  sys.add_exact_triangle("T", {"A", "B", "C"}, {"f", "g", "h"});
  sys.fix("|A|", 1);
  sys.fix("|B|", 0);
  sys.fix("|C|", 0);
  auto p = sys.propagate();
  EXPECT_FALSE(p.feasible);
  EXPECT_FALSE(p.reason.empty());
}

TEST(Constraints, InequalitiesTighten) {
  CS sys;
  sys.add_exact_triangle("T", {"A", "B", "C"}, {"f", "g", "h"});
  sys.fix("|A|", 4);
  sys.add_inequality(LinearExpr::var(CS::rank("f")) - LinearExpr(Integer(1)), "rank f <= 1");
  auto p = sys.propagate();
  ASSERT_TRUE(p.feasible);
  EXPECT_EQ(*p.bounds.at(CS::rank("f")).hi, 1);
  EXPECT_EQ(p.bounds.at(CS::rank("h")).lo, 3);
  sys.add_inequality(LinearExpr(Integer(5)) - LinearExpr::var(CS::rank("h")), "rank h >= 5");
  EXPECT_FALSE(sys.propagate().feasible);
}

TEST(Euler, Functions) {
  EXPECT_EQ(euler_4periodic(48, 36, 60, 72), 0);
  EXPECT_EQ(euler_from_ranks(5, 0), 10);
  EXPECT_EQ(euler_from_single_ranks(3, 7), -8);
}

TEST(Euler, ShippedRelationsAreConsistent) {
  RelationSet rels = parse_relations(websk::testing::read_data("octahedron.rels"));
  auto e = euler_consistency(rels);
  ASSERT_TRUE(e.derivable);
  EXPECT_TRUE(e.consistent());
  EXPECT_EQ(to_string(e.rank_a), "2*rank(a) = |K0| + |K2| - |L1|");
  EXPECT_EQ(to_string(e.rank_b), "2*rank(b) = |K1| + |K2| - |L0|");
  EXPECT_FALSE(euler_consistency(RelationSet{}).derivable);
}

TEST(Euler, RandomOctahedronRanks) {
  // Random rank data on triangles 1 and 2 sharing K2: the identity
  // 2 rank a - 2 rank b = |K0| - |K1| + |L0| - |L1| holds numerically.
  RelationSet rels = parse_relations(websk::testing::read_data("octahedron.rels"));
  auto e = euler_consistency(rels);
  std::mt19937_64 rng(websk::testing::seed() + 31);
  std::uniform_int_distribution<int> d(0, 40);
  for (int i = 0; i < 200; ++i) {
    Integer rb = d(rng), rt = d(rng), rq = d(rng), rr = d(rng), rs = d(rng);
    Integer k2 = rq + rb;  // triangle 1 at K2
    Integer ra = k2 - rr;  // triangle 2 at K2
    if (ra < 0) continue;
    std::map<std::string, Integer> v{{"|K2|", k2}, {"|K1|", rb + rt}, {"|L0|", rt + rq},
                                     {"|L1|", rr + rs}, {"|K0|", rs + ra}};
    EXPECT_EQ(2 * ra, e.rank_a.rhs.evaluate(v));
    EXPECT_EQ(2 * rb, e.rank_b.rhs.evaluate(v));
    EXPECT_EQ(2 * ra - 2 * rb, e.euler.evaluate(v));
  }
}

TEST(Bounds, Dodecahedron) {
  auto b = dodecahedron_bound(48, 36, 72, 5);
  EXPECT_EQ(b.upper, 70);
  EXPECT_TRUE(b.feasible());
  EXPECT_FALSE(dodecahedron_bound(100, 0, 0, 1).feasible());
}

TEST(Bounds, MorseBott) {
  std::vector<CriticalManifold> rep(10, CriticalManifold::Flag);
  rep.push_back(critical_manifold_from_string("SO3"));
  rep.push_back(critical_manifold_from_string("so3"));
  EXPECT_EQ(morse_bott_count(rep), 68);
  EXPECT_EQ(morse_bott_count({}), 0);
  EXPECT_THROW(critical_manifold_from_string("torus"), InputError);
}
