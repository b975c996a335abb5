#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace websk;
using websk::testing::corpus;

TEST(Report, TaitSchema) {
  Report r = tait_report(corpus("theta"), false);
  EXPECT_EQ(r["count"], "6");
  EXPECT_EQ(r["algorithm"], "dp");
  EXPECT_EQ(r["components"], 1);
  EXPECT_EQ(tait_report(corpus("theta"), true)["algorithm"], "brute");
}

TEST(Report, Deterministic) {
  Web w = corpus("dodecahedron");
  auto once = dodecahedron_report(run_dodecahedron_workflow(w, 5)).dump();
  auto twice = dodecahedron_report(run_dodecahedron_workflow(w, 5)).dump();
  EXPECT_EQ(once, twice);
  RelationSet rels = parse_relations(websk::testing::read_data("octahedron.rels"));
  EXPECT_EQ(octahedron_report(rels).dump(), octahedron_report(rels).dump());
}

TEST(Report, Dodecahedron) {
  auto w = run_dodecahedron_workflow(corpus("dodecahedron"), 5);
  Report r = dodecahedron_report(w);
  EXPECT_EQ(r["upper_bound"], "70");
  EXPECT_EQ(r["euler_bound"], "10");
  EXPECT_EQ(r["lower_bound"], 58);
  EXPECT_EQ(r["morse_bott_count"], "68");
  EXPECT_EQ(r["simple_sum"], "60");
  EXPECT_EQ(r["tutte_residual"], "0");
  EXPECT_EQ(r["assumed_simple"], true);
  EXPECT_FALSE(r["warnings"].empty());
}

TEST(Report, FoamAndTriangle) {
  Report f = foam_report(make_psi(3), Rational(1, 32));
  EXPECT_EQ(f["dimension"], "0");
  EXPECT_EQ(f["self_intersection"], "1/2");
  Report t = triangle_report(2, 3, 3);
  EXPECT_EQ(t["feasible"], true);
  EXPECT_EQ(t["ranks"]["g"], "2");
  EXPECT_EQ(triangle_report(1, 0, 0)["feasible"], false);
}

TEST(Report, ShippedConstantsMatchCode) {
  Report c = Report::parse(websk::testing::read_data("constants.json"));
  EXPECT_EQ(parse_rational(c["bubble_min_action"].get<std::string>()), kMinBubbleAction);
  EXPECT_EQ(c["dodecahedron"]["lower_bound"], kDodecahedronLowerBound);
  EXPECT_EQ(c["dodecahedron"]["rank_a_kappa"], kDodecahedronRankAKappa);
  EXPECT_EQ(c["dodecahedron"]["tait_count"], kDodecahedronTait);
  EXPECT_EQ(c["morse_bott_betti"]["FLAG"], kFlagBetti);
  EXPECT_EQ(c["morse_bott_betti"]["SO3"], kSO3Betti);
  for (const auto& row : c["min_action_table"]) {
    auto e = min_action_table(row["n"].get<int>());
    EXPECT_EQ(parse_rational(row["kappa"].get<std::string>()), e.kappa);
    EXPECT_EQ(parse_rational(row["formal_dim"].get<std::string>()), e.formal_dim);
    EXPECT_EQ(row["holonomy"], e.holonomy);
    EXPECT_EQ(row["automorphisms"], e.automorphisms);
  }
}
