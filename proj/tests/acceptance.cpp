// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "test_support.hpp"

using namespace websk;
using websk::testing::corpus;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::ostringstream why;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) why << "; ";
      why << what;
      ok = false;
    }
  }
};

Check tait_counts() {
  Check c;
  c.expect(tait_count(corpus("circle")) == 3, "circle");
  c.expect(tait_count(Web::circles(2)) == 9, "two circles");
  c.expect(tait_count(corpus("dumbbell")) == 0, "dumbbell");
  c.expect(tait_count(corpus("theta")) == 6, "theta");
  c.expect(tait_count(corpus("k4")) == 6, "K4");
  auto t0 = Clock::now();
  auto n = tait_count(corpus("dodecahedron"));
  double dt = seconds_since(t0);
  c.expect(n == 60, "dodecahedron = " + n.str());
  c.expect(dt < 5.0, "dodecahedron took " + std::to_string(dt) + " s");
  c.why << (c.ok ? "" : " ") << "(dodecahedron " << dt << " s)";
  return c;
}

Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(websk::testing::seed());
  auto t0 = Clock::now();
  int done = 0;
  while (done < 200) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 5), rng() % 2);  // at most 15 edges
    auto fast = tait_count(w);
    auto slow = tait_brute(w);
    c.expect(fast == slow, "mismatch on\n" + print_web(w));
    ++done;
  }
  double dt = seconds_since(t0);
  c.expect(dt < 60.0, "took " + std::to_string(dt) + " s");
  c.why << (c.ok ? "" : " ") << "(200 webs, " << dt << " s)";
  return c;
}

Check tutte_relation() {
  Check c;
  for (auto name : {"theta", "k4", "prism", "dodecahedron"}) {
    Web w = corpus(name);
    for (const auto& e : w.edges())
      c.expect(verify_tutte(w, e.id).residual() == 0, std::string(name) + " edge " + e.id);
  }
  std::mt19937_64 rng(websk::testing::seed() + 1);
  int sites = 0;
  while (sites < 50) {
    Web w = random_cubic_web(rng, 2 * (1 + rng() % 8));  // at most 24 edges
    const auto& e = w.edges()[rng() % w.edges().size()];
    if (e.is_self_loop()) continue;
    c.expect(verify_tutte(w, e.id).residual() == 0, "random site " + e.id + " of\n" + print_web(w));
    ++sites;
  }
  int cases = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int x = 0; x < 3; ++x)
        for (int d = 0; d < 3; ++d, ++cases) c.expect(tutte_local_residual(a, b, x, d) == 0, "local case");
  c.expect(cases == 81, "local case count");
  c.why << (c.ok ? "" : " ") << "(corpus edges, 50 random sites, 81 local cases)";
  return c;
}

Check foam_table() {
  Check c;
  c.expect(moduli_dim(make_psi(0), {Rational(0)}) == -1, "Psi0 at 0");
  c.expect(moduli_dim(make_psi(1), {Rational(1, 32)}) == 0, "Psi1 at 1/32");
  c.expect(moduli_dim(make_psi(2), {Rational(0)}) == 0, "Psi2 at 0");
  c.expect(moduli_dim(make_psi(3), {Rational(1, 32)}) == 0, "Psi3 at 1/32");
  for (int n = 0; n <= 8; ++n)
    for (int k = 0; k <= 64; ++k) {
      Rational kappa(k, 32);
      Rational s = 1 - Rational(n, 2);
      c.expect(moduli_dim(make_psi(static_cast<std::size_t>(n)), {kappa}) == 8 * kappa - s * s,
               "closed form n=" + std::to_string(n));
    }
  return c;
}

Check rewrite_engine() {
  Check c;
  for (int i = 0; i < 3; ++i) {
    auto L = [](int k) { return "L" + std::to_string(k % 3); };
    MapTerm t = MapTerm::compose(MapTerm::generator("Sigma", L(i + 1), L(i)),
                                 MapTerm::generator("Sigma", L(i + 2), L(i + 1)));
    c.expect(normalize(t).is_zero(), "Sigma composite i=" + std::to_string(i));
  }
  struct Row {
    Summand s;
    Locus l;
    FaceClass f;
    bool zero;
  };
  const Row table[] = {
      {Summand::Psi2, Locus::Tetra, FaceClass::None, false},
      {Summand::Psi3, Locus::Tetra, FaceClass::None, true},
      {Summand::Psi2, Locus::Seam, FaceClass::None, false},
      {Summand::Psi1, Locus::Seam, FaceClass::None, true},
      {Summand::Psi3, Locus::Seam, FaceClass::None, true},
      {Summand::Psi0, Locus::Face, FaceClass::None, false},
      {Summand::Psi1, Locus::Face, FaceClass::None, true},
      {Summand::Psi2, Locus::Face, FaceClass::None, true},
      {Summand::Psi3, Locus::Face, FaceClass::None, true},
      {Summand::Psi2Minus, Locus::Face, FaceClass::RFace, false},
      {Summand::Psi2Minus, Locus::Face, FaceClass::DiskFace, true},
      {Summand::DoubleMobius, Locus::Face, FaceClass::Dplus, false},
      {Summand::DoubleMobius, Locus::Face, FaceClass::Mobius, false},
      {Summand::DoubleMobius, Locus::Face, FaceClass::Dminus, true},
  };
  MapTerm base = MapTerm::generator("f", "K0", "K1");
  for (const auto& r : table) {
    MapTerm t = base.decorated(make_decoration(r.s, r.l, r.f));
    MapTerm n = normalize(t);
    c.expect(r.zero ? n.is_zero() : n == base, "rule table: " + to_string(t));
  }
  websk::testing::TermGenerator gen(websk::testing::seed() + 2);
  for (int i = 0; i < 500; ++i) {
    MapTerm t = gen.next(8);
    auto n = normalize_traced(t);
    c.expect(n.steps.size() <= t.decoration_count() + t.atoms().size() + 2, "too many steps: " + to_string(t));
    c.expect(normalize(n.term) == n.term, "not idempotent: " + to_string(t));
  }
  c.why << (c.ok ? "" : " ") << "(3 Sigma composites, 14 rule cases, 500 random terms)";
  return c;
}

Check octahedron() {
  Check c;
  RelationSet rels = parse_relations(websk::testing::read_data("octahedron.rels"));
  auto report = octahedron_suite(rels);
  c.expect(report.missing.empty(), "relation file incomplete");
  c.expect(report.checks.size() == 6, "expected 6 checks");
  for (const auto& k : report.checks)
    c.expect(k.verdict == Verdict::Joined, k.name + ": " + std::string(to_string(k.verdict)));
  return c;
}

Check triangle_solver() {
  Check c;
  auto s = solve_triangle(2, 3, 3);
  c.expect(s.feasible && s.ranks[0] == 1 && s.ranks[1] == 2 && s.ranks[2] == 1, "(2,3,3)");
  c.expect(!solve_triangle(1, 0, 0).feasible, "(1,0,0) accepted");
  RelationSet rels = parse_relations(websk::testing::read_data("octahedron.rels"));
  auto e = euler_consistency(rels);
  c.expect(e.consistent(), "2 rank a - 2 rank b differs from the Euler characteristic");
  std::mt19937_64 rng(websk::testing::seed() + 3);
  std::uniform_int_distribution<int> d(0, 40);
  int instances = 0;
  while (instances < 200) {
    Integer rb = d(rng), rt = d(rng), rq = d(rng), rr = d(rng), rs = d(rng);
    Integer k2 = rq + rb;
    Integer ra = k2 - rr;
    if (ra < 0) continue;
    std::map<std::string, Integer> v{{"|K2|", k2}, {"|K1|", rb + rt}, {"|L0|", rt + rq},
                                     {"|L1|", rr + rs}, {"|K0|", rs + ra}};
    c.expect(e.rank_a.rhs.evaluate(v) == 2 * ra && e.rank_b.rhs.evaluate(v) == 2 * rb,
             "two-rank identity on a random instance");
    c.expect(euler_4periodic(v["|K0|"], v["|K1|"], v["|L0|"], v["|L1|"]) == euler_from_single_ranks(ra, rb),
             "Euler characteristic on a random instance");
    ++instances;
  }
  c.why << (c.ok ? "" : " ") << "(200 random instances)";
  return c;
}

Check dodecahedron_workflow() {
  Check c;
  auto t0 = Clock::now();
  auto w = run_dodecahedron_workflow(corpus("dodecahedron"), 5);
  Report r = dodecahedron_report(w);
  double dt = seconds_since(t0);
  c.expect(r["upper_bound"] == "70", "upper bound " + r["upper_bound"].dump());
  c.expect(r["euler_bound"] == "10", "Euler bound " + r["euler_bound"].dump());
  c.expect(r["lower_bound"] == 58, "lower bound " + r["lower_bound"].dump());
  c.expect(r["morse_bott_count"] == "68", "Morse-Bott count " + r["morse_bott_count"].dump());
  c.expect(w.l0 == 60, "tau(L0) = " + w.l0.str());
  c.expect(w.simple_sum() == 60, "tau(K1) + tau(L1) - tau(K0) = " + w.simple_sum().str());
  c.expect(w.tutte_residual() == 0, "residual " + w.tutte_residual().str());
  c.expect(dt < 10.0, "took " + std::to_string(dt) + " s");
  c.why << (c.ok ? "" : " ") << "(" << dt << " s)";
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"1 tait counts", tait_counts},
      {"2 dp matches brute force", oracle_equivalence},
      {"3 tutte relation", tutte_relation},
      {"4 foam dimension table", foam_table},
      {"5 rewrite engine", rewrite_engine},
      {"6 octahedron suite", octahedron},
      {"7 triangle solver", triangle_solver},
      {"8 dodecahedron workflow", dodecahedron_workflow},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.ok = false;
      c.why << "exception: " << e.what();
    }
    std::printf("%s  %s  %s\n", c.ok ? "PASS" : "FAIL", name, c.why.str().c_str());
    failed += !c.ok;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
