#ifndef WEBSK_REPORT_HPP
#define WEBSK_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "websk/cobmap.hpp"
#include "websk/exactness.hpp"
#include "websk/foam.hpp"
#include "websk/tait.hpp"
#include "websk/web.hpp"

namespace websk {

// Reports are nlohmann::json objects; the default object type keeps keys
// sorted, so dumps are byte-identical for identical inputs.
using Report = nlohmann::json;

inline Report tait_report(const Web& web, bool brute, std::size_t state_cap = kDefaultStateCap) {
  TaitCount n = brute ? tait_brute(web) : tait_count(web, state_cap);
  return {{"command", "tait"},
          {"count", n.str()},
          {"algorithm", brute ? "brute" : "dp"},
          {"components", components(web).size()}};
}

inline Report tutte_report(const Web& web, const std::string& edge, std::size_t state_cap = kDefaultStateCap) {
  auto check = verify_tutte(web, edge, state_cap);
  return {{"command", "tutte"},
          {"edge", edge},
          {"tau", {{"K0", check.k0.str()}, {"K1", check.k1.str()}, {"L0", check.l0.str()}, {"L1", check.l1.str()}}},
          {"residual", check.residual().str()}};
}

inline Report foam_report(const Foam& f, const Rational& kappa) {
  return {{"command", "foam"},
          {"foam", f.tag},
          {"euler_char", f.euler_char.str()},
          {"self_intersection", to_string(f.self_int)},
          {"tetrahedral_points", f.tetra_points.str()},
          {"kappa", to_string(kappa)},
          {"dimension", to_string(moduli_dim(f, Action{kappa}))}};
}

inline Report triangle_report(const Integer& a, const Integer& b, const Integer& c) {
  auto sol = solve_triangle(a, b, c);
  Report r{{"command", "triangle solve"},
           {"dims", {a.str(), b.str(), c.str()}},
           {"feasible", sol.feasible}};
  if (sol.feasible) {
    r["ranks"] = {{"f", sol.ranks[0].str()}, {"g", sol.ranks[1].str()}, {"h", sol.ranks[2].str()}};
    ConstraintSystem sys;
    sys.add_exact_triangle("T", {"A", "B", "C"}, {"f", "g", "h"});
    std::vector<std::string> ids;
    for (auto m : {"f", "g", "h"}) ids.push_back(to_string(sys.derive_two_rank("T", m)));
    r["identities"] = ids;
  } else {
    r["reason"] = sol.reason;
  }
  return r;
}

inline Report rewrite_report(const MapTerm& term, const RelationSet* rels, const std::optional<MapTerm>& other) {
  auto norm = normalize_traced(term);
  Report r{{"command", "rewrite"},
           {"input", to_string(term)},
           {"normal_form", to_string(norm.term)},
           {"steps", norm.steps}};
  if (other) {
    RelationSet empty;
    auto res = equal(term, *other, rels ? *rels : empty);
    r["compare_with"] = to_string(*other);
    r["verdict"] = std::string(to_string(res.verdict));
    std::vector<std::string> deriv = res.left_derivation;
    for (const auto& s : res.right_derivation) deriv.push_back("(rhs) " + s);
    r["derivation"] = deriv;
  }
  return r;
}

inline Report octahedron_report(const RelationSet& rels) {
  auto suite = octahedron_suite(rels);
  Report checks = Report::array();
  for (const auto& c : suite.checks) {
    Report item{{"name", c.name},
                {"lhs", c.lhs},
                {"rhs", c.rhs},
                {"verdict", std::string(to_string(c.verdict))},
                {"derivation", c.derivation}};
    if (!c.note.empty()) item["note"] = c.note;
    checks.push_back(std::move(item));
  }
  auto euler = euler_consistency(rels);
  Report r{{"command", "octahedron"},
           {"missing", suite.missing},
           {"checks", checks},
           {"complex", suite.complex},
           {"all_derived", suite.all_derived()},
           {"euler_consistency",
            {{"derivable", euler.derivable},
             {"consistent", euler.consistent()},
             {"euler", to_string(euler.euler)}}}};
  if (euler.derivable) {
    r["euler_consistency"]["two_rank_a"] = to_string(euler.rank_a);
    r["euler_consistency"]["two_rank_b"] = to_string(euler.rank_b);
    r["euler_consistency"]["difference"] = to_string(euler.difference);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dodecahedron workflow

struct DodecahedronWorkflow {
  std::string edge;
  TaitCount k0, k1, l0, l1;
  Integer rank_a_kappa;
  BoundResult upper;
  Integer euler_bound;
  Integer morse_bott;

  TaitCount tutte_residual() const { return k0 - k1 + l0 - l1; }
  TaitCount simple_sum() const { return k1 + l1 - k0; }
};

// Excises one edge of the dodecahedron, counts the four pictures, and
// combines the simple-web counts with the supplied rank(a∘κ).
inline DodecahedronWorkflow run_dodecahedron_workflow(const Web& web, const Integer& rank_a_kappa,
                                                      std::optional<std::string> edge = std::nullopt,
                                                      std::size_t state_cap = kDefaultStateCap) {
  if (web.edges().empty()) throw InputError("web has no edges");
  DodecahedronWorkflow w;
  w.edge = edge ? *edge : web.edges().front().id;
  auto check = verify_tutte(web, w.edge, state_cap);
  w.k0 = check.k0;
  w.k1 = check.k1;
  w.l0 = check.l0;
  w.l1 = check.l1;
  w.rank_a_kappa = rank_a_kappa;
  w.upper = dodecahedron_bound(w.k0, w.k1, w.l1, rank_a_kappa);
  w.euler_bound = euler_from_ranks(rank_a_kappa, 0);
  std::vector<CriticalManifold> rep(10, CriticalManifold::Flag);
  rep.push_back(CriticalManifold::SO3);
  rep.push_back(CriticalManifold::SO3);
  w.morse_bott = morse_bott_count(rep);
  return w;
}

inline Report dodecahedron_report(const DodecahedronWorkflow& w) {
  std::vector<std::string> warnings{
      "assumed_simple: dim J# = tau is assumed for K0, K1, L1 (not checked)",
      "rank(a o kappa) is an external input",
      "lower bound 58 is a cited constant, not recomputed",
  };
  if (!w.upper.feasible()) warnings.push_back("infeasible: negative upper bound");
  return {{"command", "bound dodecahedron"},
          {"edge", w.edge},
          {"assumed_simple", true},
          {"inputs", {{"rank_a_kappa", w.rank_a_kappa.str()}}},
          {"tau", {{"K0", w.k0.str()}, {"K1", w.k1.str()}, {"L0", w.l0.str()}, {"L1", w.l1.str()}}},
          {"tutte_residual", w.tutte_residual().str()},
          {"simple_sum", w.simple_sum().str()},
          {"upper_bound", w.upper.upper.str()},
          {"euler_bound", w.euler_bound.str()},
          {"lower_bound", kDodecahedronLowerBound},
          {"morse_bott_count", w.morse_bott.str()},
          {"feasible", w.upper.feasible()},
          {"warnings", warnings}};
}

}  // namespace websk

#endif  // WEBSK_REPORT_HPP
