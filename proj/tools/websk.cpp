#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "websk/report.hpp"
#include "websk/websk.hpp"

#ifndef WEBSK_DATA_DIR
#define WEBSK_DATA_DIR "data"
#endif

namespace {

using namespace websk;

enum ExitCode { kOk = 0, kVerificationFailed = 1, kInputError = 2, kResourceError = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("WEBSK_DATA_DIR")) return env;
  return WEBSK_DATA_DIR;
}

// Files named on the command line are tried as given, then in the data dir.
std::string resolve(const std::string& path) {
  if (std::filesystem::exists(path)) return path;
  auto alt = data_dir() / path;
  if (std::filesystem::exists(alt)) return alt.string();
  return path;
}

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t state_cap = kDefaultStateCap;
};

void emit(const Globals& g, const Report& r, const std::string& text) {
  if (g.json) std::cout << r.dump(2) << '\n';
  else std::cout << text;
}

int run_tait(const Globals& g, const std::string& file, bool brute) {
  Web web = parse_web(read_file(resolve(file)));
  auto r = tait_report(web, brute, g.state_cap);
  emit(g, r, r["count"].get<std::string>() + "\n");
  return kOk;
}

int run_tutte(const Globals& g, const std::string& file, std::vector<std::string> edges, bool all,
              std::size_t random_sites) {
  Web web = parse_web(read_file(resolve(file)));
  std::vector<std::string> candidates;
  for (const auto& e : web.edges())
    if (!e.is_self_loop()) candidates.push_back(e.id);
  if (all) edges = candidates;
  if (random_sites > 0) {
    if (candidates.empty()) throw InputError("web has no edge joining two distinct vertices");
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (std::size_t i = 0; i < random_sites; ++i) edges.push_back(candidates[pick(rng)]);
  }
  if (edges.empty()) throw InputError("choose a site with --edge, --all or --random-sites");

  Report all_reports = Report::array();
  std::string text;
  bool ok = true;
  for (const auto& e : edges) {
    auto r = tutte_report(web, e, g.state_cap);
    ok = ok && r["residual"] == "0";
    text += "edge " + e + ": tau(K0)=" + r["tau"]["K0"].get<std::string>() +
            " tau(K1)=" + r["tau"]["K1"].get<std::string>() + " tau(L0)=" + r["tau"]["L0"].get<std::string>() +
            " tau(L1)=" + r["tau"]["L1"].get<std::string>() + " residual " + r["residual"].get<std::string>() + "\n";
    all_reports.push_back(std::move(r));
  }
  emit(g, edges.size() == 1 ? all_reports[0] : all_reports, text);
  return ok ? kOk : kVerificationFailed;
}

int run_skein(const Globals& g, const std::string& file, const std::string& edge, const std::string& picture) {
  auto p = picture_from_string(picture);
  if (!p) throw InputError("unknown picture '" + picture + "' (K0, K1, K2abstract, L0, L1)");
  std::string text = read_file(resolve(file));
  std::optional<SkeinSite> site;
  if (edge.empty()) site = parse_site(text);
  else site = excise_edge_site(parse_web(text), edge);
  Web out = apply_picture(*site, *p);
  Report r{{"command", "skein"},
           {"picture", std::string(to_string(*p))},
           {"site", print_site(*site)},
           {"web", print_web(out)},
           {"tait", tait_count(out, g.state_cap).str()}};
  emit(g, r, print_web(out));
  return kOk;
}

int run_foam(const Globals& g, const std::string& family, const std::string& n_text, const std::string& kappa_text) {
  Rational kappa = parse_rational(kappa_text);
  if (kappa < 0) throw InputError("the action must be nonnegative");
  Foam f;
  if (family == "psi") {
    Integer n = parse_integer(n_text);
    if (n < 0) throw InputError("n must be nonnegative");
    f = make_psi(static_cast<std::size_t>(n));
  } else if (family == "psi2minus") {
    f = make_psi2_minus();
  } else {
    throw InputError("unknown foam family '" + family + "' (psi, psi2minus)");
  }
  auto r = foam_report(f, kappa);
  std::string text = f.tag + ": chi=" + r["euler_char"].get<std::string>() +
                     " self-intersection=" + r["self_intersection"].get<std::string>() +
                     " tetrahedral points=" + r["tetrahedral_points"].get<std::string>() +
                     " kappa=" + r["kappa"].get<std::string>() + " dim=" + r["dimension"].get<std::string>() + "\n";
  emit(g, r, text);
  return kOk;
}

int run_rewrite(const Globals& g, const std::string& file, const std::string& rels_file,
                const std::string& other_text) {
  std::optional<RelationSet> rels;
  if (!rels_file.empty()) rels = parse_relations(read_file(resolve(rels_file)));
  const RelationSet* symbols = rels ? &*rels : nullptr;
  MapTerm term = parse_term(read_file(resolve(file)), symbols);
  std::optional<MapTerm> other;
  if (!other_text.empty()) other = parse_term(other_text, symbols);
  auto r = rewrite_report(term, symbols, other);
  std::string text;
  for (const auto& s : r["steps"]) text += "  " + s.get<std::string>() + "\n";
  text += r["normal_form"].get<std::string>() + "\n";
  int code = kOk;
  if (other) {
    for (const auto& s : r["derivation"]) text += "  " + s.get<std::string>() + "\n";
    text += r["verdict"].get<std::string>() + "\n";
    if (r["verdict"] != "equal") code = kVerificationFailed;
  }
  emit(g, r, text);
  return code;
}

int run_triangle(const Globals& g, const std::string& dims) {
  std::vector<Integer> d;
  std::stringstream ss(dims);
  std::string part;
  while (std::getline(ss, part, ',')) d.push_back(parse_integer(part));
  if (d.size() != 3) throw InputError("--dims expects three comma-separated integers");
  auto r = triangle_report(d[0], d[1], d[2]);
  std::string text;
  if (r["feasible"]) {
    text = "rank f=" + r["ranks"]["f"].get<std::string>() + " rank g=" + r["ranks"]["g"].get<std::string>() +
           " rank h=" + r["ranks"]["h"].get<std::string>() + "\n";
    for (const auto& s : r["identities"]) text += "  " + s.get<std::string>() + "\n";
  } else {
    text = "infeasible: " + r["reason"].get<std::string>() + "\n";
  }
  emit(g, r, text);
  return r["feasible"] ? kOk : kVerificationFailed;
}

int run_bound(const Globals& g, const std::string& target, const std::string& rank_text, const std::string& file,
              const std::string& edge) {
  if (target != "dodecahedron") throw InputError("unknown bound target '" + target + "'");
  Integer rank = parse_integer(rank_text);
  if (rank < 0) throw InputError("--rank-ak must be nonnegative");
  Web web = parse_web(read_file(resolve(file)));
  auto w = run_dodecahedron_workflow(web, rank, edge.empty() ? std::nullopt : std::optional<std::string>(edge),
                                     g.state_cap);
  auto r = dodecahedron_report(w);
  std::ostringstream text;
  text << "site edge " << w.edge << ": tau(K0)=" << w.k0 << " tau(K1)=" << w.k1 << " tau(L0)=" << w.l0
       << " tau(L1)=" << w.l1 << "\n"
       << "Tutte residual " << w.tutte_residual() << "; tau(K1)+tau(L1)-tau(K0) = " << w.simple_sum() << "\n"
       << "Euler characteristic <= " << w.euler_bound << " (rank(a o kappa) = " << rank << ")\n"
       << "upper bound " << w.upper.upper << "\n"
       << "lower bound " << kDodecahedronLowerBound << " (cited)\n"
       << "Morse-Bott count " << w.morse_bott << " (10 x FLAG + 2 x SO3)\n"
       << "assumed_simple: K0, K1, L1\n";
  emit(g, r, text.str());
  bool ok = w.upper.feasible() && w.tutte_residual() == 0;
  return ok ? kOk : kVerificationFailed;
}

int run_octahedron(const Globals& g, const std::string& rels_file) {
  auto rels = parse_relations(read_file(resolve(rels_file)));
  auto r = octahedron_report(rels);
  std::string text;
  for (const auto& m : r["missing"]) text += "missing: " + m.get<std::string>() + "\n";
  for (const auto& c : r["checks"]) {
    text += c["name"].get<std::string>() + ": " + c["lhs"].get<std::string>() + " = " + c["rhs"].get<std::string>() +
            "  [" + c["verdict"].get<std::string>() + "]\n";
    for (const auto& s : c["derivation"]) text += "    " + s.get<std::string>() + "\n";
  }
  if (!r["complex"].empty()) {
    text += "4-periodic complex:";
    for (const auto& s : r["complex"]) text += "  " + s.get<std::string>();
    text += "\n";
  }
  text += std::string("Euler consistency: ") + (r["euler_consistency"]["consistent"] ? "yes" : "no") + "\n";
  emit(g, r, text);
  return r["all_derived"] ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"websk: Tait counts, skein sites, foam dimensions and exact-triangle bookkeeping for webs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Print a JSON report");
  app.add_option("--seed", g.seed, "Seed for randomized site selection");
  app.add_option("--state-cap", g.state_cap, "Maximum number of Tait DP states");

  std::string file;
  std::string edge;
  std::string picture;
  std::string rels_file;
  std::string other;
  bool brute = false;
  bool all = false;
  std::size_t random_sites = 0;
  std::vector<std::string> edges;

  auto* tait = app.add_subcommand("tait", "Count Tait colorings of a web");
  tait->add_option("file", file, "Web file")->required();
  tait->add_flag("--brute", brute, "Use exhaustive enumeration (at most 18 edges)");

  auto* tutte = app.add_subcommand("tutte", "Check the Tutte relation at skein sites");
  tutte->add_option("file", file, "Web file")->required();
  tutte->add_option("--edge", edges, "Edge to excise (repeatable)");
  tutte->add_flag("--all", all, "Check every non-loop edge");
  tutte->add_option("--random-sites", random_sites, "Check this many random edges (see --seed)");

  auto* skein = app.add_subcommand("skein", "Glue a local picture into a skein site");
  skein->add_option("file", file, "Web file (with --edge) or site file")->required();
  skein->add_option("--edge", edge, "Edge to excise");
  skein->add_option("--picture", picture, "K0, K1, K2abstract, L0 or L1")->required();

  std::string family;
  std::string n_text = "0";
  std::string kappa = "0";
  auto* foam = app.add_subcommand("foam", "Invariants and moduli dimension of closed foams in S^4");
  foam->add_option("family", family, "psi or psi2minus")->required();
  foam->add_option("n", n_text, "Number of disks for psi");
  foam->add_option("--kappa", kappa, "Action as p/q");

  auto* rewrite = app.add_subcommand("rewrite", "Normalize a cobordism-map term");
  rewrite->add_option("file", file, "Term file")->required();
  rewrite->add_option("--rels", rels_file, "Relation file");
  rewrite->add_option("--equal", other, "Also decide equality with this term");

  std::string action;
  std::string dims;
  auto* triangle = app.add_subcommand("triangle", "Solve rank-nullity for an exact triangle");
  triangle->add_option("action", action, "solve")->required()->check(CLI::IsMember({"solve"}));
  triangle->add_option("--dims", dims, "Dimensions A,B,C")->required();

  std::string target;
  std::string rank_ak;
  std::string web_file = "dodecahedron.web";
  auto* bound = app.add_subcommand("bound", "Dimension bounds from the 4-periodic complex");
  bound->add_option("target", target, "dodecahedron")->required();
  bound->add_option("--rank-ak", rank_ak, "rank of a o kappa")->required();
  bound->add_option("--web", web_file, "Web to use (default: shipped dodecahedron)");
  bound->add_option("--edge", edge, "Site edge (default: first edge)");

  std::string oct_rels = "octahedron.rels";
  auto* octahedron = app.add_subcommand("octahedron", "Verify the octahedral relations symbolically");
  octahedron->add_option("--rels", oct_rels, "Relation file (default: shipped)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*tait) return run_tait(g, file, brute);
    if (*tutte) return run_tutte(g, file, edges, all, random_sites);
    if (*skein) return run_skein(g, file, edge, picture);
    if (*foam) return run_foam(g, family, n_text, kappa);
    if (*rewrite) return run_rewrite(g, file, rels_file, other);
    if (*triangle) return run_triangle(g, dims);
    if (*bound) return run_bound(g, target, rank_ak, web_file, edge);
    if (*octahedron) return run_octahedron(g, oct_rels);
  } catch (const ResourceError& e) {
    std::cerr << "websk: resource limit: " << e.what() << '\n';
    return kResourceError;
  } catch (const InputError& e) {
    std::cerr << "websk: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "websk: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
