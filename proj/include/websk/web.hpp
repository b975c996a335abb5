#ifndef WEBSK_WEB_HPP
#define WEBSK_WEB_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "websk/error.hpp"

namespace websk {

// Endpoint marker for a dangling half-edge. Only legal inside skein sites.
inline constexpr std::string_view kStub = "-";

// Orders identifiers so that embedded digit runs compare numerically
// ("e2" < "e10"). Ties fall back to plain lexicographic order.
inline bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::string_view ra = a.substr(i, ie - i);
      std::string_view rb = b.substr(j, je - j);
      while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
      while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
      if (ra.size() != rb.size()) return ra.size() < rb.size();
      if (ra != rb) return ra < rb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if (a.size() - i != b.size() - j) return a.size() - i < b.size() - j;
  return a < b;
}

struct NaturalLess {
  bool operator()(std::string_view a, std::string_view b) const { return natural_less(a, b); }
};

struct Edge {
  std::string id;
  std::string a;  // vertex id, or kStub
  std::string b;

  bool is_self_loop() const { return a == b && a != kStub; }
  bool has_stub() const { return a == kStub || b == kStub; }
  const std::string& end(int which) const { return which == 0 ? a : b; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A trivalent multigraph plus vertexless circle components. Vertices and
// edges are kept sorted by natural id order, so equal inputs give equal
// values regardless of declaration order.
class Web {
 public:
  Web() = default;

  Web(std::vector<std::string> vertices, std::vector<Edge> edges, std::size_t free_loops = 0)
      : vertices_(std::move(vertices)), edges_(std::move(edges)), free_loops_(free_loops) {
    std::sort(vertices_.begin(), vertices_.end(), NaturalLess{});
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return natural_less(x.id, y.id); });
    validate();
  }

  static Web circles(std::size_t count) { return Web({}, {}, count); }

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t free_loops() const { return free_loops_; }

  std::size_t stub_count() const {
    std::size_t n = 0;
    for (const auto& e : edges_) n += (e.a == kStub) + (e.b == kStub);
    return n;
  }
  bool closed() const { return stub_count() == 0; }

  bool has_vertex(std::string_view id) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), id, NaturalLess{});
  }

  std::optional<std::size_t> edge_index(std::string_view id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, std::string_view key) { return natural_less(e.id, key); });
    if (it == edges_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  const Edge& edge(std::string_view id) const {
    auto idx = edge_index(id);
    if (!idx) throw ValidationError(std::string(id), "unknown edge '" + std::string(id) + "'");
    return edges_[*idx];
  }

  friend bool operator==(const Web&, const Web&) = default;

 private:
  void validate() const {
    std::map<std::string, int, NaturalLess> degree;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      const auto& v = vertices_[i];
      if (v.empty() || v == kStub) throw ValidationError(v, "invalid vertex id '" + v + "'");
      if (i > 0 && vertices_[i - 1] == v) throw ValidationError(v, "duplicate vertex id '" + v + "'");
      degree[v] = 0;
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.id.empty() || e.id == kStub) throw ValidationError(e.id, "invalid edge id '" + e.id + "'");
      if (i > 0 && edges_[i - 1].id == e.id) throw ValidationError(e.id, "duplicate edge id '" + e.id + "'");
      for (const auto* end : {&e.a, &e.b}) {
        if (*end == kStub) continue;
        auto it = degree.find(*end);
        if (it == degree.end())
          throw ValidationError(*end, "edge '" + e.id + "' references unknown vertex '" + *end + "'");
        ++it->second;
      }
    }
    for (const auto& [v, d] : degree) {
      if (d != 3)
        throw ValidationError(v, "vertex '" + v + "' has " + std::to_string(d) +
                                     " incident half-edges, expected 3");
    }
  }

  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::size_t free_loops_ = 0;
};

// Index-based view used by the counting and analysis algorithms.
struct IndexedWeb {
  struct HalfEdge {
    std::size_t edge;
    int end;  // 0 or 1
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::size_t vertex_count = 0;
  std::vector<std::array<std::size_t, 2>> ends;      // kNone marks a stub
  std::vector<std::vector<HalfEdge>> incidence;      // per vertex, ascending edge order
};

inline IndexedWeb index_web(const Web& web) {
  IndexedWeb g;
  g.vertex_count = web.vertices().size();
  std::unordered_map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < web.vertices().size(); ++i) at.emplace(web.vertices()[i], i);
  g.incidence.resize(g.vertex_count);
  for (std::size_t k = 0; k < web.edges().size(); ++k) {
    const auto& e = web.edges()[k];
    std::array<std::size_t, 2> ends{IndexedWeb::kNone, IndexedWeb::kNone};
    for (int s = 0; s < 2; ++s) {
      if (e.end(s) == kStub) continue;
      ends[s] = at.at(e.end(s));
      g.incidence[ends[s]].push_back({k, s});
    }
    g.ends.push_back(ends);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Text format

struct ParsedLabel {
  std::string label;
  std::string edge;
  int end;
  std::size_t line;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({std::string(line.substr(i, j - i)), i + 1});
    i = j;
  }
  return out;
}

struct RawDocument {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
  std::size_t free_loops = 0;
  std::vector<ParsedLabel> labels;
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> vertex_ref_pos;
};

inline RawDocument parse_document(std::string_view text, bool allow_stubs) {
  RawDocument doc;
  std::set<std::string> vertex_ids;
  std::set<std::string> edge_ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = nl + 1;

    auto tok = split_line(line);
    if (tok.empty()) continue;
    const auto& kw = tok[0].text;
    auto expect = [&](std::size_t n) {
      if (tok.size() != n) {
        std::size_t col = tok.size() > n ? tok[n].column : line.size() + 1;
        throw ParseError(line_no, col,
                         "'" + kw + "' expects " + std::to_string(n - 1) + " argument(s), got " +
                             std::to_string(tok.size() - 1));
      }
    };
    if (kw == "v") {
      expect(2);
      const auto& id = tok[1].text;
      if (id == kStub) throw ParseError(line_no, tok[1].column, "'-' is not a vertex id");
      if (!vertex_ids.insert(id).second)
        throw ParseError(line_no, tok[1].column, "duplicate vertex id '" + id + "'");
      doc.vertices.push_back(id);
    } else if (kw == "e") {
      expect(4);
      const auto& id = tok[1].text;
      if (id == kStub) throw ParseError(line_no, tok[1].column, "'-' is not an edge id");
      if (!edge_ids.insert(id).second)
        throw ParseError(line_no, tok[1].column, "duplicate edge id '" + id + "'");
      for (int s = 2; s <= 3; ++s) {
        if (tok[s].text == kStub) {
          if (!allow_stubs)
            throw ParseError(line_no, tok[s].column, "stub endpoint '-' is only allowed in site files");
        } else {
          doc.vertex_ref_pos.emplace(tok[s].text, std::make_pair(line_no, tok[s].column));
        }
      }
      doc.edges.push_back({id, tok[2].text, tok[3].text});
    } else if (kw == "loop") {
      expect(2);
      std::size_t n = 0;
      const auto& s = tok[1].text;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
      if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError(line_no, tok[1].column, "expected a nonnegative integer loop count");
      doc.free_loops += n;
    } else if (kw == "label") {
      if (!allow_stubs) throw ParseError(line_no, tok[0].column, "'label' is only allowed in site files");
      expect(4);
      int end = tok[3].text == "a" ? 0 : tok[3].text == "b" ? 1 : -1;
      if (end < 0) throw ParseError(line_no, tok[3].column, "stub end must be 'a' or 'b'");
      doc.labels.push_back({tok[1].text, tok[2].text, end, line_no});
    } else {
      throw ParseError(line_no, tok[0].column, "unknown directive '" + kw + "'");
    }
  }
  for (const auto& [ref, where] : doc.vertex_ref_pos) {
    if (!vertex_ids.count(ref))
      throw ParseError(where.first, where.second, "reference to undeclared vertex '" + ref + "'");
  }
  return doc;
}

}  // namespace detail

// Parses a closed web. Syntax problems raise ParseError with line/column;
// structural ones (trivalence) raise ValidationError naming the vertex.
inline Web parse_web(std::string_view text) {
  auto doc = detail::parse_document(text, false);
  return Web(std::move(doc.vertices), std::move(doc.edges), doc.free_loops);
}

inline std::string print_web(const Web& web) {
  std::ostringstream out;
  for (const auto& v : web.vertices()) out << "v " << v << '\n';
  for (const auto& e : web.edges()) out << "e " << e.id << ' ' << e.a << ' ' << e.b << '\n';
  if (web.free_loops() > 0) out << "loop " << web.free_loops() << '\n';
  return out.str();
}

inline Web disjoint_union(const Web& a, const Web& b) {
  std::set<std::string> used;
  for (const auto& v : a.vertices()) used.insert(v);
  for (const auto& e : a.edges()) used.insert(e.id);
  std::string prefix;
  auto clashes = [&](const std::string& p) {
    for (const auto& v : b.vertices())
      if (used.count(p + v)) return true;
    for (const auto& e : b.edges())
      if (used.count(p + e.id)) return true;
    return false;
  };
  while (clashes(prefix)) prefix += "r_";
  auto rename = [&](const std::string& id) { return id == kStub ? id : prefix + id; };

  std::vector<std::string> vertices = a.vertices();
  std::vector<Edge> edges = a.edges();
  for (const auto& v : b.vertices()) vertices.push_back(prefix + v);
  for (const auto& e : b.edges()) edges.push_back({prefix + e.id, rename(e.a), rename(e.b)});
  return Web(std::move(vertices), std::move(edges), a.free_loops() + b.free_loops());
}

// ---------------------------------------------------------------------------
// Components and bridges

inline void require_closed(const Web& web, std::string_view op) {
  if (!web.closed()) throw ValidationError("", std::string(op) + " requires a closed web (no stubs)");
}

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Connected components, ordered by their smallest vertex; each free loop is
// its own one-circle component, listed last.
inline std::vector<Web> components(const Web& web) {
  require_closed(web, "components");
  const auto g = index_web(web);
  detail::DisjointSets sets(g.vertex_count);
  for (const auto& ends : g.ends) sets.unite(ends[0], ends[1]);

  std::map<std::size_t, std::pair<std::vector<std::string>, std::vector<Edge>>> groups;
  for (std::size_t v = 0; v < g.vertex_count; ++v) groups[sets.find(v)].first.push_back(web.vertices()[v]);
  for (std::size_t k = 0; k < g.ends.size(); ++k) groups[sets.find(g.ends[k][0])].second.push_back(web.edges()[k]);

  std::vector<Web> out;
  for (auto& [root, part] : groups) out.emplace_back(std::move(part.first), std::move(part.second), 0);
  for (std::size_t i = 0; i < web.free_loops(); ++i) out.push_back(Web::circles(1));
  return out;
}

struct BridgeReport {
  std::vector<std::string> bridges;          // non-loop cut edges
  std::vector<std::string> loops_at_vertex;  // self-loop edges
  bool has_bridge() const { return !bridges.empty(); }
};

// Low-link bridge finding on the multigraph. Parallel edges are told apart
// by edge index, so a doubled edge is never a bridge.
inline BridgeReport find_bridges(const Web& web) {
  require_closed(web, "has_bridge");
  const auto g = index_web(web);
  BridgeReport report;
  for (std::size_t k = 0; k < g.ends.size(); ++k)
    if (g.ends[k][0] == g.ends[k][1]) report.loops_at_vertex.push_back(web.edges()[k].id);

  constexpr std::size_t kUnseen = IndexedWeb::kNone;
  std::vector<std::size_t> order(g.vertex_count, kUnseen);
  std::vector<std::size_t> low(g.vertex_count, 0);
  std::vector<bool> is_bridge(g.ends.size(), false);
  std::size_t counter = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t via_edge;
    std::size_t next;
  };
  for (std::size_t root = 0; root < g.vertex_count; ++root) {
    if (order[root] != kUnseen) continue;
    std::vector<Frame> stack{{root, kUnseen, 0}};
    order[root] = low[root] = counter++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < g.incidence[f.vertex].size()) {
        auto he = g.incidence[f.vertex][f.next++];
        if (he.edge == f.via_edge) continue;
        const auto& ends = g.ends[he.edge];
        if (ends[0] == ends[1]) continue;
        std::size_t w = ends[1 - he.end];
        if (order[w] == kUnseen) {
          order[w] = low[w] = counter++;
          stack.push_back({w, he.edge, 0});
        } else {
          low[f.vertex] = std::min(low[f.vertex], order[w]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          auto& parent = stack.back();
          low[parent.vertex] = std::min(low[parent.vertex], low[done.vertex]);
          if (low[done.vertex] > order[parent.vertex]) is_bridge[done.via_edge] = true;
        }
      }
    }
  }
  for (std::size_t k = 0; k < g.ends.size(); ++k)
    if (is_bridge[k]) report.bridges.push_back(web.edges()[k].id);
  return report;
}

inline bool has_bridge(const Web& web) { return find_bridges(web).has_bridge(); }

// ---------------------------------------------------------------------------
// Skein sites

enum class StubLabel { NW = 0, NE = 1, SW = 2, SE = 3 };

inline constexpr std::array<StubLabel, 4> kStubLabels{StubLabel::NW, StubLabel::NE, StubLabel::SW,
                                                      StubLabel::SE};

inline std::string_view to_string(StubLabel l) {
  switch (l) {
    case StubLabel::NW: return "NW";
    case StubLabel::NE: return "NE";
    case StubLabel::SW: return "SW";
    case StubLabel::SE: return "SE";
  }
  return "?";
}

inline std::optional<StubLabel> stub_label_from_string(std::string_view s) {
  for (auto l : kStubLabels)
    if (to_string(l) == s) return l;
  return std::nullopt;
}

struct StubRef {
  std::string edge;
  int end;  // 0 = first endpoint, 1 = second
  friend bool operator==(const StubRef&, const StubRef&) = default;
};

// The four local pictures glued into a site. K2abstract is the crossing
// smoothing as a bare reconnection: the crossing sign is not represented.
enum class Picture { K0, K1, K2abstract, L0, L1 };

inline constexpr std::array<Picture, 5> kPictures{Picture::K0, Picture::K1, Picture::K2abstract, Picture::L0,
                                                  Picture::L1};

inline std::string_view to_string(Picture p) {
  switch (p) {
    case Picture::K0: return "K0";
    case Picture::K1: return "K1";
    case Picture::K2abstract: return "K2abstract";
    case Picture::L0: return "L0";
    case Picture::L1: return "L1";
  }
  return "?";
}

inline std::optional<Picture> picture_from_string(std::string_view s) {
  for (auto p : kPictures)
    if (to_string(p) == s) return p;
  if (s == "K2") return Picture::K2abstract;
  return std::nullopt;
}

// A web with exactly four labeled stubs: the outside of a ball whose
// boundary meets the web in four points.
class SkeinSite {
 public:
  struct Excised {
    std::string u, v, edge;
  };

  SkeinSite(Web host, std::array<StubRef, 4> labels, std::optional<Excised> excised = std::nullopt)
      : host_(std::move(host)), labels_(std::move(labels)), excised_(std::move(excised)) {
    if (host_.stub_count() != 4)
      throw ValidationError("", "a skein site needs exactly 4 stubs, found " + std::to_string(host_.stub_count()));
    for (std::size_t i = 0; i < 4; ++i) {
      const auto& ref = labels_[i];
      auto idx = host_.edge_index(ref.edge);
      if (!idx || host_.edges()[*idx].end(ref.end) != kStub)
        throw ValidationError(ref.edge, "label " + std::string(to_string(kStubLabels[i])) +
                                            " does not point at a stub");
      for (std::size_t j = 0; j < i; ++j)
        if (labels_[j] == ref) throw ValidationError(ref.edge, "stub labeled twice");
    }
  }

  const Web& host() const { return host_; }
  const StubRef& stub(StubLabel l) const { return labels_[static_cast<std::size_t>(l)]; }
  const std::array<StubRef, 4>& labels() const { return labels_; }
  const std::optional<Excised>& excised() const { return excised_; }

  // Same host with NW and NE exchanged.
  SkeinSite swapped_north() const {
    auto l = labels_;
    std::swap(l[0], l[1]);
    return SkeinSite(host_, l, excised_);
  }

 private:
  Web host_;
  std::array<StubRef, 4> labels_;
  std::optional<Excised> excised_;
};

// Removes edge e and its two endpoints. The half-edges that met u become
// NW, NE and those at v become SW, SE, each pair in ascending edge-id order
// (a self-loop contributes its 'a' end before its 'b' end).
inline SkeinSite excise_edge_site(const Web& web, std::string_view edge_id) {
  require_closed(web, "excise_edge_site");
  const Edge& target = web.edge(edge_id);
  if (target.is_self_loop())
    throw ValidationError(target.id, "edge '" + target.id + "' is a self-loop; a site needs two distinct ends");
  const std::string u = target.a;
  const std::string v = target.b;

  std::vector<Edge> edges;
  std::vector<StubRef> at_u;
  std::vector<StubRef> at_v;
  for (const auto& e : web.edges()) {
    if (e.id == target.id) continue;
    Edge copy = e;
    for (int s = 0; s < 2; ++s) {
      const auto& end = e.end(s);
      if (end == u) at_u.push_back({e.id, s});
      else if (end == v) at_v.push_back({e.id, s});
      else continue;
      (s == 0 ? copy.a : copy.b) = std::string(kStub);
    }
    edges.push_back(std::move(copy));
  }
  std::vector<std::string> vertices;
  for (const auto& x : web.vertices())
    if (x != u && x != v) vertices.push_back(x);

  Web host(std::move(vertices), std::move(edges), web.free_loops());
  std::array<StubRef, 4> labels{at_u[0], at_u[1], at_v[0], at_v[1]};
  return SkeinSite(std::move(host), std::move(labels), SkeinSite::Excised{u, v, target.id});
}

namespace detail {

inline std::string fresh_id(const std::set<std::string>& used, const std::string& preferred,
                            const std::string& stem) {
  if (!preferred.empty() && !used.count(preferred)) return preferred;
  for (std::size_t i = 0;; ++i) {
    std::string id = stem + std::to_string(i);
    if (!used.count(id)) return id;
  }
}

}  // namespace detail

// Glues a local picture into the site and suppresses the stubs. Chains of
// joined edges take the smallest id among their pieces; a chain that closes
// up without meeting a vertex becomes a free loop.
inline Web apply_picture(const SkeinSite& site, Picture picture) {
  const Web& host = site.host();
  const auto g = index_web(host);
  const std::size_t n = g.vertex_count;
  const std::size_t stub_base = n;        // 4 stub nodes
  const std::size_t new_base = n + 4;     // picture vertices for L0/L1
  auto label_node = [&](StubLabel l) { return stub_base + static_cast<std::size_t>(l); };

  struct Link {
    std::size_t x, y;
    std::optional<std::size_t> edge;  // host edge index; nullopt for connectors
  };
  std::vector<Link> links;
  for (std::size_t k = 0; k < g.ends.size(); ++k) {
    std::array<std::size_t, 2> ends = g.ends[k];
    for (int s = 0; s < 2; ++s) {
      if (ends[s] != IndexedWeb::kNone) continue;
      for (auto l : kStubLabels) {
        const auto& ref = site.stub(l);
        if (ref.edge == host.edges()[k].id && ref.end == s) ends[s] = label_node(l);
      }
    }
    links.push_back({ends[0], ends[1], k});
  }

  std::set<std::string> used;
  for (const auto& v : host.vertices()) used.insert(v);
  for (const auto& e : host.edges()) used.insert(e.id);
  std::vector<std::string> vertex_names = host.vertices();
  std::string bar_id;

  using L = StubLabel;
  auto join = [&](L p, L q) { links.push_back({label_node(p), label_node(q), std::nullopt}); };
  auto add_bar = [&](std::array<L, 2> top, std::array<L, 2> bottom) {
    const auto* ex = site.excised() ? &*site.excised() : nullptr;
    std::string u = detail::fresh_id(used, ex ? ex->u : "", "site_u");
    used.insert(u);
    std::string v = detail::fresh_id(used, ex ? ex->v : "", "site_v");
    used.insert(v);
    bar_id = detail::fresh_id(used, ex ? ex->edge : "", "site_e");
    used.insert(bar_id);
    vertex_names.push_back(u);
    vertex_names.push_back(v);
    for (auto l : top) links.push_back({label_node(l), new_base, std::nullopt});
    for (auto l : bottom) links.push_back({label_node(l), new_base + 1, std::nullopt});
  };
  switch (picture) {
    case Picture::K0: join(L::NW, L::NE); join(L::SW, L::SE); break;
    case Picture::K1: join(L::NW, L::SW); join(L::NE, L::SE); break;
    case Picture::K2abstract: join(L::NW, L::SE); join(L::NE, L::SW); break;
    case Picture::L0: add_bar({L::NW, L::NE}, {L::SW, L::SE}); break;
    case Picture::L1: add_bar({L::NW, L::SW}, {L::NE, L::SE}); break;
  }
  const bool has_bar = !bar_id.empty();
  auto is_real = [&](std::size_t node) { return node < n || node >= new_base; };
  auto name_of = [&](std::size_t node) { return node < n ? vertex_names[node] : vertex_names[n + (node - new_base)]; };

  std::vector<std::vector<std::size_t>> stub_links(4);
  for (std::size_t i = 0; i < links.size(); ++i)
    for (auto node : {links[i].x, links[i].y})
      if (!is_real(node)) stub_links[node - stub_base].push_back(i);

  std::vector<bool> visited(links.size(), false);
  std::vector<Edge> edges;
  auto other = [](const Link& l, std::size_t node) { return l.x == node ? l.y : l.x; };
  auto next_link = [&](std::size_t stub_node, std::size_t came_from) {
    const auto& ls = stub_links[stub_node - stub_base];
    return ls[0] == came_from ? ls[1] : ls[0];
  };

  for (std::size_t i = 0; i < links.size(); ++i) {
    if (visited[i]) continue;
    const Link& first = links[i];
    if (!is_real(first.x) && !is_real(first.y)) continue;
    std::size_t start = is_real(first.x) ? first.x : first.y;
    std::size_t node = start;
    std::size_t link = i;
    std::optional<std::string> id;
    while (true) {
      visited[link] = true;
      if (auto k = links[link].edge) {
        const auto& eid = host.edges()[*k].id;
        if (!id || natural_less(eid, *id)) id = eid;
      }
      node = other(links[link], node);
      if (is_real(node)) break;
      link = next_link(node, link);
    }
    if (!id) id = detail::fresh_id(used, "", "site_c");
    used.insert(*id);
    edges.push_back({*id, name_of(start), name_of(node)});
  }
  std::size_t circles = 0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    if (visited[i]) continue;
    ++circles;
    std::size_t node = links[i].x;
    std::size_t link = i;
    while (!visited[link]) {
      visited[link] = true;
      node = other(links[link], node);
      link = next_link(node, link);
    }
  }
  if (has_bar) edges.push_back({bar_id, vertex_names[n], vertex_names[n + 1]});
  return Web(std::move(vertex_names), std::move(edges), host.free_loops() + circles);
}

// Site files: a web document with '-' stub ends plus four
// `label <NW|NE|SW|SE> <edge> <a|b>` lines.
inline SkeinSite parse_site(std::string_view text) {
  auto doc = detail::parse_document(text, true);
  std::array<std::optional<StubRef>, 4> labels;
  for (const auto& pl : doc.labels) {
    auto l = stub_label_from_string(pl.label);
    if (!l) throw ParseError(pl.line, 7, "unknown stub label '" + pl.label + "'");
    auto& slot = labels[static_cast<std::size_t>(*l)];
    if (slot) throw ParseError(pl.line, 1, "stub label '" + pl.label + "' given twice");
    slot = StubRef{pl.edge, pl.end};
  }
  std::array<StubRef, 4> refs;
  for (std::size_t i = 0; i < 4; ++i) {
    if (!labels[i])
      throw ValidationError(std::string(to_string(kStubLabels[i])),
                            "site is missing label " + std::string(to_string(kStubLabels[i])));
    refs[i] = *labels[i];
  }
  return SkeinSite(Web(std::move(doc.vertices), std::move(doc.edges), doc.free_loops), refs);
}

inline std::string print_site(const SkeinSite& site) {
  std::string out = print_web(site.host());
  for (auto l : kStubLabels) {
    const auto& ref = site.stub(l);
    out += "label " + std::string(to_string(l)) + " " + ref.edge + (ref.end == 0 ? " a\n" : " b\n");
  }
  return out;
}

}  // namespace websk

#endif  // WEBSK_WEB_HPP
