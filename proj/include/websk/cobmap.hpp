#ifndef WEBSK_COBMAP_HPP
#define WEBSK_COBMAP_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "websk/error.hpp"

namespace websk {

// ---------------------------------------------------------------------------
// Connected-sum decorations

enum class Summand { Psi0, Psi1, Psi2, Psi3, Psi2Minus, DoubleMobius };
enum class Locus { Tetra, Seam, Face };
enum class FaceClass { None, RFace, DiskFace, Dplus, Dminus, Mobius };

inline std::string_view to_string(Summand s) {
  switch (s) {
    case Summand::Psi0: return "psi0";
    case Summand::Psi1: return "psi1";
    case Summand::Psi2: return "psi2";
    case Summand::Psi3: return "psi3";
    case Summand::Psi2Minus: return "psi2minus";
    case Summand::DoubleMobius: return "doublemobius";
  }
  return "?";
}

inline std::string_view to_string(Locus l) {
  switch (l) {
    case Locus::Tetra: return "tetra";
    case Locus::Seam: return "seam";
    case Locus::Face: return "face";
  }
  return "?";
}

inline std::string_view to_string(FaceClass f) {
  switch (f) {
    case FaceClass::None: return "";
    case FaceClass::RFace: return "rface";
    case FaceClass::DiskFace: return "diskface";
    case FaceClass::Dplus: return "dplus";
    case FaceClass::Dminus: return "dminus";
    case FaceClass::Mobius: return "mobius";
  }
  return "?";
}

namespace detail {

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <class Enum, std::size_t N>
std::optional<Enum> enum_from(std::string_view s, const std::array<Enum, N>& all) {
  const auto key = lower(s);
  for (auto e : all)
    if (to_string(e) == key) return e;
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Summand> summand_from_string(std::string_view s) {
  return detail::enum_from(s, std::array{Summand::Psi0, Summand::Psi1, Summand::Psi2, Summand::Psi3,
                                         Summand::Psi2Minus, Summand::DoubleMobius});
}
inline std::optional<Locus> locus_from_string(std::string_view s) {
  return detail::enum_from(s, std::array{Locus::Tetra, Locus::Seam, Locus::Face});
}
inline std::optional<FaceClass> face_class_from_string(std::string_view s) {
  return detail::enum_from(
      s, std::array{FaceClass::RFace, FaceClass::DiskFace, FaceClass::Dplus, FaceClass::Dminus, FaceClass::Mobius});
}

// Connected sum of a cobordism with a closed foam in S^4 at a tetrahedral
// point, a seam point or a face point.
struct Decoration {
  Summand summand;
  Locus locus;
  FaceClass face = FaceClass::None;

  auto operator<=>(const Decoration&) const = default;
};

// Checks that the summand actually has a point of the requested kind and
// that a face class is given exactly when the rules need one.
inline Decoration make_decoration(Summand s, Locus l, FaceClass f = FaceClass::None) {
  const std::string what = std::string(to_string(s)) + " at " + std::string(to_string(l));
  const bool has_tetra = s == Summand::Psi2 || s == Summand::Psi3 || s == Summand::Psi2Minus;
  const bool has_seam = s != Summand::Psi0;
  if ((l == Locus::Tetra && !has_tetra) || (l == Locus::Seam && !has_seam))
    throw ValidationError(std::string(to_string(s)), what + ": the summand has no such point");

  const bool needs_class = l == Locus::Face && (s == Summand::Psi2Minus || s == Summand::DoubleMobius);
  if (!needs_class && f != FaceClass::None)
    throw ValidationError(std::string(to_string(s)), what + " takes no face class");
  if (needs_class) {
    const bool ok = s == Summand::Psi2Minus
                        ? (f == FaceClass::RFace || f == FaceClass::DiskFace)
                        : (f == FaceClass::Dplus || f == FaceClass::Dminus || f == FaceClass::Mobius);
    if (!ok)
      throw ValidationError(std::string(to_string(s)),
                            what + " needs a face class: " +
                                (s == Summand::Psi2Minus ? "rface or diskface" : "dplus, dminus or mobius"));
  }
  return {s, l, f};
}

inline std::string to_string(const Decoration& d) {
  std::string out = "sum(" + std::string(to_string(d.summand)) + ", " + std::string(to_string(d.locus));
  if (d.face != FaceClass::None) out += ", " + std::string(to_string(d.face));
  return out + ")";
}

// ---------------------------------------------------------------------------
// Terms

struct Atom {
  std::string name;  // generator name; empty for the identity
  std::string src;
  std::string dst;
  std::vector<Decoration> decorations;  // sorted multiset

  bool is_identity() const { return name.empty(); }
  auto operator<=>(const Atom&) const = default;
};

// A cobordism map: ZERO or a composite of atoms. atoms()[0] is applied
// last, matching the written order `t1 . t2` = t1 ∘ t2.
class MapTerm {
 public:
  static MapTerm zero() {
    MapTerm t;
    t.zero_ = true;
    return t;
  }
  static MapTerm identity(std::string web) { return MapTerm({Atom{"", web, web, {}}}); }
  static MapTerm generator(std::string name, std::string src, std::string dst) {
    if (name.empty()) throw ValidationError("", "generator name must not be empty");
    return MapTerm({Atom{std::move(name), std::move(src), std::move(dst), {}}});
  }
  static MapTerm from_atoms(std::vector<Atom> atoms) {
    if (atoms.empty()) throw ValidationError("", "a composite needs at least one atom");
    MapTerm t(std::move(atoms));
    t.check_types();
    return t;
  }

  // later ∘ earlier, type-checked.
  static MapTerm compose(const MapTerm& later, const MapTerm& earlier) {
    if (later.zero_ || earlier.zero_) return zero();
    if (later.source() != earlier.target())
      throw ValidationError(later.atoms_.back().name,
                            "type mismatch in composite: " + *earlier.target() + " does not feed " + *later.source());
    auto atoms = later.atoms_;
    atoms.insert(atoms.end(), earlier.atoms_.begin(), earlier.atoms_.end());
    return MapTerm(std::move(atoms));
  }

  // Connected sum attached to the last-applied atom of the composite.
  MapTerm decorated(const Decoration& d) const {
    if (zero_) return *this;
    MapTerm t = *this;
    auto& decs = t.atoms_.front().decorations;
    decs.insert(std::upper_bound(decs.begin(), decs.end(), d), d);
    return t;
  }

  bool is_zero() const { return zero_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::optional<std::string> source() const {
    return zero_ ? std::nullopt : std::optional<std::string>(atoms_.back().src);
  }
  std::optional<std::string> target() const {
    return zero_ ? std::nullopt : std::optional<std::string>(atoms_.front().dst);
  }
  std::size_t decoration_count() const {
    std::size_t n = 0;
    for (const auto& a : atoms_) n += a.decorations.size();
    return n;
  }

  auto operator<=>(const MapTerm&) const = default;

 private:
  MapTerm() = default;
  explicit MapTerm(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}

  void check_types() const {
    for (std::size_t i = 0; i + 1 < atoms_.size(); ++i)
      if (atoms_[i + 1].dst != atoms_[i].src)
        throw ValidationError(atoms_[i].name, "type mismatch in composite: " + atoms_[i + 1].dst +
                                                  " does not feed " + atoms_[i].src);
  }

  bool zero_ = false;
  std::vector<Atom> atoms_;
};

// `compact` prints generators by bare name (as declared in relation files).
inline std::string to_string(const MapTerm& t, bool compact = false) {
  if (t.is_zero()) return "zero";
  std::string out;
  for (std::size_t i = 0; i < t.atoms().size(); ++i) {
    const auto& a = t.atoms()[i];
    if (i > 0) out += " . ";
    if (a.is_identity()) out += "id(" + a.src + ")";
    else if (compact) out += a.name;
    else out += "gen(" + a.name + ", " + a.src + ", " + a.dst + ")";
    for (const auto& d : a.decorations) out += " @ " + to_string(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

namespace detail {

enum class DecorationEffect { Drop, Zero, Keep };

struct RuleVerdict {
  DecorationEffect effect;
  std::string_view rule;
};

inline RuleVerdict decoration_rule(const Decoration& d) {
  using E = DecorationEffect;
  switch (d.summand) {
    case Summand::Psi2:
      if (d.locus == Locus::Tetra) return {E::Drop, "R1"};
      if (d.locus == Locus::Seam) return {E::Drop, "R3"};
      return {E::Zero, "R4"};
    case Summand::Psi3:
      if (d.locus == Locus::Tetra) return {E::Zero, "R2"};
      if (d.locus == Locus::Seam) return {E::Zero, "R3"};
      return {E::Zero, "R4"};
    case Summand::Psi1:
      return d.locus == Locus::Seam ? RuleVerdict{E::Zero, "R3"} : RuleVerdict{E::Zero, "R4"};
    case Summand::Psi0:
      return {E::Drop, "R4"};
    case Summand::Psi2Minus:
      if (d.locus != Locus::Face) return {E::Keep, ""};
      return d.face == FaceClass::RFace ? RuleVerdict{E::Drop, "R5"} : RuleVerdict{E::Zero, "R5"};
    case Summand::DoubleMobius:
      if (d.locus != Locus::Face) return {E::Keep, ""};
      return d.face == FaceClass::Dminus ? RuleVerdict{E::Zero, "R6"} : RuleVerdict{E::Drop, "R6"};
  }
  return {E::Keep, ""};
}

// Index i of an "L_i" web label, reduced mod 3. Accepts L2, L_2, L_{2}.
inline std::optional<int> l_index(std::string_view label) {
  if (label.size() < 2 || label[0] != 'L') return std::nullopt;
  label.remove_prefix(1);
  if (label[0] == '_') label.remove_prefix(1);
  if (label.size() >= 2 && label.front() == '{' && label.back() == '}') label = label.substr(1, label.size() - 2);
  int v = 0;
  auto [p, ec] = std::from_chars(label.data(), label.data() + label.size(), v);
  if (ec != std::errc() || p != label.data() + label.size() || label.empty()) return std::nullopt;
  return ((v % 3) + 3) % 3;
}

// Σ(L_{i+1}, L_i): the standard cobordism stepping the L index down by one.
inline std::optional<int> sigma_step_source(const Atom& a) {
  if (a.name != "Sigma") return std::nullopt;
  auto s = l_index(a.src);
  auto d = l_index(a.dst);
  if (!s || !d || *d != (*s + 2) % 3) return std::nullopt;
  return s;
}

}  // namespace detail

struct Normalized {
  MapTerm term;
  std::vector<std::string> steps;
};

// Rewrites to a fixpoint. Each step either removes a decoration, turns the
// term into ZERO, or removes an atom, so the (decorations, atoms) pair
// decreases lexicographically and the loop terminates.
inline Normalized normalize_traced(const MapTerm& input) {
  using detail::DecorationEffect;
  Normalized out{input, {}};
  auto& steps = out.steps;
  while (!out.term.is_zero()) {
    auto atoms = out.term.atoms();
    bool changed = false;

    for (std::size_t i = 0; i < atoms.size() && !changed; ++i) {
      auto& decs = atoms[i].decorations;
      for (std::size_t k = 0; k < decs.size(); ++k) {
        auto verdict = detail::decoration_rule(decs[k]);
        if (verdict.effect == DecorationEffect::Keep) continue;
        if (verdict.effect == DecorationEffect::Zero) {
          steps.push_back(std::string(verdict.rule) + ": " + to_string(decs[k]) + " makes the map zero");
          out.term = MapTerm::zero();
          return out;
        }
        steps.push_back(std::string(verdict.rule) + ": drop " + to_string(decs[k]));
        decs.erase(decs.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
    if (!changed) {
      // atoms[i] is applied after atoms[i + 1].
      for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
        auto first = detail::sigma_step_source(atoms[i + 1]);
        auto second = detail::sigma_step_source(atoms[i]);
        if (first && second && *second == (*first + 2) % 3) {
          steps.push_back("R7: Sigma(" + atoms[i].src + "," + atoms[i].dst + ") . Sigma(" + atoms[i + 1].src + "," +
                          atoms[i + 1].dst + ") = V(" + atoms[i + 1].src + "," + atoms[i].dst +
                          ") @ sum(psi3, tetra)");
          steps.push_back("R2: sum(psi3, tetra) makes the map zero");
          out.term = MapTerm::zero();
          return out;
        }
      }
    }
    if (!changed && atoms.size() > 1) {
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].is_identity() && atoms[i].decorations.empty()) {
          steps.push_back("R8: elide id(" + atoms[i].src + ")");
          atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
    out.term = MapTerm::from_atoms(std::move(atoms));
  }
  return out;
}

inline MapTerm normalize(const MapTerm& t) { return normalize_traced(t).term; }

// ---------------------------------------------------------------------------
// Relation sets

struct Axiom {
  std::string kind;   // "commute", "same", "axiom", or "exact" for triangle-derived zeros
  std::string label;
  MapTerm lhs;
  MapTerm rhs;
};

struct ExactTriangle {
  std::string label;
  std::array<Atom, 3> maps;  // f: A->B, g: B->C, h: C->A
};

class RelationSet {
 public:
  void declare_map(const std::string& name, const std::string& src, const std::string& dst) {
    if (name.empty()) throw ValidationError(name, "empty map name");
    auto [it, fresh] = maps_.emplace(name, Atom{name, src, dst, {}});
    if (!fresh && (it->second.src != src || it->second.dst != dst))
      throw ValidationError(name, "map '" + name + "' redeclared with a different type");
  }

  const Atom* find_map(std::string_view name) const {
    auto it = maps_.find(std::string(name));
    return it == maps_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, Atom>& maps() const { return maps_; }

  // Registers an exact triangle f, g, h and the three derived facts
  // g∘f = h∘g = f∘h = 0.
  void add_triangle(const std::string& label, const std::string& f, const std::string& g, const std::string& h) {
    std::array<Atom, 3> m{require(f), require(g), require(h)};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& x = m[i];
      const auto& y = m[(i + 1) % 3];
      if (x.dst != y.src)
        throw ValidationError(y.name, "exact triangle " + label + ": " + x.name + " lands in " + x.dst + " but " +
                                          y.name + " starts at " + y.src);
    }
    triangles_.push_back({label, m});
  }

  void add_axiom(const std::string& kind, const std::string& label, const MapTerm& lhs, const MapTerm& rhs) {
    if (!lhs.is_zero() && !rhs.is_zero() && (lhs.source() != rhs.source() || lhs.target() != rhs.target()))
      throw ValidationError(label, "axiom " + label + " relates maps of different types");
    axioms_.push_back({kind, label, lhs, rhs});
  }

  const std::vector<ExactTriangle>& triangles() const { return triangles_; }
  const std::vector<Axiom>& axioms() const { return axioms_; }

  const ExactTriangle* find_triangle(std::string_view label) const {
    for (const auto& t : triangles_)
      if (t.label == label) return &t;
    return nullptr;
  }
  const Axiom* find_axiom(std::string_view kind, std::string_view label) const {
    for (const auto& a : axioms_)
      if (a.kind == kind && a.label == label) return &a;
    return nullptr;
  }

  // Every declared equality plus the composite-zero facts of the triangles.
  std::vector<Axiom> all_axioms() const {
    std::vector<Axiom> out = axioms_;
    for (const auto& t : triangles_)
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& x = t.maps[i];
        const auto& y = t.maps[(i + 1) % 3];
        out.push_back({"exact", t.label,
                       MapTerm::compose(MapTerm::generator(y.name, y.src, y.dst),
                                        MapTerm::generator(x.name, x.src, x.dst)),
                       MapTerm::zero()});
      }
    return out;
  }

 private:
  const Atom& require(const std::string& name) const {
    auto it = maps_.find(name);
    if (it == maps_.end()) throw ValidationError(name, "undeclared map '" + name + "'");
    return it->second;
  }

  std::map<std::string, Atom> maps_;
  std::vector<ExactTriangle> triangles_;
  std::vector<Axiom> axioms_;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class TermParser {
 public:
  TermParser(std::string_view text, const RelationSet* symbols, std::size_t line = 1, std::size_t column = 1)
      : text_(text), symbols_(symbols), line_(line), column0_(column) {}

  MapTerm parse_all() {
    MapTerm t = parse_term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = line_;
    std::size_t col = column0_;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool ident_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && std::string_view("(),.@=#").find(c) == std::string_view::npos;
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  MapTerm parse_term() {
    MapTerm t = parse_factor();
    while (peek('.')) {
      ++pos_;
      std::size_t at = pos_;
      MapTerm rhs = parse_factor();
      if (!t.is_zero() && !rhs.is_zero() && t.source() != rhs.target()) {
        pos_ = at;
        fail("type mismatch in composite: " + *rhs.target() + " does not feed " + *t.source());
      }
      t = MapTerm::compose(t, rhs);
    }
    return t;
  }

  MapTerm parse_factor() {
    MapTerm t = parse_primary();
    while (peek('@')) {
      ++pos_;
      t = t.decorated(parse_sum());
    }
    return t;
  }

  Decoration parse_sum() {
    if (ident() != "sum") fail("expected 'sum(...)' after '@'");
    expect('(');
    std::size_t at = pos_;
    auto s = summand_from_string(ident());
    if (!s) {
      pos_ = at;
      fail("unknown summand; expected psi0..psi3, psi2minus or doublemobius");
    }
    expect(',');
    at = pos_;
    auto l = locus_from_string(ident());
    if (!l) {
      pos_ = at;
      fail("unknown locus; expected tetra, seam or face");
    }
    FaceClass f = FaceClass::None;
    if (peek(',')) {
      ++pos_;
      at = pos_;
      auto fc = face_class_from_string(ident());
      if (!fc) {
        pos_ = at;
        fail("unknown face class");
      }
      f = *fc;
    }
    expect(')');
    try {
      return make_decoration(*s, *l, f);
    } catch (const ValidationError& e) {
      pos_ = at;
      fail(e.what());
    }
  }

  MapTerm parse_primary() {
    if (peek('(')) {
      ++pos_;
      MapTerm t = parse_term();
      expect(')');
      return t;
    }
    std::size_t at = pos_;
    std::string word = ident();
    if (word == "zero") return MapTerm::zero();
    if (word == "id" && peek('(')) {
      ++pos_;
      std::string w = ident();
      expect(')');
      return MapTerm::identity(w);
    }
    if (word == "gen" && peek('(')) {
      ++pos_;
      std::string name = ident();
      expect(',');
      std::string src = ident();
      expect(',');
      std::string dst = ident();
      expect(')');
      return MapTerm::generator(name, src, dst);
    }
    if (symbols_) {
      if (const Atom* a = symbols_->find_map(word)) return MapTerm::generator(a->name, a->src, a->dst);
    }
    pos_ = at;
    skip_space();
    fail("unknown map '" + word + "' (use gen(name, src, dst) or declare it with 'map')");
  }

  std::string_view text_;
  const RelationSet* symbols_;
  std::size_t line_;
  std::size_t column0_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Term syntax: `zero`, `id(W)`, `gen(name, src, dst)`, `t1 . t2` (t1 after
// t2), `t @ sum(summand, locus[, face class])`, parentheses. Bare names
// resolve through `symbols` when given.
inline MapTerm parse_term(std::string_view text, const RelationSet* symbols = nullptr) {
  return detail::TermParser(text, symbols).parse_all();
}

// Relation file lines:
//   map <name> <src> <dst>
//   exact <label> <f> <g> <h>
//   commute|same|axiom <label> <term> = <term>
inline RelationSet parse_relations(std::string_view text) {
  RelationSet rels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<std::pair<std::string, std::size_t>> words;
    std::size_t i = 0;
    while (i < line.size() && words.size() < 2) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) words.emplace_back(std::string(line.substr(i, j - i)), i + 1);
      i = j;
    }
    if (words.empty()) continue;
    const auto& kw = words[0].first;
    std::string_view rest = i < line.size() ? line.substr(i) : std::string_view{};

    auto tail_words = [&]() {
      std::vector<std::string> out;
      std::size_t k = 0;
      while (k < rest.size()) {
        while (k < rest.size() && std::isspace(static_cast<unsigned char>(rest[k]))) ++k;
        std::size_t j = k;
        while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j]))) ++j;
        if (j > k) out.emplace_back(rest.substr(k, j - k));
        k = j;
      }
      return out;
    };
    if (words.size() < 2) throw ParseError(line_no, words[0].second, "'" + kw + "' needs arguments");
    const auto& label = words[1].first;

    try {
      if (kw == "map") {
        auto t = tail_words();
        if (t.size() != 2) throw ParseError(line_no, words[1].second, "map <name> <src> <dst>");
        rels.declare_map(label, t[0], t[1]);
      } else if (kw == "exact") {
        auto t = tail_words();
        if (t.size() != 3) throw ParseError(line_no, words[1].second, "exact <label> <f> <g> <h>");
        rels.add_triangle(label, t[0], t[1], t[2]);
      } else if (kw == "commute" || kw == "same" || kw == "axiom") {
        auto eq = rest.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, i + 1, "expected '<term> = <term>'");
        const std::size_t col = static_cast<std::size_t>(rest.data() - line.data()) + 1;
        MapTerm lhs = detail::TermParser(rest.substr(0, eq), &rels, line_no, col).parse_all();
        MapTerm rhs = detail::TermParser(rest.substr(eq + 1), &rels, line_no, col + eq + 1).parse_all();
        rels.add_axiom(kw, label, lhs, rhs);
      } else {
        throw ParseError(line_no, words[0].second, "unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ParseError(line_no, words[0].second, e.what());
    }
  }
  return rels;
}

// ---------------------------------------------------------------------------
// Equality by bounded rewriting

enum class Verdict { Joined, NotJoined, BoundExceeded };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Joined: return "equal";
    case Verdict::NotJoined: return "not derivable";
    case Verdict::BoundExceeded: return "bound exceeded";
  }
  return "?";
}

struct EqualityOptions {
  std::size_t max_length = 6;
  std::size_t max_states = 100000;
};

struct EqualityResult {
  Verdict verdict = Verdict::NotJoined;
  std::optional<MapTerm> meeting;             // common normal form when joined
  std::vector<std::string> left_derivation;   // steps from the first term
  std::vector<std::string> right_derivation;  // steps from the second term
  bool equal() const { return verdict == Verdict::Joined; }
};

namespace detail {

struct OrientedRule {
  std::vector<Atom> pattern;
  MapTerm replacement;
  std::string name;
};

inline std::vector<OrientedRule> orient(const RelationSet& rels) {
  std::vector<OrientedRule> rules;
  for (const auto& ax : rels.all_axioms()) {
    MapTerm l = normalize(ax.lhs);
    MapTerm r = normalize(ax.rhs);
    const std::string name = ax.kind + " " + ax.label;
    if (l == r) continue;
    if (!l.is_zero()) rules.push_back({l.atoms(), r, name});
    if (!r.is_zero()) rules.push_back({r.atoms(), l, name});
  }
  return rules;
}

struct Exploration {
  std::map<MapTerm, std::pair<std::optional<MapTerm>, std::string>> parent;
  bool pruned = false;
  bool overflow = false;
};

inline Exploration explore(const MapTerm& start, const std::vector<OrientedRule>& rules,
                           const EqualityOptions& opts) {
  Exploration ex;
  ex.parent.emplace(start, std::make_pair(std::nullopt, std::string()));
  std::deque<MapTerm> queue{start};
  while (!queue.empty()) {
    MapTerm cur = std::move(queue.front());
    queue.pop_front();
    if (cur.is_zero()) continue;
    const auto& atoms = cur.atoms();
    for (const auto& rule : rules) {
      const auto& p = rule.pattern;
      if (p.size() > atoms.size()) continue;
      for (std::size_t i = 0; i + p.size() <= atoms.size(); ++i) {
        if (!std::equal(p.begin(), p.end(), atoms.begin() + static_cast<std::ptrdiff_t>(i))) continue;
        MapTerm next = MapTerm::zero();
        if (!rule.replacement.is_zero()) {
          std::vector<Atom> spliced(atoms.begin(), atoms.begin() + static_cast<std::ptrdiff_t>(i));
          spliced.insert(spliced.end(), rule.replacement.atoms().begin(), rule.replacement.atoms().end());
          spliced.insert(spliced.end(), atoms.begin() + static_cast<std::ptrdiff_t>(i + p.size()), atoms.end());
          next = normalize(MapTerm::from_atoms(std::move(spliced)));
        }
        if (!next.is_zero() && next.atoms().size() > opts.max_length) {
          ex.pruned = true;
          continue;
        }
        if (ex.parent.count(next)) continue;
        if (ex.parent.size() >= opts.max_states) {
          ex.overflow = true;
          return ex;
        }
        ex.parent.emplace(next, std::make_pair(std::optional<MapTerm>(cur), rule.name));
        queue.push_back(std::move(next));
      }
    }
  }
  return ex;
}

inline std::vector<std::string> path_to(const Exploration& ex, const MapTerm& end) {
  std::vector<std::string> steps;
  MapTerm cur = end;
  while (true) {
    const auto& [prev, rule] = ex.parent.at(cur);
    if (!prev) break;
    steps.push_back(to_string(*prev, true) + "  =[" + rule + "]=  " + to_string(cur, true));
    cur = *prev;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

}  // namespace detail

// Sound, incomplete equality: both sides are normalized, then closed under
// the declared axioms (used in both directions, triangle zeros one way)
// with composites capped at max_length atoms.
inline EqualityResult equal(const MapTerm& t1, const MapTerm& t2, const RelationSet& rels,
                            const EqualityOptions& opts = {}) {
  if (!t1.is_zero() && !t2.is_zero() && (t1.source() != t2.source() || t1.target() != t2.target()))
    throw ValidationError("", "cannot compare maps of different types: " + to_string(t1) + " vs " + to_string(t2));
  const auto rules = detail::orient(rels);
  MapTerm a = normalize(t1);
  MapTerm b = normalize(t2);
  auto left = detail::explore(a, rules, opts);
  auto right = detail::explore(b, rules, opts);

  EqualityResult result;
  for (const auto& [term, _] : left.parent) {
    if (right.parent.count(term) && (!result.meeting || term < *result.meeting)) result.meeting = term;
  }
  if (result.meeting) {
    result.verdict = Verdict::Joined;
    result.left_derivation = detail::path_to(left, *result.meeting);
    result.right_derivation = detail::path_to(right, *result.meeting);
  } else if (left.pruned || right.pruned || left.overflow || right.overflow) {
    result.verdict = Verdict::BoundExceeded;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Octahedron suite

// Generator names and types of the octahedral diagram as used by the shipped
// relation file. L2p stands for L'_2. The central square is
// K0 -gamma-> K1 -t-> L0 -xi-> L1 -s-> K0.
struct OctahedronMap {
  std::string_view name, src, dst;
};
inline constexpr std::array<OctahedronMap, 12> kOctahedronMaps{{
    {"a", "K0", "K2"},
    {"b", "K2", "K1"},
    {"gamma", "K0", "K1"},
    {"t", "K1", "L0"},
    {"q", "L0", "K2"},
    {"r", "K2", "L1"},
    {"s", "L1", "K0"},
    {"xi", "L0", "L1"},
    {"lambda", "K1", "L2p"},
    {"kappa", "L2p", "K0"},
    {"eta", "L1", "L2p"},
    {"zeta", "L2p", "L0"},
}};

struct SuiteCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  Verdict verdict = Verdict::NotJoined;
  std::vector<std::string> derivation;
  std::string note;
};

struct OctahedronReport {
  std::vector<std::string> missing;
  std::vector<SuiteCheck> checks;
  std::vector<std::string> complex;  // the 4-periodic cycle, when all square maps are declared

  bool all_derived() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.verdict == Verdict::Joined; });
  }
  const SuiteCheck* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Checks that consecutive composites around the central square vanish and
// that the two pairs of opposite composites agree, using only the axioms in
// `rels`. Missing declarations are listed; checks whose generators are
// undeclared are reported as not derivable.
inline OctahedronReport octahedron_suite(const RelationSet& rels, const EqualityOptions& opts = {}) {
  OctahedronReport report;
  for (const auto& m : kOctahedronMaps) {
    const Atom* a = rels.find_map(m.name);
    if (!a) report.missing.push_back("map " + std::string(m.name));
    else if (a->src != m.src || a->dst != m.dst)
      report.missing.push_back("map " + std::string(m.name) + " : " + std::string(m.src) + " -> " +
                               std::string(m.dst) + " (declared " + a->src + " -> " + a->dst + ")");
  }
  for (int item = 1; item <= 4; ++item)
    if (!rels.find_triangle(std::to_string(item))) report.missing.push_back("exact " + std::to_string(item));
  for (int item = 5; item <= 8; ++item)
    if (!rels.find_axiom("commute", std::to_string(item))) report.missing.push_back("commute " + std::to_string(item));
  for (int item = 9; item <= 10; ++item)
    if (!rels.find_axiom("same", std::to_string(item))) report.missing.push_back("same " + std::to_string(item));

  auto run = [&](std::string name, std::string lhs, std::string rhs) {
    SuiteCheck c{std::move(name), std::move(lhs), std::move(rhs), Verdict::NotJoined, {}, {}};
    try {
      MapTerm l = parse_term(c.lhs, &rels);
      MapTerm r = parse_term(c.rhs, &rels);
      auto res = equal(l, r, rels, opts);
      c.verdict = res.verdict;
      c.derivation = res.left_derivation;
      for (const auto& s : res.right_derivation) c.derivation.push_back("(rhs) " + s);
    } catch (const InputError& e) {
      c.note = e.what();
    }
    report.checks.push_back(std::move(c));
  };
  run("square K0->K1->L0", "t . gamma", "zero");
  run("square K1->L0->L1", "xi . t", "zero");
  run("square L0->L1->K0", "s . xi", "zero");
  run("square L1->K0->K1", "gamma . s", "zero");
  run("opposite composites K2->L2p", "lambda . b", "eta . r");
  run("opposite composites L2p->K2", "a . kappa", "q . zeta");

  bool square_declared = true;
  for (auto n : {"gamma", "t", "xi", "s"}) square_declared = square_declared && rels.find_map(n);
  if (square_declared)
    for (auto n : {"gamma", "t", "xi", "s"}) {
      const Atom* a = rels.find_map(n);
      report.complex.push_back(a->src + " -" + a->name + "-> " + a->dst);
    }
  return report;
}

}  // namespace websk

#endif  // WEBSK_COBMAP_HPP
