#ifndef WEBSK_EXACTNESS_HPP
#define WEBSK_EXACTNESS_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "websk/cobmap.hpp"
#include "websk/error.hpp"
#include "websk/numeric.hpp"

namespace websk {

// ---------------------------------------------------------------------------
// Linear forms over named integer variables

class LinearExpr {
 public:
  LinearExpr() = default;
  explicit LinearExpr(Integer constant) : constant_(std::move(constant)) {}
  static LinearExpr var(const std::string& name, Integer coef = 1) {
    LinearExpr e;
    e.add(name, coef);
    return e;
  }

  void add(const std::string& name, const Integer& coef) {
    auto& c = coef_[name];
    c += coef;
    if (c == 0) coef_.erase(name);
  }

  const std::map<std::string, Integer>& terms() const { return coef_; }
  const Integer& constant() const { return constant_; }
  Integer coefficient(const std::string& name) const {
    auto it = coef_.find(name);
    return it == coef_.end() ? Integer(0) : it->second;
  }

  LinearExpr& operator+=(const LinearExpr& o) {
    for (const auto& [n, c] : o.coef_) add(n, c);
    constant_ += o.constant_;
    return *this;
  }
  LinearExpr& operator-=(const LinearExpr& o) { return *this += o * Integer(-1); }
  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(const LinearExpr& a, const Integer& k) {
    LinearExpr out;
    if (k == 0) return out;
    for (const auto& [n, c] : a.coef_) out.coef_[n] = c * k;
    out.constant_ = a.constant_ * k;
    return out;
  }

  Integer evaluate(const std::map<std::string, Integer>& values) const {
    Integer total = constant_;
    for (const auto& [n, c] : coef_) {
      auto it = values.find(n);
      if (it == values.end()) throw InputError("no value for variable " + n);
      total += c * it->second;
    }
    return total;
  }

  friend bool operator==(const LinearExpr&, const LinearExpr&) = default;

 private:
  std::map<std::string, Integer> coef_;
  Integer constant_ = 0;
};

inline std::string to_string(const LinearExpr& e) {
  std::string out;
  for (const auto& [n, c] : e.terms()) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (out.empty()) out += c < 0 ? "-" : "";
    else out += c < 0 ? " - " : " + ";
    if (mag != 1) out += mag.str() + "*";
    out += n;
  }
  if (e.constant() != 0 || out.empty()) {
    if (out.empty()) out = e.constant().str();
    else out += (e.constant() < 0 ? " - " : " + ") + (e.constant() < 0 ? Integer(-e.constant()) : e.constant()).str();
  }
  return out;
}

struct LinearIdentity {
  LinearExpr lhs;
  LinearExpr rhs;
};

inline std::string to_string(const LinearIdentity& id) { return to_string(id.lhs) + " = " + to_string(id.rhs); }

// ---------------------------------------------------------------------------
// Single exact triangle with known dimensions

struct TriangleSolution {
  bool feasible = false;
  std::array<Integer, 3> ranks{};  // rank f, rank g, rank h for f: A->B, g: B->C, h: C->A
  std::string reason;
};

// Rank-nullity on a 3-periodic exact sequence determines the ranks:
// 2 rank f = |A| + |B| - |C| and cyclically.
inline TriangleSolution solve_triangle(const Integer& a, const Integer& b, const Integer& c) {
  TriangleSolution s;
  if (a < 0 || b < 0 || c < 0) {
    s.reason = "dimensions must be nonnegative";
    return s;
  }
  if ((a + b + c) % 2 != 0) {
    s.reason = "|A| - |B| + |C| is odd";
    return s;
  }
  s.ranks = {(a + b - c) / 2, (b + c - a) / 2, (c + a - b) / 2};
  for (std::size_t i = 0; i < 3; ++i) {
    if (s.ranks[i] < 0) {
      static constexpr std::array<std::string_view, 3> names{"f", "g", "h"};
      s.reason = "rank " + std::string(names[i]) + " would be " + s.ranks[i].str();
      return s;
    }
  }
  s.feasible = true;
  return s;
}

// ---------------------------------------------------------------------------
// Constraint systems

class ConstraintSystem {
 public:
  enum class Relation { Eq, Le };  // expr = 0, expr <= 0

  struct Constraint {
    LinearExpr expr;
    Relation rel;
    std::string origin;
  };

  struct Triangle {
    std::string label;
    std::array<std::string, 3> spaces;  // A, B, C
    std::array<std::string, 3> maps;    // f: A->B, g: B->C, h: C->A
  };

  struct Interval {
    Integer lo = 0;
    std::optional<Integer> hi;
    bool fixed() const { return hi && *hi == lo; }
  };

  struct Propagation {
    bool feasible = true;
    std::string reason;
    std::map<std::string, Interval> bounds;
  };

  static std::string space(std::string_view name) { return "|" + std::string(name) + "|"; }
  static std::string rank(std::string_view map) { return "rank(" + std::string(map) + ")"; }

  void add_variable(const std::string& name) { variables_.emplace(name, Interval{}); }

  void fix(const std::string& name, const Integer& value) {
    add_variable(name);
    add_equality(LinearExpr::var(name) - LinearExpr(value), name + " = " + value.str());
  }

  void add_equality(const LinearExpr& expr, std::string origin) {
    for (const auto& [n, c] : expr.terms()) add_variable(n);
    constraints_.push_back({expr, Relation::Eq, std::move(origin)});
  }
  void add_inequality(const LinearExpr& expr, std::string origin) {
    for (const auto& [n, c] : expr.terms()) add_variable(n);
    constraints_.push_back({expr, Relation::Le, std::move(origin)});
  }

  // |A| = rank f + rank h, |B| = rank g + rank f, |C| = rank h + rank g,
  // plus rank bounds by the source and target dimensions.
  const Triangle& add_exact_triangle(const std::string& label, std::array<std::string, 3> spaces,
                                     std::array<std::string, 3> maps) {
    if (find_triangle(label)) throw ValidationError(label, "triangle '" + label + "' already registered");
    triangles_.push_back({label, spaces, maps});
    for (std::size_t i = 0; i < 3; ++i) {
      LinearExpr e = LinearExpr::var(rank(maps[i])) + LinearExpr::var(rank(maps[(i + 2) % 3])) -
                     LinearExpr::var(space(spaces[i]));
      add_equality(e, "exactness of " + label + " at " + spaces[i]);
      add_inequality(LinearExpr::var(rank(maps[i])) - LinearExpr::var(space(spaces[i])),
                     rank(maps[i]) + " <= " + space(spaces[i]));
      add_inequality(LinearExpr::var(rank(maps[i])) - LinearExpr::var(space(spaces[(i + 1) % 3])),
                     rank(maps[i]) + " <= " + space(spaces[(i + 1) % 3]));
    }
    return triangles_.back();
  }

  const Triangle* find_triangle(std::string_view label) const {
    for (const auto& t : triangles_)
      if (t.label == label) return &t;
    return nullptr;
  }

  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::map<std::string, Interval>& variables() const { return variables_; }

  // 2 rank(f) as a combination of the triangle's dimensions, obtained by
  // adding the exactness equations at the two ends of f and subtracting
  // the one at the opposite corner.
  LinearIdentity derive_two_rank(std::string_view label, std::string_view map) const {
    const Triangle* t = find_triangle(label);
    if (!t) throw ValidationError(std::string(label), "unknown triangle '" + std::string(label) + "'");
    auto it = std::find(t->maps.begin(), t->maps.end(), map);
    if (it == t->maps.end())
      throw ValidationError(std::string(map), "map '" + std::string(map) + "' is not in triangle " + t->label);
    const std::size_t i = static_cast<std::size_t>(it - t->maps.begin());
    auto exactness_at = [&](std::size_t k) {
      return LinearExpr::var(rank(t->maps[k])) + LinearExpr::var(rank(t->maps[(k + 2) % 3])) -
             LinearExpr::var(space(t->spaces[k]));
    };
    LinearExpr combo = exactness_at(i) + exactness_at((i + 1) % 3) - exactness_at((i + 2) % 3);
    LinearIdentity id;
    LinearExpr dims;
    for (const auto& [n, c] : combo.terms()) {
      if (n.front() == '|') dims.add(n, -c);
      else id.lhs.add(n, c);
    }
    id.rhs = dims;
    return id;
  }

  // Interval propagation with integer rounding, plus the closed-form
  // solution of any triangle whose three dimensions are pinned.
  Propagation propagate(std::size_t max_passes = 1000) const {
    Propagation p;
    p.bounds = variables_;
    auto floor_div = [](const Integer& a, const Integer& b) {
      Integer q = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
      return q;
    };
    auto ceil_div = [&](const Integer& a, const Integer& b) { return -floor_div(-a, b); };
    auto fail = [&](std::string why) {
      p.feasible = false;
      p.reason = std::move(why);
      return p;
    };

    for (std::size_t pass = 0; pass < max_passes; ++pass) {
      bool changed = false;
      auto tighten = [&](const LinearExpr& e, const std::string& origin) -> std::optional<std::string> {
        for (const auto& [name, cj] : e.terms()) {
          // cj * x_j <= -constant - sum_{i != j} min(c_i x_i)
          Integer rest = -e.constant();
          bool bounded = true;
          for (const auto& [other, ci] : e.terms()) {
            if (other == name) continue;
            const auto& iv = p.bounds.at(other);
            if (ci > 0) rest -= ci * iv.lo;
            else if (iv.hi) rest -= ci * *iv.hi;
            else bounded = false;
          }
          if (!bounded) continue;
          auto& iv = p.bounds.at(name);
          if (cj > 0) {
            Integer hi = floor_div(rest, cj);
            if (!iv.hi || hi < *iv.hi) {
              iv.hi = hi;
              changed = true;
            }
          } else {
            Integer lo = ceil_div(rest, cj);
            if (lo > iv.lo) {
              iv.lo = lo;
              changed = true;
            }
          }
          if (iv.hi && *iv.hi < iv.lo) return "no nonnegative integer value for " + name + " (" + origin + ")";
        }
        return std::nullopt;
      };
      for (const auto& c : constraints_) {
        if (auto bad = tighten(c.expr, c.origin)) return fail(*bad);
        if (c.rel == Relation::Eq)
          if (auto bad = tighten(c.expr * Integer(-1), c.origin)) return fail(*bad);
      }
      for (const auto& t : triangles_) {
        std::array<const Interval*, 3> dims{};
        bool pinned = true;
        for (std::size_t i = 0; i < 3; ++i) {
          dims[i] = &p.bounds.at(space(t.spaces[i]));
          pinned = pinned && dims[i]->fixed();
        }
        if (!pinned) continue;
        auto sol = solve_triangle(dims[0]->lo, dims[1]->lo, dims[2]->lo);
        if (!sol.feasible) return fail("triangle " + t.label + ": " + sol.reason);
        for (std::size_t i = 0; i < 3; ++i) {
          auto& iv = p.bounds.at(rank(t.maps[i]));
          if (sol.ranks[i] < iv.lo || (iv.hi && sol.ranks[i] > *iv.hi))
            return fail("triangle " + t.label + ": forced " + rank(t.maps[i]) + " = " + sol.ranks[i].str() +
                        " conflicts with other constraints");
          if (!iv.fixed()) {
            iv.lo = sol.ranks[i];
            iv.hi = sol.ranks[i];
            changed = true;
          }
        }
      }
      if (!changed) return p;
    }
    p.reason = "propagation did not settle";
    return p;
  }

 private:
  std::map<std::string, Interval> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Triangle> triangles_;
};

// Registers every exact triangle of a relation set, reading the three
// spaces off the declared map types.
inline ConstraintSystem constraints_from(const RelationSet& rels) {
  ConstraintSystem sys;
  for (const auto& t : rels.triangles())
    sys.add_exact_triangle(t.label, {t.maps[0].src, t.maps[1].src, t.maps[2].src},
                           {t.maps[0].name, t.maps[1].name, t.maps[2].name});
  return sys;
}

// ---------------------------------------------------------------------------
// Euler characteristic of the 4-periodic complex

inline Integer euler_4periodic(const Integer& k0, const Integer& k1, const Integer& l0, const Integer& l1) {
  return k0 - k1 + l0 - l1;
}

inline Integer euler_from_ranks(const Integer& rank_a_kappa, const Integer& rank_lambda_b) {
  return 2 * (rank_a_kappa - rank_lambda_b);
}

inline Integer euler_from_single_ranks(const Integer& rank_a, const Integer& rank_b) {
  return 2 * (rank_a - rank_b);
}

struct EulerConsistency {
  bool derivable = false;
  LinearIdentity rank_a;
  LinearIdentity rank_b;
  LinearExpr difference;  // 2 rank a - 2 rank b in terms of dimensions
  LinearExpr euler;       // |K0| - |K1| + |L0| - |L1|
  bool consistent() const { return derivable && difference == euler; }
};

// Checks symbolically that 2 rank(a) - 2 rank(b), each read off its exact
// triangle, is the alternating sum of the four corner dimensions.
inline EulerConsistency euler_consistency(const RelationSet& rels) {
  EulerConsistency out;
  using CS = ConstraintSystem;
  out.euler = LinearExpr::var(CS::space("K0")) - LinearExpr::var(CS::space("K1")) +
              LinearExpr::var(CS::space("L0")) - LinearExpr::var(CS::space("L1"));
  CS sys = constraints_from(rels);
  auto triangle_with = [&](std::string_view map) -> const CS::Triangle* {
    for (const auto& t : sys.triangles())
      if (std::find(t.maps.begin(), t.maps.end(), map) != t.maps.end()) return &t;
    return nullptr;
  };
  const auto* ta = triangle_with("a");
  const auto* tb = triangle_with("b");
  if (!ta || !tb) return out;
  out.derivable = true;
  out.rank_a = sys.derive_two_rank(ta->label, "a");
  out.rank_b = sys.derive_two_rank(tb->label, "b");
  out.difference = out.rank_a.rhs - out.rank_b.rhs;
  return out;
}

// ---------------------------------------------------------------------------
// Dodecahedron bounds

inline constexpr int kDodecahedronLowerBound = 58;  // cited, not recomputed
inline constexpr int kDodecahedronRankAKappa = 5;   // reported input
inline constexpr int kDodecahedronTait = 60;
inline constexpr int kFlagBetti = 6;  // total mod-2 Betti number of the flag manifold
inline constexpr int kSO3Betti = 4;   // and of SO(3)

struct BoundResult {
  Integer upper;
  bool feasible() const { return upper >= 0; }
};

// From |K0| - |K1| + |L0| - |L1| <= 2 rank(a∘κ) with the three simple-web
// dimensions taken to be their Tait counts.
inline BoundResult dodecahedron_bound(const Integer& tau_k0, const Integer& tau_k1, const Integer& tau_l1,
                                      const Integer& rank_a_kappa) {
  return {2 * rank_a_kappa + tau_k1 + tau_l1 - tau_k0};
}

enum class CriticalManifold { Flag, SO3 };

inline CriticalManifold critical_manifold_from_string(std::string_view s) {
  if (s == "FLAG" || s == "flag") return CriticalManifold::Flag;
  if (s == "SO3" || s == "so3") return CriticalManifold::SO3;
  throw InputError("unknown critical manifold '" + std::string(s) + "' (expected FLAG or SO3)");
}

// Critical points of a perfect perturbation of a Morse-Bott function:
// the sum of the total mod-2 Betti numbers of the critical manifolds.
inline Integer morse_bott_count(const std::vector<CriticalManifold>& components) {
  Integer total = 0;
  for (auto c : components) total += c == CriticalManifold::Flag ? kFlagBetti : kSO3Betti;
  return total;
}

}  // namespace websk

#endif  // WEBSK_EXACTNESS_HPP
