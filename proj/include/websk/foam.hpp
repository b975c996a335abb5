#ifndef WEBSK_FOAM_HPP
#define WEBSK_FOAM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "websk/error.hpp"
#include "websk/numeric.hpp"

namespace websk {

// A closed foam in the 4-sphere, kept as the aggregates the dimension
// formula consumes: Euler characteristic, framed self-intersection
// (face by face) and the number of tetrahedral points.
struct Foam {
  std::string tag;
  Integer euler_char;
  Rational self_int;
  Integer tetra_points;

  friend bool operator==(const Foam&, const Foam&) = default;
};

// Instanton action κ.
struct Action {
  Rational kappa;
};

// Smallest action that can occur at a bubble.
inline const Rational kMinBubbleAction{1, 8};

// Ψ_n = R ∪ D_1 ∪ ... ∪ D_n: R·R = 2 and each disk contributes -1/2;
// the disks' boundaries meet pairwise in tetrahedral points.
inline Foam make_psi(std::size_t n) {
  Integer nn(n);
  return Foam{"Psi" + std::to_string(n), 1 + nn, Rational(2) - Rational(nn, 2), nn * (nn - 1) / 2};
}

// Mirror image of Ψ_2.
inline Foam make_psi2_minus() { return Foam{"Psi2minus", 2, Rational(-1), 1}; }

// Formal dimension 8κ + χ + (Ψ·Ψ)/2 − τ/2 − 3 for a foam in S^4, τ being
// the tetrahedral-point count. With the Ψ_n aggregates this is
// 8κ − (1 − n/2)^2. Returned as-is: negative and non-integral values are
// meaningful to callers.
inline Rational moduli_dim(const Foam& f, const Action& a) {
  return 8 * a.kappa + Rational(f.euler_char) + f.self_int / 2 - Rational(f.tetra_points) / 2 - 3;
}

struct MinActionEntry {
  Rational kappa;
  std::string holonomy;
  std::string automorphisms;
  Rational formal_dim;
};

// Smallest-action non-empty moduli spaces on (S^4, Ψ_n), n = 0..3.
inline MinActionEntry min_action_table(int n) {
  switch (n) {
    case 0: return {Rational(0), "order-2", "O(2)", Rational(-1)};
    case 1: return {Rational(1, 32), "O(2)", "unobstructed", Rational(0)};
    case 2: return {Rational(0), "Klein V4", "V4", Rational(0)};
    case 3: return {Rational(1, 32), "O(2)", "unobstructed", Rational(0)};
    default: throw InputError("min_action_table is tabulated for n in 0..3, got " + std::to_string(n));
  }
}

// Size of the gluing fiber V/Γ when summing with Ψ_n's smallest solution
// at a tetrahedral point (Ψ_2: one point; Ψ_3: two points, hence zero mod 2).
inline std::optional<int> tetra_sum_fiber(int n) {
  if (n == 2) return 1;
  if (n == 3) return 2;
  return std::nullopt;
}

}  // namespace websk

#endif  // WEBSK_FOAM_HPP
