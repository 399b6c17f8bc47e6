#pragma once

#include <optional>
#include <vector>

#include "cnkit/curve.hpp"

namespace cnkit {

// A rational right triangle attached to a nonzero integer n: the legs
// multiply to exactly 2n (one leg is negative when n < 0).
struct Triangle {
  Rat x_leg;
  Rat y_leg;
  Rat z_hyp;
};

// Holds: the Pythagorean identity and the leg product for its n.
bool triangle_valid(const Int& n, const Triangle& t);

// P^2 + nQ^2 = R^2 and P^2 - nQ^2 = S^2.
struct ApWitness {
  Int p, q, r, s;
};

bool ap_valid(const Int& n, const ApWitness& w);

// n m^2 = u v (u^2 - v^2), m != 0.
struct UvmTriple {
  Int u, v, m, n;
};

bool uvm_valid(const UvmTriple& w);

// Solution counts of the four ternary forms, signs included.
struct TunnellCounts {
  Int a_n, b_n, c_n, d_n;
};

// E_n: y^2 = x^3 - n^2 x for the given n.
Curve congruent_curve(const Int& n);

// (a,b,c) -> (|n| b / (c - a), 2 n^2 / (c - a)) for the canonical sign
// pattern; the remaining sign patterns follow the bijection table, so every
// triangle with legs multiplying to 2n maps. n < 0 uses the (a,-b,c) row.
Point triangle_to_point(const Int& n, const Triangle& t);

// Inverse map; requires y != 0 (torsion rows have no triangle).
Triangle point_to_triangle(const Int& n, const Point& p);

// W = least common denominator of the sides; (P,Q,R,S) = |(ZW, 2W, (X+Y)W,
// (X-Y)W)|.
ApWitness triangle_to_ap(const Int& n, const Triangle& t);

// Legs (R+S)/Q, (R-S)/Q, hypotenuse 2P/Q.
Triangle ap_to_triangle(const Int& n, const ApWitness& w);

// Roberts' construction: clears denominators, parametrizes the resulting
// Pythagorean triple and returns (u, v, m) with n m^2 = u v (u^2 - v^2).
// Requires positive sides.
UvmTriple roberts_uvm(const Int& n, const Triangle& t);

// (u, v, m, n) -> (n u / v, n^2 m / v^2) on y^2 = x^3 - n^2 x.
Point uvm_to_point(const UvmTriple& w);

// Least (u, |v|, m) with 1 <= |v| < u <= bound, gcd(u, v) = 1 and
// u v (u^2 - v^2) = n m^2 for a positive square m^2; positive v tried first.
std::optional<UvmTriple> search_uvm(const Int& n, long bound);

// Exhaustive check of u v (u^2 - v^2) = +/- w^2, w != 0, over |u|, |v| <=
// bound; expected empty (only the w = 0 solutions exist).
struct Prop44Violation {
  Int u, v, w;
};
std::vector<Prop44Violation> prop44_scan(long bound);

TunnellCounts tunnell_counts(const Int& n);

// Odd n: 2 A_n = B_n; even n: 2 C_n = D_n. False proves n non-congruent;
// true is merely consistent. Requires squarefree n >= 1.
bool tunnell_consistent(const Int& n);

}  // namespace cnkit
