#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnkit/curve.hpp"
#include "cnkit/descent.hpp"

namespace cnkit {

// x^2 + y^2 = 2 z^2 via (x, y, z) = (r^2+2rs-s^2, r^2-2rs-s^2, r^2+s^2).
struct Lemma42Solution {
  Int r, s;
  Int x, y, z;
};

Lemma42Solution lemma42_param(const Int& r, const Int& s);

// Inverts the parametrization: for odd coprime u, v with u^2 + v^2 = 2 beta^2
// returns (r, s, beta) with {|x|, |y|} = {u, v}; nullopt when no beta exists.
struct SumTwoSquaresTwice {
  Int r, s, beta;
};
std::optional<SumTwoSquaresTwice> solve_sum_two_squares_twice(const Int& u, const Int& v);

// (r, s, gamma) = (w^2+z^2, 2wz, w^2-z^2) with r^2 - s^2 = gamma^2. Requires
// gcd(w, z) = 1 and opposite parities.
struct PythagorasParam {
  Int r, s, gamma;
};
PythagorasParam pythagoras_param(const Int& w, const Int& z);

// One member of the rank >= 2 subfamily: u = r^2+s^2, v = 2r^2-s^2,
// A = uv(u^2-v^2) = -3r^2(r^2+s^2)(r^2-2s^2)(2r^2-s^2); the curve is
// y^2 = x^3 - A^2 x.
struct Family1Instance {
  Int r, s;
  Int u, v;
  Int a_value;                       // A above
  Int witness_b1;                    // v(u+v)
  QuarticWitness witness;            // (3rs*u*v, 1, u) for T(v(u+v))
  std::array<SquareClass, 16> classes;  // +/-{1, A, uv, u^2-v^2, u(u+/-v), v(u+/-v)}
};

Family1Instance family1_instance(const Int& r, const Int& s);

struct DistinctnessReport {
  bool distinct;                                  // all 16 pairwise distinct
  std::optional<std::pair<int, int>> collision;   // indices of a coinciding pair
};

DistinctnessReport family1_distinctness(const Family1Instance& inst);

// Constructive certificate for y^2 = x^3 - A^2 x from the instance's
// witnesses; Distinct16 instances certify rank >= 2.
DescentCertificate family1_certificate(const Family1Instance& inst);

// The 19 (r, s) rows of the rank table for family 1 with their A values.
struct Table1Row {
  Int r, s;
  Int expected_a;
  Int computed_a;
  bool match;
};
std::vector<Table1Row> table1_rows();

// One member of the rank >= 3 subfamily, parametrized by coprime (r1, s)
// with y_root^2 = -896 t^4 - 40 t^2 + 1 for t = r1/s. Points live on
// E: y^2 = x[x^2 - (96 t^2 (8t^2-1)(16t^2+1)(32t^2-1))^2].
struct Family2Instance {
  Int r1, s;
  Rat t;
  Rat y_root;           // root of the quartic at t
  Int a_value;          // -96 r1^2 (8r1^2-s^2)(16r1^2+s^2)(32r1^2-s^2)
  Curve specialized;    // the t-model curve (rational constant)
  Rat curve_constant;   // C with specialized: y^2 = x(x^2 - C^2)
  Point p, q, r;        // the three independent points
  Int witness_b1;       // 16 r1^2 (8r1^2-s^2)(16r1^2+s^2)
  QuarticWitness witness;  // (24 r1 (8r1^2-s^2) y, 1, 12 r1) on the integer model
};

Family2Instance family2_instance(const Int& r1, const Int& s, const Rat& y_root);

// Convenience: derives y_root from (r1, s) when (16r1^2+s^2)(-56r1^2+s^2) is
// a perfect square; nullopt otherwise.
std::optional<Family2Instance> family2_instance(const Int& r1, const Int& s);

// Chord-tangent ascent on the quartic's cubic model starting from
// (2/15, 17/225); returns up to `count` parameter triples (r1, s, y_root),
// every one re-verified exactly. Stops early past `digit_cap` digits.
struct Family2Parameters {
  Int r1, s;
  Rat t;
  Rat y_root;
};
std::vector<Family2Parameters> family2_next_parameters(int count, int digit_cap = 120);

// The eight multiplication-table rows: each product of a family-1 class with
// (8r1^2-s^2)(16r1^2+s^2), printed-form and substituted-form, checked equal.
struct Table2Row {
  std::string label;        // the class in u, v notation, "+" branch
  SquareClass plus_value;   // printed new element, "+" branch
  SquareClass minus_value;  // printed new element, "-" branch
  bool verified;            // printed value matches the substitution identity
};
std::vector<Table2Row> table2_products(const Family2Instance& inst);

}  // namespace cnkit
