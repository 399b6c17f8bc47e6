#pragma once

#include <optional>

#include "cnkit/curve.hpp"
#include "cnkit/quartic.hpp"

namespace cnkit {

// The 2-isogenous pair E: y^2 = x(x^2 + A) and Ebar: y^2 = x(x^2 - 4A).
// The constructor derives Ebar from A so the -4 relation cannot be broken.
struct IsogenyPair {
  Curve e;
  Curve ebar;

  explicit IsogenyPair(const Rat& a) : e(a), ebar(Rat(-4) * a) {}
  explicit IsogenyPair(const Int& a) : IsogenyPair(Rat(a)) {}
};

// phi: E -> Ebar, kernel {O, (0,0)}.
Point phi(const IsogenyPair& pair, const Point& p);

// psi: Ebar -> E, kernel {Obar, (0,0)}; psi(phi(P)) = 2P.
Point psi(const IsogenyPair& pair, const Point& q);

// alpha: E(Q) -> Q^x/(Q^x)^2; O -> 1, (0,0) -> class(A), (x,y) -> class(x).
SquareClass alpha(const Curve& c, const Point& p);

// Same map on the dual curve (its (0,0) lands on class(-4A) = class(-A)).
SquareClass alpha_bar(const Curve& cbar, const Point& q);

// (b1, N, e, M) with N^2 = b1 M^4 + b2 e^4 gives (b1 M^2/e^2, b1 M N/e^3) on
// y^2 = x(x^2 + b1 b2). e = 0 is a class witness with no affine point and
// yields nullopt.
std::optional<Point> point_from_quadruple(const Int& b1, const Int& b2,
                                          const QuarticWitness& w);

// Inverse direction: an affine point with x != 0 on y^2 = x(x^2 + a),
// a integral, written as x = b1 M^2/e^2 in lowest terms with b1 squarefree.
struct Quadruple {
  Int b1;
  Int b2;
  QuarticWitness w;
};
Quadruple quadruple_from_point(const Int& a, const Point& p);

}  // namespace cnkit
