#pragma once

#include <utility>

#include "cnkit/exactnum.hpp"

namespace cnkit {

// y^2 = x (x^2 + a) over Q. The coefficient is rational so the specialized
// family curves (which have non-integral constants) share the same group
// law; descent entry points take integer coefficients.
struct Curve {
  Rat a;

  explicit Curve(Rat coeff);
  explicit Curve(const Int& coeff) : Curve(Rat(coeff)) {}
};

class Point {
 public:
  Point() : infinity_(true) {}  // point at infinity

  static Point infinity() { return Point(); }
  static Point affine(Rat x, Rat y);

  bool is_infinity() const { return infinity_; }
  const Rat& x() const;
  const Rat& y() const;

  friend bool operator==(const Point& p, const Point& q);
  friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }

 private:
  bool infinity_;
  Rat x_, y_;
};

bool on_curve(const Curve& c, const Point& p);

Point negate(const Point& p);

// Chord-tangent addition with infinity as identity. Throws std::domain_error
// if either operand is off the curve.
Point add_points(const Curve& c, const Point& p, const Point& q);

// k >= 0 times p by double-and-add.
Point multiply(const Curve& c, const Point& p, unsigned long k);

struct TorsionVerdict {
  enum class Kind { Identity, TwoTorsion, FiniteOrder, InfiniteOrder };
  enum class Root { Origin, PlusRoot, MinusRoot };

  Kind kind;
  Root two_torsion = Root::Origin;  // meaningful for TwoTorsion
  int order = 0;                    // meaningful for FiniteOrder (2..12)

  bool is_infinite_order() const { return kind == Kind::InfiniteOrder; }
};

// Identity for O; TwoTorsion for the y = 0 roots of x(x^2+a); otherwise the
// first k in 2..12 with k*p = O (Mazur bound), else InfiniteOrder.
TorsionVerdict torsion_classify(const Curve& c, const Point& p);

// (x, y) -> (mu^2 x, mu^3 y) onto y^2 = x(x^2 + a*mu^4). Invertible via 1/mu.
std::pair<Curve, Point> quartic_twist(const Curve& c, const Point& p, const Rat& mu);

}  // namespace cnkit
