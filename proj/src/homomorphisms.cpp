#include "cnkit/homomorphisms.hpp"

#include <stdexcept>

namespace cnkit {

namespace {

const Point kOrigin = Point::affine(Rat(0), Rat(0));

void require_on_curve(const Curve& c, const Point& p, const char* what) {
  if (!on_curve(c, p)) throw std::domain_error(what);
}

}  // namespace

Point phi(const IsogenyPair& pair, const Point& p) {
  require_on_curve(pair.e, p, "phi: point not on E");
  if (p.is_infinity() || p == kOrigin) return Point::infinity();
  const Rat& x = p.x();
  const Rat& y = p.y();
  Rat x2 = x * x;
  return Point::affine(y * y / x2, y * (x2 - pair.e.a) / x2);
}

Point psi(const IsogenyPair& pair, const Point& q) {
  require_on_curve(pair.ebar, q, "psi: point not on Ebar");
  if (q.is_infinity() || q == kOrigin) return Point::infinity();
  const Rat& x = q.x();
  const Rat& y = q.y();
  Rat x2 = x * x;
  return Point::affine(y * y / (4 * x2), y * (x2 + 4 * pair.e.a) / (8 * x2));
}

SquareClass alpha(const Curve& c, const Point& p) {
  require_on_curve(c, p, "alpha: point not on curve");
  if (p.is_infinity()) return SquareClass(Int(1));
  if (p == kOrigin) return SquareClass(c.a);
  return SquareClass(p.x());
}

SquareClass alpha_bar(const Curve& cbar, const Point& q) {
  // On Ebar: y^2 = x(x^2 - 4A) the torsion class is -A == -4A mod squares,
  // which is exactly class(cbar.a).
  return alpha(cbar, q);
}

bool witness_satisfies(const Int& b1, const Int& b2, const QuarticWitness& w) {
  if (w.e == 0 && w.M == 0) return false;
  if (w.e < 0 || w.M < 0) return false;
  Int m2 = w.M * w.M;
  Int e2 = w.e * w.e;
  return w.N * w.N == b1 * m2 * m2 + b2 * e2 * e2;
}

bool witness_gcd_conditions(const Int& b1, const Int& b2, const QuarticWitness& w,
                            GcdVariant variant) {
  if (!coprime(w.M, w.e)) return false;
  if (!coprime(w.N, w.e)) return false;
  if (!coprime(b1, w.e)) return false;
  if (variant == GcdVariant::Paper) {
    if (!coprime(b2, w.e)) return false;
  } else {
    if (!coprime(b2, w.M)) return false;
  }
  return coprime(w.M, w.N);
}

std::optional<Point> point_from_quadruple(const Int& b1, const Int& b2,
                                          const QuarticWitness& w) {
  if (!witness_satisfies(b1, b2, w)) {
    throw std::domain_error("point_from_quadruple: not a solution of N^2 = b1 M^4 + b2 e^4");
  }
  if (w.e == 0) return std::nullopt;  // class witness only
  Int e2 = w.e * w.e;
  Rat x = make_rat(b1 * w.M * w.M, e2);
  Rat y = make_rat(b1 * w.M * w.N, e2 * w.e);
  return Point::affine(x, y);
}

Quadruple quadruple_from_point(const Int& a, const Point& p) {
  if (p.is_infinity() || p.x() == 0) {
    throw std::domain_error("quadruple_from_point: needs an affine point with x != 0");
  }
  Curve c((Rat(a)));
  if (!on_curve(c, p)) throw std::domain_error("quadruple_from_point: point not on curve");
  // For integral a the denominator of x is a square and of y the matching
  // cube: x = m/e^2, y = n/e^3 in lowest terms.
  Int d = rat_den(p.x());
  Int e;
  if (!is_perfect_square(d, &e)) {
    throw std::domain_error("quadruple_from_point: x denominator is not a square");
  }
  Int m = rat_num(p.x());
  SquarefreeParts sf = squarefree_decompose(m);
  Int b1 = sf.squarefree;
  Int big_m = sf.root;  // |m| = |b1| * big_m^2 with matching sign in b1
  // y = b1 * big_m * N / e^3.
  Rat n_rat = p.y() * e * e * e / (b1 * big_m);
  if (rat_den(n_rat) != 1) {
    throw std::domain_error("quadruple_from_point: non-integral N");
  }
  // Every prime with odd multiplicity in m divides a (else N^2 would have an
  // odd valuation), so b1 | a.
  if (a % b1 != 0) throw std::domain_error("quadruple_from_point: b1 does not divide a");
  Quadruple q;
  q.b1 = b1;
  q.b2 = a / b1;
  q.w = QuarticWitness{rat_num(n_rat), e, big_m};
  if (!witness_satisfies(q.b1, q.b2, q.w)) {
    throw std::logic_error("quadruple_from_point: derived witness fails verification");
  }
  return q;
}

}  // namespace cnkit
