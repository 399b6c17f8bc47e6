#include "cnkit/curve.hpp"

#include <stdexcept>

namespace cnkit {

Curve::Curve(Rat coeff) : a(std::move(coeff)) {
  if (a == 0) throw std::domain_error("Curve: coefficient must be nonzero");
}

Point Point::affine(Rat x, Rat y) {
  Point p;
  p.infinity_ = false;
  p.x_ = std::move(x);
  p.y_ = std::move(y);
  return p;
}

const Rat& Point::x() const {
  if (infinity_) throw std::logic_error("Point: x() on infinity");
  return x_;
}

const Rat& Point::y() const {
  if (infinity_) throw std::logic_error("Point: y() on infinity");
  return y_;
}

bool operator==(const Point& p, const Point& q) {
  if (p.infinity_ || q.infinity_) return p.infinity_ == q.infinity_;
  return p.x_ == q.x_ && p.y_ == q.y_;
}

bool on_curve(const Curve& c, const Point& p) {
  if (p.is_infinity()) return true;
  return p.y() * p.y() == p.x() * (p.x() * p.x() + c.a);
}

Point negate(const Point& p) {
  if (p.is_infinity()) return p;
  return Point::affine(p.x(), -p.y());
}

namespace {

void require_on_curve(const Curve& c, const Point& p) {
  if (!on_curve(c, p)) throw std::domain_error("point is not on the curve");
}

}  // namespace

Point add_points(const Curve& c, const Point& p, const Point& q) {
  require_on_curve(c, p);
  require_on_curve(c, q);
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rat lambda;
  if (p.x() == q.x()) {
    if (p.y() == -q.y()) return Point::infinity();  // includes y = 0 doubling
    // Tangent at p (= q).
    lambda = (3 * p.x() * p.x() + c.a) / (2 * p.y());
  } else {
    lambda = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rat x3 = lambda * lambda - p.x() - q.x();
  Rat y3 = lambda * (p.x() - x3) - p.y();
  return Point::affine(x3, y3);
}

Point multiply(const Curve& c, const Point& p, unsigned long k) {
  require_on_curve(c, p);
  Point acc = Point::infinity();
  Point base = p;
  while (k > 0) {
    if (k & 1) acc = add_points(c, acc, base);
    k >>= 1;
    if (k > 0) base = add_points(c, base, base);
  }
  return acc;
}

TorsionVerdict torsion_classify(const Curve& c, const Point& p) {
  require_on_curve(c, p);
  if (p.is_infinity()) return {TorsionVerdict::Kind::Identity};
  if (p.y() == 0) {
    TorsionVerdict v{TorsionVerdict::Kind::TwoTorsion};
    if (p.x() == 0) {
      v.two_torsion = TorsionVerdict::Root::Origin;
    } else if (p.x() > 0) {
      v.two_torsion = TorsionVerdict::Root::PlusRoot;
    } else {
      v.two_torsion = TorsionVerdict::Root::MinusRoot;
    }
    return v;
  }
  // Mazur: rational torsion order is at most 12.
  Point acc = p;
  for (int k = 2; k <= 12; ++k) {
    acc = add_points(c, acc, p);
    if (acc.is_infinity()) {
      TorsionVerdict v{TorsionVerdict::Kind::FiniteOrder};
      v.order = k;
      return v;
    }
  }
  return {TorsionVerdict::Kind::InfiniteOrder};
}

std::pair<Curve, Point> quartic_twist(const Curve& c, const Point& p, const Rat& mu) {
  if (mu == 0) throw std::domain_error("quartic_twist: mu must be nonzero");
  require_on_curve(c, p);
  Rat mu2 = mu * mu;
  Curve twisted(c.a * mu2 * mu2);
  if (p.is_infinity()) return {twisted, p};
  return {twisted, Point::affine(mu2 * p.x(), mu2 * mu * p.y())};
}

}  // namespace cnkit
