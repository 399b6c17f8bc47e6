#include "cnkit/congruent.hpp"

#include <stdexcept>

namespace cnkit {

bool triangle_valid(const Int& n, const Triangle& t) {
  if (t.x_leg == 0 || t.y_leg == 0) return false;
  if (t.x_leg * t.x_leg + t.y_leg * t.y_leg != t.z_hyp * t.z_hyp) return false;
  return t.x_leg * t.y_leg == Rat(2 * n);
}

bool ap_valid(const Int& n, const ApWitness& w) {
  return w.p * w.p + n * w.q * w.q == w.r * w.r &&
         w.p * w.p - n * w.q * w.q == w.s * w.s;
}

bool uvm_valid(const UvmTriple& w) {
  if (w.m == 0) return false;
  return w.n * w.m * w.m == w.u * w.v * (w.u * w.u - w.v * w.v);
}

Curve congruent_curve(const Int& n) {
  if (n == 0) throw std::domain_error("congruent_curve: n must be nonzero");
  return Curve(Int(-n * n));
}

Point triangle_to_point(const Int& n, const Triangle& t) {
  if (n == 0) throw std::domain_error("triangle_to_point: n must be nonzero");
  if (!triangle_valid(n, t)) {
    throw std::domain_error("triangle_to_point: triangle does not match n");
  }
  const Int m = abs(n);
  Rat a = abs(t.x_leg), b = abs(t.y_leg), c = abs(t.z_hyp);
  if (c == a) throw std::domain_error("triangle_to_point: degenerate triangle");
  // The bijection table, indexed by the signs of the first leg and the
  // hypotenuse (the second leg's sign is forced by the leg product). The
  // canonical row for n < 0 is (a, -b, c).
  const bool x_pos = t.x_leg > 0;
  const bool z_pos = t.z_hyp > 0;
  Rat px, py;
  if (x_pos && z_pos) {
    px = m * b / (c - a);
    py = 2 * m * m / (c - a);
  } else if (!x_pos && !z_pos) {
    px = m * b / (c - a);
    py = -2 * m * m / (c - a);
  } else if (!x_pos && z_pos) {
    px = -m * b / (c + a);
    py = 2 * m * m / (c + a);
  } else {
    px = -m * b / (c + a);
    py = -2 * m * m / (c + a);
  }
  Point p = Point::affine(px, py);
  if (!on_curve(congruent_curve(n), p)) {
    throw std::logic_error("triangle_to_point: image left the curve");
  }
  return p;
}

Triangle point_to_triangle(const Int& n, const Point& p) {
  if (n == 0) throw std::domain_error("point_to_triangle: n must be nonzero");
  if (!on_curve(congruent_curve(n), p)) {
    throw std::domain_error("point_to_triangle: point not on E_n");
  }
  if (p.is_infinity() || p.y() == 0) {
    throw std::domain_error("point_to_triangle: torsion point has no triangle");
  }
  const Int m = abs(n);
  const Rat& x = p.x();
  const Rat& y = p.y();
  Triangle t;
  if (n > 0) {
    t = Triangle{(x * x - m * m) / y, 2 * m * x / y, (x * x + m * m) / y};
  } else {
    t = Triangle{-(x * x - m * m) / y, 2 * m * x / y, -(x * x + m * m) / y};
  }
  if (!triangle_valid(n, t)) {
    throw std::logic_error("point_to_triangle: image is not a triangle for n");
  }
  return t;
}

ApWitness triangle_to_ap(const Int& n, const Triangle& t) {
  if (!triangle_valid(n, t)) {
    throw std::domain_error("triangle_to_ap: triangle does not match n");
  }
  Int w = rat_den(t.x_leg);
  mpz_lcm(w.get_mpz_t(), w.get_mpz_t(), rat_den(t.y_leg).get_mpz_t());
  mpz_lcm(w.get_mpz_t(), w.get_mpz_t(), rat_den(t.z_hyp).get_mpz_t());
  auto scaled = [&w](const Rat& q) {
    Rat v = q * w;
    return rat_num(v);  // integral by construction of w
  };
  ApWitness out{abs(scaled(t.z_hyp)), 2 * w, abs(scaled(t.x_leg + t.y_leg)),
                abs(scaled(t.x_leg - t.y_leg))};
  if (!ap_valid(n, out)) {
    throw std::logic_error("triangle_to_ap: witness fails the defining system");
  }
  return out;
}

Triangle ap_to_triangle(const Int& n, const ApWitness& w) {
  if (w.q == 0) throw std::domain_error("ap_to_triangle: Q must be nonzero");
  if (!ap_valid(n, w)) {
    throw std::domain_error("ap_to_triangle: witness fails the defining system");
  }
  Triangle t{make_rat(w.r + w.s, w.q), make_rat(w.r - w.s, w.q), make_rat(2 * w.p, w.q)};
  if (!triangle_valid(n, t)) {
    throw std::logic_error("ap_to_triangle: image is not a triangle for n");
  }
  return t;
}

namespace {

// Primitive Pythagorean triple (p1, p2, p3), p1 odd leg: p1 = r^2 - s^2,
// p2 = 2rs, p3 = r^2 + s^2.
bool solve_pythagoras_triple(const Int& p1, const Int& p2, const Int& p3, Int* r, Int* s) {
  if ((p3 + p1) % 2 != 0) return false;
  if (!is_perfect_square((p3 + p1) / 2, r)) return false;
  if (!is_perfect_square((p3 - p1) / 2, s)) return false;
  return 2 * (*r) * (*s) == p2;
}

}  // namespace

UvmTriple roberts_uvm(const Int& n, const Triangle& t) {
  if (!triangle_valid(n, t)) {
    throw std::domain_error("roberts_uvm: triangle does not match n");
  }
  if (t.x_leg <= 0 || t.y_leg <= 0 || t.z_hyp <= 0) {
    throw std::domain_error("roberts_uvm: sides must be positive");
  }
  const Int x1 = rat_num(t.x_leg), x2 = rat_den(t.x_leg);
  const Int y1 = rat_num(t.y_leg), y2 = rat_den(t.y_leg);
  const Int z1 = rat_num(t.z_hyp), z2 = rat_den(t.z_hyp);
  // Clear denominators: (x1 y2 z2)^2 + (x2 y1 z2)^2 = (x2 y2 z1)^2.
  Int big1 = x1 * y2 * z2;
  Int big2 = x2 * y1 * z2;
  Int big3 = x2 * y2 * z1;
  Int k = gcd(gcd(big1, big2), big3);
  Int p1 = big1 / k, p2 = big2 / k, p3 = big3 / k;
  Int r, s;
  if (!solve_pythagoras_triple(p1, p2, p3, &r, &s) &&
      !solve_pythagoras_triple(p2, p1, p3, &r, &s)) {  // legs swapped
    throw std::domain_error("roberts_uvm: Pythagorean parametrization failed");
  }
  UvmTriple out{k * r, k * s, k * x2 * y2 * z2, n};
  if (!uvm_valid(out)) {
    throw std::logic_error("roberts_uvm: n m^2 = u v (u^2 - v^2) failed");
  }
  return out;
}

Point uvm_to_point(const UvmTriple& w) {
  if (w.v == 0) throw std::domain_error("uvm_to_point: v must be nonzero");
  if (!uvm_valid(w)) throw std::domain_error("uvm_to_point: invalid triple");
  Point p = Point::affine(make_rat(w.n * w.u, w.v), make_rat(w.n * w.n * w.m, w.v * w.v));
  if (!on_curve(congruent_curve(w.n), p)) {
    throw std::logic_error("uvm_to_point: image left the curve");
  }
  return p;
}

std::optional<UvmTriple> search_uvm(const Int& n, long bound) {
  if (n == 0) throw std::domain_error("search_uvm: n must be nonzero");
  if (bound < 1) throw std::domain_error("search_uvm: bound must be >= 1");
  for (Int u = 2; u <= bound; ++u) {
    for (Int av = 1; av < u; ++av) {
      if (!coprime(u, av)) continue;
      for (const Int& v : {av, -av}) {
        Int q = u * v * (u * u - v * v);
        if (q % n != 0) continue;
        Int ratio = q / n;
        Int m;
        if (ratio > 0 && is_perfect_square(ratio, &m)) {
          return UvmTriple{u, v, m, n};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Prop44Violation> prop44_scan(long bound) {
  if (bound < 1) throw std::domain_error("prop44_scan: bound must be >= 1");
  std::vector<Prop44Violation> hits;
  // Sign flips of (u, v) only flip the sign of uv(u^2 - v^2), and both signs
  // of w^2 are tested, so positive pairs cover all |u|, |v| <= bound.
  for (Int u = 1; u <= bound; ++u) {
    for (Int v = 1; v <= bound; ++v) {
      if (u == v) continue;  // the trivial (a, a, 0) family
      Int q = abs(u * v * (u * u - v * v));
      Int w;
      if (is_perfect_square(q, &w) && w != 0) {
        hits.push_back(Prop44Violation{u, v, w});
      }
    }
  }
  return hits;
}

namespace {

// Solutions of cx x^2 + cy y^2 + cz z^2 = n, signs included; cz is the
// largest coefficient, so z runs outermost.
Int count_ternary(const Int& n, long cx, long cy, long cz) {
  Int count = 0;
  for (Int z = 0; cz * z * z <= n; ++z) {
    Int rem_z = n - cz * z * z;
    for (Int x = 0; cx * x * x <= rem_z; ++x) {
      Int rem = rem_z - cx * x * x;
      if (rem % cy != 0) continue;
      Int y;
      if (!is_perfect_square(rem / cy, &y)) continue;
      Int mult = 1;
      if (x > 0) mult *= 2;
      if (y > 0) mult *= 2;
      if (z > 0) mult *= 2;
      count += mult;
    }
  }
  return count;
}

}  // namespace

TunnellCounts tunnell_counts(const Int& n) {
  if (n < 1) throw std::domain_error("tunnell_counts: n must be positive");
  return TunnellCounts{count_ternary(n, 2, 1, 32), count_ternary(n, 2, 1, 8),
                       count_ternary(n, 8, 2, 64), count_ternary(n, 8, 2, 16)};
}

bool tunnell_consistent(const Int& n) {
  if (n < 1) throw std::domain_error("tunnell_consistent: n must be positive");
  if (squarefree_decompose(n).root != 1) {
    throw std::domain_error("tunnell_consistent: n must be squarefree");
  }
  TunnellCounts c = tunnell_counts(n);
  if (n % 2 == 1) return 2 * c.a_n == c.b_n;
  return 2 * c.c_n == c.d_n;
}

}  // namespace cnkit
