#include "cnkit/families.hpp"

#include <set>
#include <stdexcept>

namespace cnkit {

Lemma42Solution lemma42_param(const Int& r, const Int& s) {
  if (!coprime(r, s)) throw std::domain_error("lemma42_param: r, s must be coprime");
  Lemma42Solution sol{r, s, r * r + 2 * r * s - s * s, r * r - 2 * r * s - s * s,
                      r * r + s * s};
  if (sol.x * sol.x + sol.y * sol.y != 2 * sol.z * sol.z) {
    throw std::logic_error("lemma42_param: identity failed");
  }
  return sol;
}

std::optional<SumTwoSquaresTwice> solve_sum_two_squares_twice(const Int& u, const Int& v) {
  if (u % 2 == 0 || v % 2 == 0) {
    throw std::domain_error("solve_sum_two_squares_twice: u, v must be odd");
  }
  if (!coprime(u, v)) {
    throw std::domain_error("solve_sum_two_squares_twice: u, v must be coprime");
  }
  Int beta;
  if ((u * u + v * v) % 2 != 0 || !is_perfect_square((u * u + v * v) / 2, &beta)) {
    return std::nullopt;
  }
  Int limit = isqrt(beta);
  for (Int r = 0; r <= limit; ++r) {
    Int s_abs;
    if (!is_perfect_square(beta - r * r, &s_abs)) continue;
    for (const Int& s : {s_abs, -s_abs}) {
      Int x = r * r + 2 * r * s - s * s;
      Int y = r * r - 2 * r * s - s * s;
      if ((abs(x) == abs(u) && abs(y) == abs(v)) ||
          (abs(x) == abs(v) && abs(y) == abs(u))) {
        return SumTwoSquaresTwice{r, s, beta};
      }
      if (s == 0) break;
    }
  }
  return std::nullopt;
}

PythagorasParam pythagoras_param(const Int& w, const Int& z) {
  if (!coprime(w, z)) throw std::domain_error("pythagoras_param: w, z must be coprime");
  if ((w - z) % 2 == 0) {
    throw std::domain_error("pythagoras_param: w, z must have opposite parities");
  }
  PythagorasParam out{w * w + z * z, 2 * w * z, w * w - z * z};
  if (out.r * out.r - out.s * out.s != out.gamma * out.gamma) {
    throw std::logic_error("pythagoras_param: identity failed");
  }
  return out;
}

Family1Instance family1_instance(const Int& r, const Int& s) {
  if (!coprime(r, s)) throw std::domain_error("family1_instance: r, s must be coprime");
  Family1Instance inst;
  inst.r = r;
  inst.s = s;
  inst.u = r * r + s * s;
  inst.v = 2 * r * r - s * s;
  const Int& u = inst.u;
  const Int& v = inst.v;
  inst.a_value = u * v * (u * u - v * v);
  if (inst.a_value == 0) throw std::domain_error("family1_instance: degenerate A = 0");
  if (inst.a_value != -3 * r * r * (r * r + s * s) * (r * r - 2 * s * s) * (2 * r * r - s * s)) {
    throw std::logic_error("family1_instance: closed form for A failed");
  }
  inst.witness_b1 = v * (u + v);
  inst.witness = QuarticWitness{3 * r * s * u * v, Int(1), u};
  const Int d = u * u - v * v;
  int i = 0;
  for (const Int& base : {Int(1), inst.a_value, u * v, d, u * (u + v), u * (u - v),
                          v * (u + v), v * (u - v)}) {
    inst.classes[i++] = SquareClass(base);
    inst.classes[i++] = SquareClass(-base);
  }
  return inst;
}

DistinctnessReport family1_distinctness(const Family1Instance& inst) {
  for (int i = 0; i < 16; ++i) {
    for (int j = i + 1; j < 16; ++j) {
      if (inst.classes[i] == inst.classes[j]) {
        return DistinctnessReport{false, std::make_pair(i, j)};
      }
    }
  }
  return DistinctnessReport{true, std::nullopt};
}

DescentCertificate family1_certificate(const Family1Instance& inst) {
  const Int& u = inst.u;
  const Int& v = inst.v;
  const Int A = inst.a_value;
  const Int d = u * u - v * v;
  CertificateBuilder cb(-A * A, GcdVariant::Paper);
  cb.seed_torsion();
  cb.add_witness(Side::E, ClassOrigin::Seed, Int(1), QuarticWitness{Int(1), Int(0), Int(1)});
  cb.add_witness(Side::E, ClassOrigin::Seed, Int(-1), QuarticWitness{A, Int(1), Int(0)});
  cb.add_witness(Side::E, ClassOrigin::Seed, A, QuarticWitness{Int(0), Int(1), Int(1)});
  cb.add_witness(Side::E, ClassOrigin::Seed, -A, QuarticWitness{Int(0), Int(1), Int(1)});
  cb.add_witness(Side::E, ClassOrigin::Seed, u * v,
                 QuarticWitness{2 * u * v * (u + v), Int(1), abs(u + v)});
  cb.add_witness(Side::E, ClassOrigin::Seed, -u * v,
                 QuarticWitness{2 * u * v * (u - v), Int(1), abs(u - v)});
  cb.add_witness(Side::E, ClassOrigin::Seed, d, QuarticWitness{u * d, Int(1), abs(u)});
  cb.add_witness(Side::E, ClassOrigin::Seed, -d, QuarticWitness{v * d, Int(1), abs(v)});
  cb.add_witness(Side::E, ClassOrigin::Seed, inst.witness_b1, inst.witness);
  cb.add_witness(Side::Ebar, ClassOrigin::Seed, Int(1),
                 QuarticWitness{u * u * u * u - v * v * v * v, Int(1), abs(d)});
  return cb.finish(0);
}

std::vector<Table1Row> table1_rows() {
  struct Raw {
    long r, s;
    const char* a;
  };
  static const Raw kRows[] = {
      {1, 2, "-210"},          {1, 3, "-3570"},         {3, 4, "31050"},
      {1, 4, "-22134"},        {5, 6, "3010350"},       {4, 7, "-4349280"},
      {5, 7, "405150"},        {6, 7, "13090680"},      {1, 8, "-1535430"},
      {4, 9, "-33309024"},     {4, 11, "-132269664"},   {3, 5, "-263466"},
      {4, 5, "468384"},        {1, 9, "-3128874"},      {5, 11, "-168706650"},
      {5, 13, "-541943850"},   {12, 13, "3121596576"},  {13, 16, "6060449850"},
      {1, 40, "-24552945606"},
  };
  std::vector<Table1Row> rows;
  for (const Raw& raw : kRows) {
    Table1Row row;
    row.r = raw.r;
    row.s = raw.s;
    row.expected_a = Int(raw.a);
    row.computed_a = family1_instance(row.r, row.s).a_value;
    row.match = row.computed_a == row.expected_a;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Rat horner(const std::vector<long>& coeffs_desc, const Rat& t) {
  Rat acc(0);
  for (long c : coeffs_desc) acc = acc * t + c;
  return acc;
}

Rat quartic_rhs(const Rat& t) {
  // y1^2 = -896 t^4 - 40 t^2 + 1
  return horner({-896, 0, -40, 0, 1}, t);
}

}  // namespace

Family2Instance family2_instance(const Int& r1, const Int& s, const Rat& y_root) {
  if (r1 == 0 || s == 0) throw std::domain_error("family2_instance: r1, s must be nonzero");
  if (!coprime(r1, s)) throw std::domain_error("family2_instance: r1, s must be coprime");
  Family2Instance inst;
  inst.r1 = abs(r1);
  inst.s = abs(s);
  inst.t = make_rat(inst.r1, inst.s);
  inst.y_root = y_root;
  if (y_root * y_root != quartic_rhs(inst.t)) {
    throw std::domain_error("family2_instance: y_root does not satisfy the quartic");
  }
  const Int r2 = inst.r1 * inst.r1;
  const Int s2 = inst.s * inst.s;
  inst.a_value = -96 * r2 * (8 * r2 - s2) * (16 * r2 + s2) * (32 * r2 - s2);

  const Rat& t = inst.t;
  Rat t2 = t * t;
  Rat c = 96 * t2 * (8 * t2 - 1) * (16 * t2 + 1) * (32 * t2 - 1);
  inst.curve_constant = abs(c);
  inst.specialized = Curve(-c * c);

  inst.p = Point::affine(horner({393216, 0, 36864, 0, 0, 0, -48, 0, 0}, t),
                         horner({150994944, 0, 9437184, 0, -442368, 0, -18432, 0, 576,
                                 0, 0, 0},
                                t));
  inst.q = Point::affine(
      horner({294912, 0, -18432, 0, -2304, 0, 0, 0, 0}, t),
      horner({4718592, 0, -884736, 0, 0, 0, 4608, 0, 0, 0, 0}, t) * y_root);
  inst.r = Point::affine(horner({409600, 0, -20480, 0, 1536, 0, -32, 0, 1}, t),
                         horner({-73400320, 0, -32243712, 0, 2703360, 0, -81920, 0,
                                 1920, 0, 48, 0, -1},
                                t));
  for (const Point* pt : {&inst.p, &inst.q, &inst.r}) {
    if (!on_curve(inst.specialized, *pt)) {
      throw std::logic_error("family2_instance: point left the specialized curve");
    }
  }

  // Witness on the integer model y^2 = x^3 - a_value^2 x.
  Rat y_scaled = y_root * s2;
  if (rat_den(y_scaled) != 1) {
    throw std::logic_error("family2_instance: y_root * s^2 is not integral");
  }
  Int y_int = rat_num(y_scaled);
  inst.witness_b1 = 16 * r2 * (8 * r2 - s2) * (16 * r2 + s2);
  inst.witness = QuarticWitness{24 * inst.r1 * (8 * r2 - s2) * y_int, Int(1), 12 * inst.r1};
  Int b2 = (-inst.a_value * inst.a_value) / inst.witness_b1;
  if (!witness_satisfies(inst.witness_b1, b2, inst.witness)) {
    throw std::logic_error("family2_instance: quartic witness failed verification");
  }
  return inst;
}

std::optional<Family2Instance> family2_instance(const Int& r1, const Int& s) {
  if (r1 == 0 || s == 0) throw std::domain_error("family2_instance: r1, s must be nonzero");
  const Int r2 = r1 * r1, s2 = s * s;
  Int y;
  if (!is_perfect_square((16 * r2 + s2) * (-56 * r2 + s2), &y)) return std::nullopt;
  return family2_instance(r1, s, make_rat(y, s2));
}

std::vector<Table2Row> table2_products(const Family2Instance& inst) {
  const Int r2 = inst.r1 * inst.r1;
  const Int s2 = inst.s * inst.s;
  const Int p = 8 * r2 - s2;
  const Int q = 16 * r2 + s2;
  const Int w = 32 * r2 - s2;
  const Int u = q;           // r = 4 r1 turns u = r^2 + s^2 into 16 r1^2 + s^2
  const Int v = w;           // and v = 2 r^2 - s^2 into 32 r1^2 - s^2
  const Int mult = p * q;    // the new alpha element adjoined by the screening

  struct Spec {
    const char* label;
    Int uv_form;      // the class in u, v notation, "+" branch
    Int r1s_form;     // the tabulated new element, "+" branch
    bool multiplied;  // r1s_form = class * mult (true) or = class itself (false)
  };
  // The u^2 - v^2 row's tabulated value is the class itself in r1, s form;
  // its product with mult lands on 6(16 r1^2 + s^2) instead. Both identities
  // are exercised in tests.
  const Spec rows[] = {
      {"1", Int(1), p * q, true},
      {"uv(u^2-v^2)", u * v * (u * u - v * v), -6 * w, true},
      {"uv", u * v, p * w, true},
      {"u^2-v^2", u * u - v * v, -6 * p, false},
      {"u(u+v)", u * (u + v), 3 * p, true},
      {"v(u+v)", v * (u + v), 3 * p * q * w, true},
      {"u(u-v)", u * (u - v), Int(-2), true},
      {"v(u-v)", v * (u - v), -2 * q * w, true},
  };
  std::vector<Table2Row> out;
  for (const Spec& row : rows) {
    SquareClass lhs = row.multiplied ? SquareClass(row.uv_form * mult)
                                     : SquareClass(row.uv_form);
    Table2Row t2;
    t2.label = row.label;
    t2.plus_value = SquareClass(row.r1s_form);
    t2.minus_value = SquareClass(-row.r1s_form);
    t2.verified = (lhs == t2.plus_value) &&
                  (SquareClass(-row.uv_form * (row.multiplied ? mult : Int(1))) ==
                   t2.minus_value);
    out.push_back(std::move(t2));
  }
  return out;
}

namespace {

// The quartic y1^2 = -896 t^4 - 40 t^2 + 1 has constant term 1, so it maps
// to the cubic y^2 = x^3 - 40 x^2 + 3584 x - 143360 by the classical
// quartic-to-Weierstrass change of variables; the seed point (2/15, 17/225)
// lands on (121, 1215). This cubic has a nonzero x^2 term, which the main
// curve type deliberately excludes, so the chord-tangent steps live here.
struct CubicModel {
  Rat a2{-40}, a4{3584}, a6{-143360};

  bool contains(const Rat& x, const Rat& y) const {
    return y * y == ((x + a2) * x + a4) * x + a6;
  }

  // Affine-only addition; callers avoid the 2-torsion points.
  std::pair<Rat, Rat> add(const std::pair<Rat, Rat>& lhs,
                          const std::pair<Rat, Rat>& rhs) const {
    const auto& [x1, y1] = lhs;
    const auto& [x2, y2] = rhs;
    Rat lambda;
    if (x1 == x2) {
      if (y1 == -y2) throw std::logic_error("cubic model: hit the identity");
      lambda = (3 * x1 * x1 + 2 * a2 * x1 + a4) / (2 * y1);
    } else {
      lambda = (y2 - y1) / (x2 - x1);
    }
    Rat x3 = lambda * lambda - a2 - x1 - x2;
    Rat y3 = lambda * (x1 - x3) - y1;
    return {x3, y3};
  }
};

std::size_t digits10(const Int& v) { return mpz_sizeinbase(v.get_mpz_t(), 10); }

}  // namespace

std::vector<Family2Parameters> family2_next_parameters(int count, int digit_cap) {
  if (count < 1) throw std::domain_error("family2_next_parameters: count must be >= 1");
  CubicModel model;
  const std::pair<Rat, Rat> seed{Rat(121), Rat(1215)};
  if (!model.contains(seed.first, seed.second)) {
    throw std::logic_error("family2_next_parameters: seed left the cubic model");
  }
  std::vector<Family2Parameters> out;
  std::set<Rat> seen;
  std::pair<Rat, Rat> current = seed;
  while (static_cast<int>(out.size()) < count) {
    const auto& [x, y] = current;
    if (y == 0) break;
    Rat t = (2 * x - 80) / y;
    Rat y1 = x * t * t / 2 - 1;
    if (t != 0) {
      if (y1 * y1 != quartic_rhs(t)) {
        throw std::logic_error("family2_next_parameters: ascent left the quartic");
      }
      Rat t_abs = abs(t);
      if (digits10(rat_num(t_abs)) > static_cast<std::size_t>(digit_cap) ||
          digits10(rat_den(t_abs)) > static_cast<std::size_t>(digit_cap)) {
        break;
      }
      if (seen.insert(t_abs).second) {
        out.push_back(Family2Parameters{abs(rat_num(t)), rat_den(t), t_abs, y1});
      }
    }
    current = model.add(current, seed);
  }
  return out;
}

}  // namespace cnkit
