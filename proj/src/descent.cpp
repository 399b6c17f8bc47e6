#include "cnkit/descent.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <climits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cnkit/cache.hpp"

namespace cnkit {

std::string to_string(Side side) { return side == Side::E ? "E" : "Ebar"; }

std::string to_string(GcdVariant variant) {
  return variant == GcdVariant::Paper ? "paper" : "standard";
}

std::vector<SquareClass> enumerate_b1(const Int& constant) {
  if (constant == 0) throw std::domain_error("enumerate_b1: zero constant");
  std::vector<Int> primes;
  for (const auto& [p, e] : factorize(constant)) primes.push_back(p);
  std::vector<Int> divisors{1};
  for (const Int& p : primes) {
    const std::size_t n = divisors.size();
    for (std::size_t i = 0; i < n; ++i) divisors.push_back(divisors[i] * p);
  }
  std::sort(divisors.begin(), divisors.end());
  std::vector<SquareClass> out;
  out.reserve(2 * divisors.size());
  for (const Int& d : divisors) {
    out.push_back(SquareClass(d));
    out.push_back(SquareClass(-d));
  }
  return out;
}

namespace {

unsigned long mod_ui(const Int& v, unsigned long m) {
  return mpz_fdiv_ui(v.get_mpz_t(), m);  // nonnegative remainder
}

// True when the congruence N^2 = b1 M^4 + b2 e^4 (mod m) has no admissible
// residue pair; p is the prime whose gcd(M, e) constraint applies.
bool sieve_excludes(const Int& b1, const Int& b2, unsigned long m, unsigned long p) {
  std::array<bool, 64> is_square{};
  for (unsigned long i = 0; i < m; ++i) is_square[(i * i) % m] = true;
  const unsigned long b1m = mod_ui(b1, m);
  const unsigned long b2m = mod_ui(b2, m);
  for (unsigned long e = 0; e < m; ++e) {
    for (unsigned long big_m = 0; big_m < m; ++big_m) {
      if (e % p == 0 && big_m % p == 0) continue;  // would force p | gcd(M, e)
      unsigned long m4 = (((big_m * big_m) % m) * ((big_m * big_m) % m)) % m;
      unsigned long e4 = (((e * e) % m) * ((e * e) % m)) % m;
      if (is_square[(b1m * m4 + b2m * e4) % m]) return false;
    }
  }
  return true;
}

struct GridHit {
  long e = LONG_MAX;
  long m = 0;
  Int n;

  bool beats(const GridHit& other) const {
    if (e != other.e) return e < other.e;
    return m < other.m;
  }
};

// Scans the stripe e = first, first+step, ... <= height; stops early once e
// passes the best e found anywhere.
void scan_stripe(const QuarticProblem& p, long height, GcdVariant variant, long first,
                 long step, const std::vector<Int>& pow4, std::atomic<long>& best_e,
                 GridHit& out) {
  for (long e = first; e <= height; e += step) {
    if (e > best_e.load(std::memory_order_relaxed)) break;
    const Int b2e4 = p.b2 * pow4[static_cast<std::size_t>(e)];
    for (long m = (e == 0) ? 1 : 0; m <= height; ++m) {
      Int v = p.b1 * pow4[static_cast<std::size_t>(m)] + b2e4;
      Int root;
      if (v < 0 || !is_perfect_square(v, &root)) continue;
      QuarticWitness w{root, Int(e), Int(m)};
      if (e > 0 && m > 0 && !witness_gcd_conditions(p.b1, p.b2, w, variant)) continue;
      out = GridHit{e, m, root};
      long prev = best_e.load(std::memory_order_relaxed);
      while (e < prev && !best_e.compare_exchange_weak(prev, e)) {
      }
      return;  // first hit in this stripe is its lexicographic least
    }
  }
}

}  // namespace

SearchOutcome solve_quartic(const QuarticProblem& p, long height, GcdVariant variant,
                            int threads) {
  if (height < 1) throw std::domain_error("solve_quartic: height must be >= 1");
  if (p.b1 == 0 || p.b2 == 0) throw std::domain_error("solve_quartic: zero coefficient");
  // Real place: both coefficients negative leaves no nontrivial N^2 >= 0.
  if (p.b1 < 0 && p.b2 < 0) return SearchOutcome::excluded(0);
  if (sieve_excludes(p.b1, p.b2, 16, 2)) return SearchOutcome::excluded(16);
  if (sieve_excludes(p.b1, p.b2, 9, 3)) return SearchOutcome::excluded(9);

  std::vector<Int> pow4(static_cast<std::size_t>(height) + 1);
  for (long i = 0; i <= height; ++i) {
    Int sq = Int(i) * i;
    pow4[static_cast<std::size_t>(i)] = sq * sq;
  }

  const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(height) + 1));
  std::vector<GridHit> hits(static_cast<std::size_t>(nthreads));
  std::atomic<long> best_e{LONG_MAX};
  if (nthreads == 1) {
    scan_stripe(p, height, variant, 0, 1, pow4, best_e, hits[0]);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      workers.emplace_back(scan_stripe, std::cref(p), height, variant, t, nthreads,
                           std::cref(pow4), std::ref(best_e),
                           std::ref(hits[static_cast<std::size_t>(t)]));
    }
    for (auto& th : workers) th.join();
  }

  const GridHit* best = nullptr;
  for (const GridHit& h : hits) {
    if (h.e == LONG_MAX) continue;
    if (best == nullptr || h.beats(*best)) best = &h;
  }
  if (best == nullptr) return SearchOutcome::exhausted(height);
  return SearchOutcome::solved(QuarticWitness{best->n, Int(best->e), Int(best->m)});
}

std::set<SquareClass> subgroup_closure(const std::set<SquareClass>& classes) {
  std::set<SquareClass> out{SquareClass(Int(1))};
  for (const SquareClass& g : classes) {
    if (out.count(g)) continue;
    std::set<SquareClass> next = out;
    for (const SquareClass& h : out) next.insert(g * h);
    out = std::move(next);
  }
  return out;
}

int rank_lower_bound_from_sizes(std::size_t alpha_size, std::size_t alphabar_size) {
  auto log2_exact = [](std::size_t n) {
    if (n == 0 || (n & (n - 1)) != 0) {
      throw std::logic_error("rank formula: group order is not a power of two");
    }
    int k = 0;
    while (n > 1) {
      n >>= 1;
      ++k;
    }
    return k;
  };
  int total = log2_exact(alpha_size) + log2_exact(alphabar_size);
  return std::max(0, total - 2);
}

int rank_lower_bound(const DescentCertificate& cert) {
  return rank_lower_bound_from_sizes(cert.alpha.size(), cert.alphabar.size());
}

const ClassEntry* DescentCertificate::find(Side side, const SquareClass& cls) const {
  const auto& entries = (side == Side::E) ? alpha : alphabar;
  for (const ClassEntry& e : entries) {
    if (e.cls == cls) return &e;
  }
  return nullptr;
}

bool DescentCertificate::has_class(Side side, const SquareClass& cls) const {
  return find(side, cls) != nullptr;
}

CertificateBuilder::CertificateBuilder(Int a_curve, GcdVariant variant)
    : a_curve_(std::move(a_curve)), variant_(variant) {
  if (a_curve_ == 0) throw std::domain_error("certificate: a_curve must be nonzero");
}

Int CertificateBuilder::side_constant(Side side) const {
  return side == Side::E ? a_curve_ : Int(-4 * a_curve_);
}

void CertificateBuilder::add_torsion(Side side, const SquareClass& cls) {
  insert(side, ClassEntry{cls, ClassOrigin::Torsion, std::nullopt});
}

void CertificateBuilder::add_witness(Side side, ClassOrigin origin, const Int& b1,
                                     const QuarticWitness& w) {
  Int constant = side_constant(side);
  if (b1 == 0 || constant % b1 != 0) {
    throw std::logic_error("certificate: b1 does not divide the side constant");
  }
  Int b2 = constant / b1;
  if (!witness_satisfies(b1, b2, w)) {
    throw std::logic_error("certificate: witness fails N^2 = b1 M^4 + b2 e^4");
  }
  insert(side, ClassEntry{SquareClass(b1), origin, Quadruple{b1, b2, w}});
}

void CertificateBuilder::seed_torsion() {
  add_torsion(Side::E, SquareClass(Int(1)));
  add_torsion(Side::E, SquareClass(a_curve_));
  Int root;
  if (is_perfect_square(-a_curve_, &root)) {
    add_torsion(Side::E, SquareClass(root));
    add_torsion(Side::E, SquareClass(-root));
  }
  add_torsion(Side::Ebar, SquareClass(Int(1)));
  add_torsion(Side::Ebar, SquareClass(-a_curve_));
  if (is_perfect_square(a_curve_, &root)) {
    add_torsion(Side::Ebar, SquareClass(2 * root));
    add_torsion(Side::Ebar, SquareClass(-2 * root));
  }
}

void CertificateBuilder::merge_lifted(const DescentCertificate& other, const Int& k) {
  if (other.a_curve * k * k * k * k != a_curve_) {
    throw std::logic_error("certificate merge: curves not related by a k^4 twist");
  }
  for (Side side : {Side::E, Side::Ebar}) {
    const auto& entries = (side == Side::E) ? other.alpha : other.alphabar;
    for (const ClassEntry& e : entries) {
      if (e.quad.has_value()) {
        QuarticWitness lifted{k * k * e.quad->w.N, e.quad->w.e, k * e.quad->w.M};
        add_witness(side, ClassOrigin::Seed, e.quad->b1, lifted);
      } else if (e.origin != ClassOrigin::Product) {
        add_torsion(side, e.cls);  // product entries are re-derived by closure
      }
    }
  }
}

DescentCertificate CertificateBuilder::finish(long height) {
  DescentCertificate cert;
  cert.a_curve = a_curve_;
  cert.height = height;
  cert.variant = variant_;
  for (Side side : {Side::E, Side::Ebar}) {
    auto& src = (side == Side::E) ? alpha_ : alphabar_;
    std::set<SquareClass> present;
    for (const auto& [cls, entry] : src) present.insert(cls);
    for (const SquareClass& cls : subgroup_closure(present)) {
      if (!present.count(cls)) {
        src.emplace(cls, ClassEntry{cls, ClassOrigin::Product, std::nullopt});
      }
    }
    auto& dst = (side == Side::E) ? cert.alpha : cert.alphabar;
    for (const auto& [cls, entry] : src) dst.push_back(entry);
  }
  cert.rank_lower_bound = rank_lower_bound_from_sizes(cert.alpha.size(), cert.alphabar.size());
  validate_certificate(cert);
  return cert;
}

void CertificateBuilder::insert(Side side, ClassEntry entry) {
  auto& dst = (side == Side::E) ? alpha_ : alphabar_;
  dst.emplace(entry.cls, std::move(entry));  // first entry for a class wins
}

void validate_certificate(const DescentCertificate& cert) {
  for (Side side : {Side::E, Side::Ebar}) {
    const auto& entries = (side == Side::E) ? cert.alpha : cert.alphabar;
    const Int constant = (side == Side::E) ? cert.a_curve : Int(-4 * cert.a_curve);
    std::set<SquareClass> classes;
    for (const ClassEntry& e : entries) {
      classes.insert(e.cls);
      if (!e.quad.has_value()) continue;
      const Quadruple& q = *e.quad;
      if (q.b1 * q.b2 != constant) {
        throw std::logic_error("certificate: b1*b2 mismatch with side constant");
      }
      if (SquareClass(q.b1) != e.cls) {
        throw std::logic_error("certificate: witness b1 is not in the claimed class");
      }
      if (!witness_satisfies(q.b1, q.b2, q.w)) {
        throw std::logic_error("certificate: stored witness fails verification");
      }
      if (e.origin == ClassOrigin::Search && q.w.e > 0 && q.w.M > 0 &&
          !witness_gcd_conditions(q.b1, q.b2, q.w, cert.variant)) {
        throw std::logic_error("certificate: search witness fails gcd conditions");
      }
    }
    if (!classes.count(SquareClass(Int(1)))) {
      throw std::logic_error("certificate: class set is missing 1");
    }
    for (const SquareClass& a : classes) {
      for (const SquareClass& b : classes) {
        if (!classes.count(a * b)) {
          throw std::logic_error("certificate: class set is not closed under products");
        }
      }
    }
    std::size_t n = classes.size();
    if ((n & (n - 1)) != 0) {
      throw std::logic_error("certificate: class set size is not a power of two");
    }
    if (classes.size() != entries.size()) {
      throw std::logic_error("certificate: duplicate class entries");
    }
  }
  int expected = rank_lower_bound_from_sizes(cert.alpha.size(), cert.alphabar.size());
  if (cert.rank_lower_bound != expected) {
    throw std::logic_error("certificate: rank lower bound does not match the class counts");
  }
}

DescentCertificate build_certificate(const Int& a_curve, long height,
                                     const std::vector<SeedWitness>& seeds,
                                     GcdVariant variant, int threads, QuarticCache* cache) {
  if (a_curve == 0) throw std::domain_error("build_certificate: a_curve must be nonzero");
  CertificateBuilder cb(a_curve, variant);
  cb.seed_torsion();
  for (const SeedWitness& s : seeds) {
    cb.add_witness(s.side, ClassOrigin::Seed, s.b1, s.w);
  }
  for (Side side : {Side::E, Side::Ebar}) {
    const Int constant = cb.side_constant(side);
    for (const SquareClass& cls : enumerate_b1(constant)) {
      QuarticProblem problem{cls.rep(), constant / cls.rep(), side};
      SearchOutcome outcome = [&] {
        if (cache != nullptr) {
          if (auto cached = cache->lookup(a_curve, side, problem.b1, height)) return *cached;
        }
        SearchOutcome fresh = solve_quartic(problem, height, variant, threads);
        if (cache != nullptr) cache->record(a_curve, side, problem.b1, height, fresh);
        return fresh;
      }();
      if (outcome.kind == SearchOutcome::Kind::Solved) {
        cb.add_witness(side, ClassOrigin::Search, problem.b1, *outcome.witness);
      }
    }
  }
  return cb.finish(height);
}

namespace {

// --- Prop 5.1 cascade -------------------------------------------------------

// Signed (r, s) with lemma42_param(r, s) = (x, y, beta), |x| = u, |y| = v.
// Guarantees u^4 - v^4 == 16 r s (r^2 - s^2) beta^2 exactly.
std::pair<Int, Int> invert_lemma42(const Int& u, const Int& v, const Int& beta) {
  for (Int r = -isqrt(beta); r <= isqrt(beta); ++r) {
    Int s2 = beta - r * r;
    Int s_abs;
    if (s2 < 0 || !is_perfect_square(s2, &s_abs)) continue;
    for (const Int& s : {s_abs, -s_abs}) {
      Int x = r * r + 2 * r * s - s * s;
      Int y = r * r - 2 * r * s - s * s;
      if (abs(x) == u && abs(y) == v) return {r, s};
      if (abs(x) == v && abs(y) == u) return {-r, s};  // swaps x and y
      if (s == 0) break;
    }
  }
  throw std::logic_error("invert_lemma42: no parametrization found");
}

// r^2 - s^2 = +/- gamma^2 (sign = c1) with r, s coprime of opposite parity.
// Returns (w, z, gamma), w, z coprime of opposite parity and signed so that
// 16 r s (r^2 - s^2) == 32 w z (w^2 + z^2) gamma^2.
std::array<Int, 3> invert_pythagoras(Int r, Int s, int c1) {
  if (c1 == -1) std::swap(r, s);  // s^2 - r^2 square; roles switched
  if (r < 0) {
    r = -r;
    s = -s;  // rs(r^2-s^2) is invariant
  }
  Int gamma;
  if (!is_perfect_square(r * r - s * s, &gamma)) {
    throw std::logic_error("invert_pythagoras: r^2 - s^2 is not a square");
  }
  Int w, z_abs;
  if ((r + gamma) % 2 != 0 || !is_perfect_square((r + gamma) / 2, &w) ||
      !is_perfect_square((r - gamma) / 2, &z_abs)) {
    throw std::logic_error("invert_pythagoras: Pythagorean inversion failed");
  }
  if (w == 0) throw std::logic_error("invert_pythagoras: degenerate w = 0");
  Int z = (s >= 0) ? z_abs : -z_abs;
  if (2 * w * z != s) throw std::logic_error("invert_pythagoras: s != 2wz");
  if (c1 == -1) z = -z;  // absorbs the sign of r^2 - s^2
  return {w, z, gamma};
}

struct CascadeRun {
  CertificateBuilder* cb;
  Int a_total;  // the curve constant -(u^4 - v^4)^2
  std::vector<CascadeState>* states;
  int depth = 0;
};

std::pair<DescentCertificate, std::vector<CascadeState>> cascade_impl(const Int& u_in,
                                                                      const Int& v_in);

// A == 32 w z (w^2 + z^2) B^2 g^2; installs the Ebar witness and either stops
// or re-enters form1.
void cascade_form2(CascadeRun& run, const Int& A, const Int& w, const Int& z, const Int& B,
                   const Int& g);

// A == 16 r s (r^2 - s^2) B^2; installs the four T witnesses and branches.
void cascade_form1(CascadeRun& run, const Int& A, const Int& r, const Int& s, const Int& B) {
  if (A != 16 * r * s * (r * r - s * s) * B * B) {
    throw std::logic_error("cascade: form1 invariant violated");
  }
  run.states->push_back(CascadeState{CascadeState::Stage::Form1, r, s, B, Int(0), B * B,
                                     run.depth});
  ++run.depth;
  const Int d = r * r - s * s;
  const Int b_sq = B * B;
  run.cb->add_witness(Side::E, ClassOrigin::Seed, 16 * d * b_sq,
                      QuarticWitness{4 * r * B * d, Int(1), abs(r)});
  run.cb->add_witness(Side::E, ClassOrigin::Seed, -16 * d * b_sq,
                      QuarticWitness{4 * s * B * d, Int(1), abs(s)});
  run.cb->add_witness(Side::E, ClassOrigin::Seed, 16 * r * s * b_sq,
                      QuarticWitness{8 * r * s * B * (r + s), Int(1), abs(r + s)});
  run.cb->add_witness(Side::E, ClassOrigin::Seed, -16 * r * s * b_sq,
                      QuarticWitness{8 * r * s * B * (r - s), Int(1), abs(r - s)});
  SquareClass c1(d), c2(r * s);
  const SquareClass one(Int(1)), minus_one(Int(-1));
  if (c2 == one || c2 == minus_one) {
    // rs is +/- a square: the non-minimal case. Reduce to (r1, s1) with
    // |r| = r1^2, |s| = s1^2 and lift the sub-cascade back up.
    Int r1, s1;
    if (!is_perfect_square(abs(r), &r1) || !is_perfect_square(abs(s), &s1)) {
      throw std::logic_error("cascade: rs = +/-square but r, s are not");
    }
    auto [sub, sub_states] = cascade_impl(r1, s1);
    Int k = 4 * r1 * s1 * abs(B);
    run.cb->merge_lifted(sub, k);
    for (CascadeState st : sub_states) {
      st.depth += run.depth;
      run.states->push_back(st);
    }
    return;
  }
  if (c1 == one || c1 == minus_one) {
    auto [w, z, gamma] = invert_pythagoras(r, s, c1 == one ? 1 : -1);
    cascade_form2(run, A, w, z, B, gamma);
    return;
  }
  // c1, c2 both nontrivial: +/-1, +/-c1, +/-c2, +/-class(A) are eight
  // distinct classes; nothing further to install.
}

void cascade_form2(CascadeRun& run, const Int& A, const Int& w, const Int& z, const Int& B,
                   const Int& g) {
  if (A != 32 * w * z * (w * w + z * z) * B * B * g * g) {
    throw std::logic_error("cascade: form2 invariant violated");
  }
  run.states->push_back(CascadeState{CascadeState::Stage::Form2, w, z, B, g, B * B * g * g,
                                     run.depth});
  ++run.depth;
  if (run.depth > 64) throw std::logic_error("cascade: depth bound exceeded");
  const Int ws = w * w + z * z;
  run.cb->add_witness(Side::Ebar, ClassOrigin::Seed, 64 * ws * B * B * g * g,
                      QuarticWitness{8 * w * B * g * ws, Int(1), abs(w)});
  SquareClass c3(ws);
  if (!c3.is_one()) return;  // |alphabar| >= 2; done
  // w^2 + z^2 = eps^2: pull the square out and return to form1.
  Int eps = isqrt(ws);
  Int a_param, b_abs;
  const Int& even_leg = (z % 2 == 0) ? z : w;
  const Int& odd_leg = (z % 2 == 0) ? w : z;
  Int odd_abs = abs(odd_leg);
  if ((eps + odd_abs) % 2 != 0 || !is_perfect_square((eps + odd_abs) / 2, &a_param) ||
      !is_perfect_square((eps - odd_abs) / 2, &b_abs)) {
    throw std::logic_error("cascade: form2 -> form1 inversion failed");
  }
  // a^2 - b^2 = |odd leg|, 2ab = even leg up to the signs fixed below.
  Int b_param = b_abs;
  if (odd_leg < 0) std::swap(a_param, b_param);   // flips the sign of a^2 - b^2
  if (even_leg < 0) b_param = -b_param;           // flips the sign of 2ab
  if (a_param * a_param - b_param * b_param != odd_leg ||
      2 * a_param * b_param != even_leg) {
    throw std::logic_error("cascade: form2 -> form1 sign fixup failed");
  }
  cascade_form1(run, A, a_param, b_param, 2 * B * g * eps);
}

std::pair<DescentCertificate, std::vector<CascadeState>> cascade_impl(const Int& u_in,
                                                                      const Int& v_in) {
  if (u_in % 2 == 0 && v_in % 2 == 0) {
    throw std::domain_error("cascade_u4v4: u and v are both even");
  }
  if (!coprime(u_in, v_in)) throw std::domain_error("cascade_u4v4: u, v not coprime");
  Int u = abs(u_in), v = abs(v_in);
  if (u < v) std::swap(u, v);
  if (u == v) throw std::domain_error("cascade_u4v4: u^4 = v^4");
  if (v == 0) throw std::domain_error("cascade_u4v4: u, v must be nonzero");

  const Int A = u * u * u * u - v * v * v * v;
  const Int a_curve = -A * A;
  CertificateBuilder cb(a_curve, GcdVariant::Paper);
  cb.seed_torsion();
  cb.add_witness(Side::E, ClassOrigin::Seed, Int(1), QuarticWitness{Int(1), Int(0), Int(1)});
  cb.add_witness(Side::E, ClassOrigin::Seed, Int(-1), QuarticWitness{A, Int(1), Int(0)});
  cb.add_witness(Side::E, ClassOrigin::Seed, A, QuarticWitness{Int(0), Int(1), Int(1)});
  cb.add_witness(Side::E, ClassOrigin::Seed, -A, QuarticWitness{Int(0), Int(1), Int(1)});
  cb.add_witness(Side::Ebar, ClassOrigin::Seed, Int(1),
                 QuarticWitness{u * u * u * u * u * u * u * u - v * v * v * v * v * v * v * v,
                                u * v, A});

  std::vector<CascadeState> states;
  CascadeRun run{&cb, a_curve, &states, 0};

  const Int two_uv_sq = 2 * (u * u + v * v);
  cb.add_witness(Side::Ebar, ClassOrigin::Seed, two_uv_sq,
                 QuarticWitness{2 * (u - v) * (u * u + v * v), Int(1), u - v});
  if (!SquareClass(two_uv_sq).is_one()) {
    // Opposite parity (or simply no beta): 2(u^2+v^2) is a fresh Ebar class.
    return {cb.finish(0), states};
  }
  Int beta = isqrt((u * u + v * v) / 2);
  auto [r, s] = invert_lemma42(u, v, beta);
  cascade_form1(run, A, r, s, beta);
  return {cb.finish(0), states};
}

}  // namespace

std::pair<DescentCertificate, std::vector<CascadeState>> cascade_u4v4(const Int& u,
                                                                      const Int& v) {
  auto result = cascade_impl(u, v);
  if (result.first.rank_lower_bound < 1) {
    throw std::logic_error("cascade_u4v4: certificate fell short of rank 1");
  }
  return result;
}

namespace {

UvCertificate certificate_for_uv_impl(const Int& u, const Int& v) {
  if (!coprime(u, v)) throw std::domain_error("certificate_for_uv: u, v not coprime");
  const Int A = u * v * (u * u - v * v);
  if (A == 0) throw std::domain_error("certificate_for_uv: uv(u^2 - v^2) = 0");
  const Int a_curve = -A * A;

  CertificateBuilder cb(a_curve, GcdVariant::Paper);
  cb.seed_torsion();
  const Int d = u * u - v * v;
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
  cb.add_witness(Side::Ebar, ClassOrigin::Seed, Int(1),
                 QuarticWitness{u * u * u * u - v * v * v * v, Int(1), abs(d)});

  std::vector<CascadeState> trail;
  const SquareClass one(Int(1)), minus_one(Int(-1));
  SquareClass c_uv(u * v), c_d(d);
  if (c_uv == one || c_uv == minus_one) {
    // |u| and |v| are both squares: Prop 5.1 applies to their roots.
    Int u1, v1;
    if (!is_perfect_square(abs(u), &u1) || !is_perfect_square(abs(v), &v1)) {
      throw std::logic_error("certificate_for_uv: uv = +/-square but u, v are not");
    }
    auto [sub, sub_trail] = cascade_u4v4(u1, v1);
    cb.merge_lifted(sub, u1 * v1);
    trail = std::move(sub_trail);
  } else if (c_d == one || c_d == minus_one) {
    // u^2 - v^2 collapses: move to u1 = u + v, v1 = u - v with A1 = 4A
    // (halved when both turn even) and pull the result back.
    Int uu = u, vv = v;
    if (c_d == minus_one) std::swap(uu, vv);  // same curve: a = -A^2
    Int u1 = uu + vv, v1 = uu - vv;
    if (u1 % 2 == 0 && v1 % 2 == 0) {
      UvCertificate sub = certificate_for_uv_impl(u1 / 2, v1 / 2);  // A2 = A / 4
      cb.merge_lifted(sub.cert, Int(2));
      trail = std::move(sub.trail);
    } else {
      UvCertificate sub = certificate_for_uv_impl(u1, v1);  // A1 = 4A
      // a = a1 / 16: push each witness down with e -> 2e.
      for (Side side : {Side::E, Side::Ebar}) {
        const auto& entries = (side == Side::E) ? sub.cert.alpha : sub.cert.alphabar;
        for (const ClassEntry& e : entries) {
          if (e.quad.has_value()) {
            QuarticWitness shrunk{e.quad->w.N, 2 * e.quad->w.e, e.quad->w.M};
            cb.add_witness(side, ClassOrigin::Seed, e.quad->b1, shrunk);
          } else if (e.origin != ClassOrigin::Product) {
            cb.add_torsion(side, e.cls);
          }
        }
      }
      trail = std::move(sub.trail);
    }
  }
  UvCertificate out{cb.finish(0), std::move(trail)};
  return out;
}

}  // namespace

UvCertificate certificate_for_uv_with_trail(const Int& u, const Int& v) {
  UvCertificate out = certificate_for_uv_impl(u, v);
  if (out.cert.rank_lower_bound < 1) {
    throw std::logic_error("certificate_for_uv: certificate fell short of rank 1");
  }
  return out;
}

DescentCertificate certificate_for_uv(const Int& u, const Int& v) {
  return certificate_for_uv_with_trail(u, v).cert;
}

}  // namespace cnkit
