#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cnkit/homomorphisms.hpp"
#include "cnkit/quartic.hpp"

namespace cnkit {

// All signed squarefree divisors b1 of the side constant, ordered by
// (|b1|, sign) with + first; b2 = constant / b1 is always integral.
std::vector<SquareClass> enumerate_b1(const Int& constant);

// Bounded search over 0 <= e, M <= height, (e, M) != (0, 0). Nondegenerate
// candidates must pass the gcd side conditions of the chosen variant;
// degenerate rows (e = 0 or M = 0) are the paper's torsion-style witnesses
// and carry no gcd constraint. Returns the lexicographically least witness
// by (e, M, |N|, N >= 0 first), or LocallyExcluded when the sign test or the
// mod-16 / mod-9 sieve rules out every solution, else ExhaustedToHeight.
// threads > 1 partitions the e-range; the merge keeps the global least.
SearchOutcome solve_quartic(const QuarticProblem& p, long height,
                            GcdVariant variant = GcdVariant::Paper, int threads = 1);

// Smallest superset of `classes` (plus 1) closed under sqclass_mul.
std::set<SquareClass> subgroup_closure(const std::set<SquareClass>& classes);

// How a class entered the certificate.
enum class ClassOrigin { Torsion, Search, Seed, Product };

struct ClassEntry {
  SquareClass cls;
  ClassOrigin origin;
  std::optional<Quadruple> quad;  // present for Search/Seed
};

struct SeedWitness {
  Side side;
  Int b1;  // need not be squarefree; the class is its squarefree part
  QuarticWitness w;
};

struct DescentCertificate {
  Int a_curve;          // E: y^2 = x(x^2 + a_curve); Ebar constant is -4 a_curve
  long height = 0;      // search height used (0 = constructive only)
  GcdVariant variant = GcdVariant::Paper;
  std::vector<ClassEntry> alpha;     // sorted by class
  std::vector<ClassEntry> alphabar;  // sorted by class
  int rank_lower_bound = 0;

  const ClassEntry* find(Side side, const SquareClass& cls) const;
  bool has_class(Side side, const SquareClass& cls) const;
};

// log2(|alpha| * |alphabar|) - 2, floored at 0. Sizes must be powers of 2.
int rank_lower_bound_from_sizes(std::size_t alpha_size, std::size_t alphabar_size);
int rank_lower_bound(const DescentCertificate& cert);

// Re-verifies every witness (equation + nontriviality; gcd conditions too
// for Search origins), subgroup closure and power-of-two sizes, and the rank
// formula. Throws std::logic_error on any violation.
void validate_certificate(const DescentCertificate& cert);

class QuarticCache;  // defined in cnkit/cache.hpp

// Incremental certificate assembly. Witnesses are verified as they are
// installed; finish() closes both class sets, fills in product entries and
// computes the rank bound. The first entry installed for a class wins.
class CertificateBuilder {
 public:
  CertificateBuilder(Int a_curve, GcdVariant variant);

  Int side_constant(Side side) const;
  void add_torsion(Side side, const SquareClass& cls);
  // b1 need not be squarefree; it must divide the side constant and the
  // witness must solve N^2 = b1 M^4 + (constant/b1) e^4.
  void add_witness(Side side, ClassOrigin origin, const Int& b1, const QuarticWitness& w);
  // Torsion classes of y^2 = x(x^2 + a) and its dual.
  void seed_torsion();
  // Imports a certificate for the quartic twist other.a_curve * k^4 == a_curve:
  // classes transfer verbatim, witnesses lift by (N,e,M) -> (k^2 N, e, k M).
  void merge_lifted(const DescentCertificate& other, const Int& k);
  DescentCertificate finish(long height);

 private:
  void insert(Side side, ClassEntry entry);

  Int a_curve_;
  GcdVariant variant_;
  std::map<SquareClass, ClassEntry> alpha_, alphabar_;
};

// Full descent: torsion seeding, user seeds, quartic searches over
// enumerate_b1 on both sides, subgroup closure, rank bound.
DescentCertificate build_certificate(const Int& a_curve, long height,
                                     const std::vector<SeedWitness>& seeds = {},
                                     GcdVariant variant = GcdVariant::Paper,
                                     int threads = 1, QuarticCache* cache = nullptr);

// One step of the Prop 5.1 cascade audit trail. Invariants, with A the
// constructive constant of the stage's curve (a_curve = -A^2):
//   Form1: A = 16 r s (r^2 - s^2) * extracted_square
//   Form2: A = 32 w z (w^2 + z^2) * extracted_square
// where extracted_square collects beta^2 (and gamma^2, and every square
// pulled out by earlier stages or reductions).
struct CascadeState {
  enum class Stage { Form1, Form2 };
  Stage stage;
  Int first;   // r (Form1) or w (Form2)
  Int second;  // s (Form1) or z (Form2)
  Int beta;
  Int gamma;   // Form2 only
  Int extracted_square;
  int depth = 0;
};

// Constructive rank >= 1 certificate for y^2 = x^3 - (u^4 - v^4)^2 x from the
// witness tables, walking form1/form2 until the installed classes separate;
// non-minimal inputs (rs a square up to sign) are reduced and the reduction
// recorded. Requires gcd(u, v) = 1, u^4 != v^4, not both even.
std::pair<DescentCertificate, std::vector<CascadeState>> cascade_u4v4(const Int& u,
                                                                      const Int& v);

// Constructive rank >= 1 certificate for y^2 = x^3 - A^2 x, A = uv(u^2-v^2),
// from the Prop 5.2 table, delegating the degenerate square classes as the
// paper does. Requires gcd(u, v) = 1 and uv(u^2 - v^2) != 0.
DescentCertificate certificate_for_uv(const Int& u, const Int& v);

// Cascade wrapper that also reports the audit trail for certificate_for_uv
// paths that delegate; empty when no delegation happened.
struct UvCertificate {
  DescentCertificate cert;
  std::vector<CascadeState> trail;
};
UvCertificate certificate_for_uv_with_trail(const Int& u, const Int& v);

}  // namespace cnkit
