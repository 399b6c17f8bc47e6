#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace cnkit {

// Arbitrary-precision signed integer and rational. Rationals are kept
// normalized (positive denominator, gcd(num, den) = 1), so equality is
// structural.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_from_string(const std::string& decimal) { return Int(decimal); }

// Normalized rational num/den, den != 0.
Rat make_rat(const Int& num, const Int& den);

inline Int rat_num(const Rat& q) { return q.get_num(); }
inline Int rat_den(const Rat& q) { return q.get_den(); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline bool coprime(const Int& a, const Int& b) { return gcd(a, b) == 1; }

// floor(sqrt(n)), n >= 0.
Int isqrt(const Int& n);

// True iff n = k^2 for some k >= 0; stores k through root when given.
bool is_perfect_square(const Int& n, Int* root = nullptr);

// Deterministic factorization of |n|, n != 0: trial division up to
// trial_bound, then Pollard-Brent rho on whatever is left. Returns
// (prime, exponent) pairs sorted by prime.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n,
                                                unsigned long trial_bound = 1000000);

// n = s * f^2 with s squarefree, sign(s) = sign(n), f >= 1. Throws
// std::domain_error on n = 0.
struct SquarefreeParts {
  Int squarefree;
  Int root;  // the f in n = s * f^2
};
SquarefreeParts squarefree_decompose(const Int& n);

// Product of the distinct primes dividing |n|.
Int radical(const Int& n);

// An element of Q^x / (Q^x)^2, represented by its unique signed squarefree
// integer representative (never zero).
class SquareClass {
 public:
  // Reduces n to its squarefree part. n != 0.
  explicit SquareClass(const Int& n);
  // Class of a nonzero rational p/d == class of p*d.
  explicit SquareClass(const Rat& q);

  const Int& rep() const { return rep_; }
  bool is_one() const { return rep_ == 1; }

  friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.rep_ == b.rep_;
  }
  friend bool operator!=(const SquareClass& a, const SquareClass& b) {
    return !(a == b);
  }
  // Orders by (|rep|, sign) with the positive representative first, the same
  // order used for b1 enumeration and certificate output.
  friend bool operator<(const SquareClass& a, const SquareClass& b);

 private:
  struct AlreadyReduced {};
  SquareClass(Int rep, AlreadyReduced) : rep_(std::move(rep)) {}
  Int rep_;
};

SquareClass square_class(const Rat& q);
inline SquareClass square_class(const Int& n) { return SquareClass(n); }
SquareClass sqclass_mul(const SquareClass& a, const SquareClass& b);

}  // namespace cnkit
