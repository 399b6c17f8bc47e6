#include "cnkit/exactnum.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cnkit {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative input");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (root != nullptr) {
    mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  }
  return true;
}

namespace {

bool probably_prime(const Int& n) {
  // 30 reps = trial divisions + BPSW + extra Miller-Rabin rounds; exact for
  // everything below 2^64 and beyond any input this project produces after
  // trial division.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

// Pollard-Brent rho with deterministic parameter sequence.
Int pollard_brent(const Int& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    Int ys = y;
    const unsigned long m = 128;
    unsigned long r = 1;
    Int q = 1;
    while (d == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && d == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * ((x > y) ? x - y : y - x) % n;
        }
        d = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (d == n) {
      // Backtrack one step at a time.
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        d = gcd((x > ys) ? x - ys : ys - x, n);
      }
    }
    if (d != n) return d;
    // Cycle degenerated for this c; retry with the next increment.
  }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factorize(const Int& n, unsigned long trial_bound) {
  if (n == 0) throw std::domain_error("factorize: zero input");
  Int m = abs(n);
  std::map<Int, unsigned> factors;
  for (const unsigned long p : {2ul, 3ul, 5ul}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= p;
      ++factors[Int(p)];
    }
  }
  // 6k +- 1 wheel.
  for (unsigned long d = 7; d <= trial_bound; d += 6) {
    if (Int(d) * d > m) break;
    for (const unsigned long p : {d, d + 4}) {
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++factors[Int(p)];
      }
    }
  }
  if (m > 1) {
    if (Int(trial_bound) * trial_bound > m) {
      ++factors[m];  // below the trial square, so prime
    } else {
      factor_into(m, factors);
    }
  }
  return {factors.begin(), factors.end()};
}

SquarefreeParts squarefree_decompose(const Int& n) {
  if (n == 0) throw std::domain_error("squarefree_decompose: zero input");
  Int s = (n < 0) ? -1 : 1;
  Int f = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e % 2 == 1) s *= p;
    for (unsigned i = 0; i < e / 2; ++i) f *= p;
  }
  return {s, f};
}

Int radical(const Int& n) {
  Int r = 1;
  for (const auto& [p, e] : factorize(n)) r *= p;
  return r;
}

SquareClass::SquareClass(const Int& n) : rep_(squarefree_decompose(n).squarefree) {}

SquareClass::SquareClass(const Rat& q) {
  if (q == 0) throw std::domain_error("SquareClass: zero rational");
  // p/d == p*d modulo squares.
  rep_ = squarefree_decompose(rat_num(q) * rat_den(q)).squarefree;
}

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
  // Product of squarefree reps reduces by the square of their gcd.
  Int g = gcd(a.rep_, b.rep_);
  return SquareClass((a.rep_ / g) * (b.rep_ / g), SquareClass::AlreadyReduced{});
}

bool operator<(const SquareClass& a, const SquareClass& b) {
  Int aa = abs(a.rep_), ab = abs(b.rep_);
  if (aa != ab) return aa < ab;
  return a.rep_ > b.rep_;  // positive first
}

SquareClass square_class(const Rat& q) { return SquareClass(q); }

SquareClass sqclass_mul(const SquareClass& a, const SquareClass& b) { return a * b; }

}  // namespace cnkit
