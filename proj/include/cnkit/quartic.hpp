#pragma once

#include <optional>
#include <string>

#include "cnkit/exactnum.hpp"

namespace cnkit {

enum class Side { E, Ebar };

// Which gcd side-condition set the search enforces on nondegenerate
// candidates. Paper: gcd(M,e)=gcd(N,e)=gcd(b1,e)=gcd(b2,e)=gcd(M,N)=1.
// Standard replaces gcd(b2,e) with gcd(b2,M).
enum class GcdVariant { Paper, Standard };

// The homogeneous space N^2 = b1 M^4 + b2 e^4 attached to one side of the
// isogeny pair; b1*b2 equals that side's curve constant.
struct QuarticProblem {
  Int b1;
  Int b2;
  Side side = Side::E;
};

// A solution with e, M >= 0, (e, M) != (0, 0). N may carry either sign.
struct QuarticWitness {
  Int N;
  Int e;
  Int M;

  friend bool operator==(const QuarticWitness&, const QuarticWitness&) = default;
};

// Exact check of N^2 = b1 M^4 + b2 e^4 plus nontriviality.
bool witness_satisfies(const Int& b1, const Int& b2, const QuarticWitness& w);

// gcd side conditions for a nondegenerate (e >= 1, M >= 1) witness.
bool witness_gcd_conditions(const Int& b1, const Int& b2, const QuarticWitness& w,
                            GcdVariant variant);

struct SearchOutcome {
  enum class Kind { Solved, ExhaustedToHeight, LocallyExcluded };

  Kind kind;
  std::optional<QuarticWitness> witness;  // Solved
  long height = 0;                        // ExhaustedToHeight
  int modulus = 0;  // LocallyExcluded: 16 or 9; 0 marks the real place (b1, b2 < 0)

  static SearchOutcome solved(QuarticWitness w) {
    return {Kind::Solved, std::move(w), 0, 0};
  }
  static SearchOutcome exhausted(long h) { return {Kind::ExhaustedToHeight, {}, h, 0}; }
  static SearchOutcome excluded(int modulus) {
    return {Kind::LocallyExcluded, {}, 0, modulus};
  }
};

std::string to_string(Side side);
std::string to_string(GcdVariant variant);

}  // namespace cnkit
