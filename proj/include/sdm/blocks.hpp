#ifndef SDM_BLOCKS_HPP
#define SDM_BLOCKS_HPP

#include <utility>
#include <vector>

#include "sdm/core_dynamics.hpp"
#include "sdm/rational.hpp"
#include "sdm/words.hpp"

// Combinatorics of primitive blocks: psi, run decompositions, primitivity,
// enumeration, matching intervals, cascades and parameter location.
namespace sdm::blocks {

// psi(w) = w followed by the complement of its first |w|-1 symbols and a 1.
// pre: |w| >= 2.
Word psi(const Word& w);

// Run lengths l_1..l_{2n} with w = 1^{l1} 0^{l2} ... 0^{l_{2n}} 1,
// l_i >= 1 for i != 2n and l_{2n} >= 0. pre: w starts and ends with 1.
struct EllDecomposition {
  std::vector<long> runs;
};
EllDecomposition ell_decomposition(const Word& w);

enum class PrimitivityMethod { Definition, ContinuedFraction, Dynamic };

// Primitivity of a block, decidable three ways: the combinatorial
// definition, maximality of the associated quadratic interval, and a
// bounded exact-orbit run at the midpoint of the candidate interval.
// pre: |w| >= 2.
bool is_primitive(const Word& w, PrimitivityMethod method);

// Runs all three methods and throws std::logic_error on disagreement.
bool is_primitive_checked(const Word& w);

// All primitive blocks of length <= max_len, in (length, lex) order.
std::vector<Word> enumerate_primitive(int max_len);

struct MatchingInterval {
  Word omega;
  long m = 0;
  Int x_m;
  Rational L, R;

  Rational length() const { return R - L; }
  bool contains(const Rational& a) const { return L < a && a < R; }
};

// J_w = ((2^m+1)/(x_m+1), (2^m-1)/(x_m-1)). pre: w primitive.
MatchingInterval matching_interval(const Word& w);

// Digit sequences of 1 at the two endpoints, computed by exact iteration
// and checked against the predicted periodic words
// (w_1..w_{m-1} 0)^inf at R and (w (1-w))^inf at L.
std::pair<SignedDigitSeq, SignedDigitSeq> boundary_sequences(const Word& w);

// Intervals for w, psi(w), ..., psi^depth(w); consecutive intervals are
// verified to share an endpoint exactly: L(psi^k(w)) = R(psi^{k+1}(w)).
std::vector<MatchingInterval> cascade(const Word& w, int depth);

// Stable prefix of the limit word lim psi^k(w), n symbols.
Word limit_word_prefix(const Word& w, size_t n);

struct CascadeLimit {
  Rational lo, hi;      // certified enclosure of 1/p_w = lim L(psi^k(w))
  Rational p_lo, p_hi;  // enclosure of p_w itself
  Rational dyadic;      // correctly rounded, |dyadic - 1/p_w| <= 2^-bits
  int bits = 0;
};

// Enclosure of the cascade limit 1/p_w from the stable limit-word prefix.
CascadeLimit cascade_limit(const Word& w, int precision_bits);

struct LocateResult {
  enum class Kind { Interval, HighRegion, NonMatching, Boundary };
  enum class Side { Left, Right };
  Kind kind = Kind::NonMatching;
  Word omega;              // Interval/Boundary
  Side side = Side::Left;  // Boundary
  MatchingInterval interval;  // Interval
  core::MatchingResult match;
};

// Places a rational parameter: inside a matching interval J_w, in the
// m = 1 region (3/2, 2], exactly on an interval endpoint, or in neither.
LocateResult locate(const Rational& alpha);

}  // namespace sdm::blocks

#endif
