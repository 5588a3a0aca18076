#ifndef SDM_CORE_DYNAMICS_HPP
#define SDM_CORE_DYNAMICS_HPP

#include <string>
#include <utility>

#include "sdm/rational.hpp"
#include "sdm/words.hpp"

// Exact iteration of the symmetric doubling maps S_a(x) = 2x - d*a on [-1,1]
// and of the auxiliary maps (doubling, tent, Farey) on [0,1].
namespace sdm::core {

// Branch digit of x: -1 on [-1,-1/2), 0 on the closed middle interval, 1 on (1/2,1].
int signed_digit(const Rational& x);

// One step of S_a. Returns (2x - d*a, d). pre: |x| <= 1, 1 <= a <= 2.
std::pair<Rational, int> s_alpha_step(const Rational& x, const Rational& alpha);

enum class AuxMap { Doubling, Tent, Farey };

// Exact image under the named map on [0,1] (doubling requires x < 1).
Rational aux_map_step(AuxMap kind, const Rational& x);

// Binary digit of the doubling map: 1 iff x >= 1/2.
int binary_digit(const Rational& x);

// Signed digit sequence d_a(x): iterates S_a with exact cycle detection over
// visited orbit points; truncated if max_steps runs out before a repeat.
SignedDigitSeq signed_digit_sequence(const Rational& x, const Rational& alpha, long max_steps);

struct MatchingResult {
  enum class Kind { Matched, MarkovNoMatch, CycleNoMatch };
  Kind kind = Kind::CycleNoMatch;
  long m = 0;        // Matched: smallest n with S^n(1) = S^n(1-a)
  Word prefix;       // Matched: digits d_1..d_m
  long preperiod = 0;  // no-match variants: orbit-of-1 cycle shape
  long period = 0;
  bool hit_half = false;  // an exact orbit point equals 1/2 (or -1/2)

  bool matched() const { return kind == Kind::Matched; }
};

// Matching classification of a rational a in (1,2]. a = 1 is rejected: the
// system is two glued doubling maps there and never matches.
MatchingResult matching_index(const Rational& alpha);

struct OrbitIdentityReport {
  bool pass = true;
  long first_fail = -1;
  long first_coincidence = -1;  // first n with S^n(1) = S^n(1-a), -1 if none seen
  std::string detail;
};

// Checks, for 0 <= n <= min(n_max, m(a)): the two-orbit difference
// S^n(1) - S^n(1-a) is exactly a before matching and 0 at matching, the
// conjugacy S^n(1) = a * D^n(1/a), and the digit agreement d_{a,n} = b_n(1/a).
// pre: a rational in (1, 3/2).
OrbitIdentityReport verify_orbit_identities(const Rational& alpha, long n_max);

// True iff T^k(x) <= x for all k >= 1, decided exactly on the tent-map cycle.
bool lambda_membership(const Rational& x);

}  // namespace sdm::core

#endif
