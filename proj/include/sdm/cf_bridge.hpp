#ifndef SDM_CF_BRIDGE_HPP
#define SDM_CF_BRIDGE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdm/rational.hpp"
#include "sdm/words.hpp"

// Regular continued fractions, the Gauss order, quadratic intervals, the
// orientation-reversing homeomorphism phi and the Minkowski question mark
// function, plus the symbolic Farey action on quotient lists.
namespace sdm::cf {

// Finite or eventually periodic list of positive partial quotients.
// Finite words use the convention last quotient >= 2 (with [1] for the
// value 1); periodic words represent quadratic surds.
struct CFWord {
  std::vector<long> preperiod;
  std::vector<long> period;  // empty iff finite

  static CFWord finite(std::vector<long> q) { return {std::move(q), {}}; }
  static CFWord periodic(std::vector<long> q) { return {{}, std::move(q)}; }

  bool is_finite() const { return period.empty(); }
  void canonicalize();  // minimal period, minimal preperiod (periodic only)
  std::vector<long> prefix(size_t n) const { return detail::unroll(preperiod, period, n); }
  std::string str() const;
};

Rational cf_eval(std::span<const long> quotients);

// Canonical expansion of x in (0,1], round-trips through cf_eval exactly.
CFWord cf_expand(const Rational& x);

// Rational interval certain to contain the represented value, of width
// at most 2^-precision_bits (exact for finite words).
std::pair<Rational, Rational> cf_enclosure(const CFWord& x, int precision_bits);

// The Gauss order <_g: first differing index decides, reversed at odd
// positions; agrees with the numeric order of the represented reals.
// Returns -1, 0, +1. Throws if a finite word runs out while still tied.
int gauss_compare(const CFWord& s, const CFWord& t);

// a(omega): continued fraction built from the run decomposition of a
// primitive block. pre: omega starts and ends with 1.
Rational a_of_omega(const Word& omega);

// Inverse recipe: the block associated with a maximal quadratic interval.
Word word_from_quotients(std::span<const long> quotients);

// x^2-coefficient A > 0, A x^2 + B x + C = 0 with content 1.
struct QuadraticCoeffs {
  Int A, B, C;
  // whether (u + v*sqrt(d))/w solves the equation, exactly
  bool has_root(const Int& u, const Int& v, const Int& d, const Int& w) const;
};

struct QuadraticSurd {
  CFWord word;            // purely periodic
  QuadraticCoeffs equation;
  Rational lo, hi;        // enclosure of the value
};

struct QuadraticInterval {
  Rational a;
  QuadraticSurd lo, hi;  // a^- and a^+
};

// The endpoints a^-, a^+ of the quadratic interval I_a, ordered by the
// parity rule; each endpoint's fixed-point equation is verified exactly
// against its enclosure. pre: a in (0,1] rational.
QuadraticInterval quadratic_endpoints(const Rational& a, int precision_bits = 128);

// Maximality of I_a: the canonical quotient word is <_g-minimal among its
// nontrivial cyclic shifts, or the odd-half-period exception holds.
bool is_maximal_quadratic(const Rational& a);

// phi([0;a1,a2,...]) = .1^{a1} 0^{a2} 1^{a3} ... as an eventually periodic
// binary word; finite words are padded with the terminal constant run.
BinaryWord phi_word(const CFWord& x);

// Prefix of phi_word, truncated/extended to n_bits.
Word phi_map(const CFWord& x, long n_bits);

// Exact value of phi on a finite word (a dyadic rational).
Rational phi_value(const CFWord& x);

// phi^{-1} of a dyadic rational in [1/2, 1]; the result is a finite word.
CFWord phi_inverse_dyadic(const Rational& y);

// Minkowski ?(x), exact (dyadic for rational x).
Rational minkowski_q(const Rational& x);

// Symbolic Farey step [0;a1,a2,...] -> [0;(a1-1),a2,...] or [0;a2,...].
CFWord farey_cf_step(const CFWord& x);

struct HoleClauseReport {
  std::vector<long> a_tilde;  // finite CF of phi^{-1}(1/alpha)
  bool farey_ok = false;      // F^m(a~) in [0,a~), not before; F^{m-1} in (1/(a~+1),1]
  bool doubling_ok = false;   // D^{m-1}(1/alpha) in the hole, not before
  std::vector<std::string> failures;
};

// Exact Farey- and doubling-orbit facts at a matching parameter whose
// reciprocal has a terminating binary expansion. pre: 1/alpha dyadic,
// m = matching time of alpha.
HoleClauseReport farey_doubling_clauses(long m, const Rational& alpha);

struct BridgeReport {
  bool phi_words_ok = false;           // phi(a^-/+) equals r^+/- as periodic words
  bool endpoint_reciprocals_ok = false;  // 1/L = r^+ and 1/R = r^- exactly
  bool farey_clause_checked = false;   // a dyadic-friendly test parameter existed
  Rational test_alpha;
  std::vector<long> a_tilde;           // finite CF of phi^{-1}(1/alpha)
  bool farey_clause_ok = false;        // F^m into [0,a~), not before; F^{m-1} late
  bool doubling_clause_ok = false;     // D^{m-1} in the hole, not before
  bool identities_ok = false;          // ?o F = T o ?, T o D = T o T, phi + ?/2 = 1
  std::vector<std::string> failures;

  bool all_ok() const {
    return phi_words_ok && endpoint_reciprocals_ok && identities_ok &&
           (!farey_clause_checked || (farey_clause_ok && doubling_clause_ok));
  }
};

// Cross-checks the continued-fraction picture of a matching interval
// against the binary one. pre: omega primitive.
BridgeReport bridge_verify(const Word& omega, int identity_samples = 100, uint64_t seed = 1);

}  // namespace sdm::cf

#endif
