#include "sdm/core_dynamics.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace sdm::core {

namespace {

const Rational kHalf(1, 2);

void check_alpha(const Rational& alpha) {
  if (alpha < 1 || alpha > 2) throw std::domain_error("alpha outside [1,2]");
}

long iteration_cap(const Rational& alpha) {
  // Orbit points of 1 live on the lattice Z/q intersected with [-1,1],
  // at most 2q+1 states; 4q+4 is a hard safety bound.
  Int q = denominator(alpha);
  if (q > 1000000000) throw std::domain_error("alpha denominator too large for exact iteration");
  return 4 * static_cast<long>(q) + 4;
}

}  // namespace

int signed_digit(const Rational& x) {
  if (x > 1 || x < -1) throw std::domain_error("signed_digit: |x| > 1");
  if (x > kHalf) return 1;
  if (x < -kHalf) return -1;
  return 0;
}

std::pair<Rational, int> s_alpha_step(const Rational& x, const Rational& alpha) {
  check_alpha(alpha);
  int d = signed_digit(x);
  return {2 * x - d * alpha, d};
}

int binary_digit(const Rational& x) { return x >= kHalf ? 1 : 0; }

Rational aux_map_step(AuxMap kind, const Rational& x) {
  if (x < 0 || x > 1) throw std::domain_error("aux_map_step: x outside [0,1]");
  switch (kind) {
    case AuxMap::Doubling: {
      if (x == 1) throw std::domain_error("doubling map requires x < 1");
      Rational y = 2 * x;
      return y >= 1 ? y - 1 : y;
    }
    case AuxMap::Tent:
      return x <= kHalf ? 2 * x : 2 - 2 * x;
    case AuxMap::Farey:
      return x <= kHalf ? x / (1 - x) : (1 - x) / x;
  }
  throw std::logic_error("aux_map_step: bad kind");
}

SignedDigitSeq signed_digit_sequence(const Rational& x, const Rational& alpha, long max_steps) {
  check_alpha(alpha);
  if (x < -1 || x > 1) throw std::domain_error("signed_digit_sequence: |x| > 1");
  SignedDigitSeq out;
  std::map<Rational, long> seen;
  std::vector<int8_t> digits;
  Rational p = x;
  for (long n = 0; n < max_steps; ++n) {
    auto it = seen.find(p);
    if (it != seen.end()) {
      long pre = it->second;
      out.preperiod.assign(digits.begin(), digits.begin() + pre);
      out.period.assign(digits.begin() + pre, digits.end());
      out.canonicalize();
      return out;
    }
    seen.emplace(p, n);
    auto [next, d] = s_alpha_step(p, alpha);
    digits.push_back(static_cast<int8_t>(d));
    p = next;
  }
  out.preperiod = std::move(digits);
  out.truncated = true;
  return out;
}

MatchingResult matching_index(const Rational& alpha) {
  if (alpha == 1)
    throw std::domain_error("matching_index: alpha = 1 never matches (two glued doubling maps)");
  if (alpha <= 1 || alpha > 2) throw std::domain_error("matching_index: alpha outside (1,2]");

  const Rational hole_hi = alpha - kHalf;
  const long cap = iteration_cap(alpha);
  Rational x = 1;
  std::map<Rational, long> seen;
  std::vector<int8_t> digits;
  bool hit_half = false;
  for (long n = 0; n <= cap; ++n) {
    if (x == kHalf || x == -kHalf) hit_half = true;
    if (kHalf < x && x < hole_hi) {
      // S^n(1) in the hole: the orbits of 1 and 1-alpha collide one step later.
      digits.push_back(1);
      MatchingResult r;
      r.kind = MatchingResult::Kind::Matched;
      r.m = n + 1;
      r.prefix.bits.assign(digits.begin(), digits.end());
      return r;
    }
    auto it = seen.find(x);
    if (it != seen.end()) {
      MatchingResult r;
      r.kind = hit_half ? MatchingResult::Kind::MarkovNoMatch : MatchingResult::Kind::CycleNoMatch;
      r.preperiod = it->second;
      r.period = n - it->second;
      r.hit_half = hit_half;
      return r;
    }
    seen.emplace(x, n);
    auto [next, d] = s_alpha_step(x, alpha);
    digits.push_back(static_cast<int8_t>(d));
    x = next;
  }
  throw std::logic_error("matching_index: iteration cap exceeded");
}

OrbitIdentityReport verify_orbit_identities(const Rational& alpha, long n_max) {
  if (alpha <= 1 || alpha >= Rational(3, 2))
    throw std::domain_error("verify_orbit_identities: alpha outside (1, 3/2)");
  OrbitIdentityReport rep;
  MatchingResult mi = matching_index(alpha);
  long limit = mi.matched() ? std::min(n_max, mi.m) : n_max;

  Rational x = 1, y = 1 - alpha, u = 1 / alpha;
  for (long n = 0; n <= limit; ++n) {
    Rational diff = x - y;
    bool before = mi.matched() ? n < mi.m : true;
    if (diff != (before ? alpha : Rational(0))) {
      rep.pass = false;
      rep.first_fail = n;
      rep.detail = "orbit difference not in {0, alpha} pattern at n=" + std::to_string(n);
      return rep;
    }
    if (x != alpha * u) {
      rep.pass = false;
      rep.first_fail = n;
      rep.detail = "S^n(1) != alpha * D^n(1/alpha) at n=" + std::to_string(n);
      return rep;
    }
    if (diff == 0 && rep.first_coincidence < 0) rep.first_coincidence = n;
    if (n == limit) break;
    auto [nx, d] = s_alpha_step(x, alpha);
    if (binary_digit(u) != d) {
      rep.pass = false;
      rep.first_fail = n + 1;
      rep.detail = "digit mismatch d_{alpha,n} vs b_n(1/alpha) at n=" + std::to_string(n + 1);
      return rep;
    }
    x = nx;
    y = s_alpha_step(y, alpha).first;
    u = aux_map_step(AuxMap::Doubling, u);
  }
  if (mi.matched() && limit == mi.m && rep.first_coincidence != mi.m) {
    rep.pass = false;
    rep.first_fail = mi.m;
    rep.detail = "matching index disagrees with first orbit coincidence";
  }
  return rep;
}

bool lambda_membership(const Rational& x) {
  if (x < 0 || x > 1) throw std::domain_error("lambda_membership: x outside [0,1]");
  std::map<Rational, long> seen;
  Rational y = x;
  for (long n = 0;; ++n) {
    if (seen.count(y)) return true;
    seen.emplace(y, n);
    y = aux_map_step(AuxMap::Tent, y);
    if (y > x) return false;
  }
}

}  // namespace sdm::core
