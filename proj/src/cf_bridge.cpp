#include "sdm/cf_bridge.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sdm/blocks.hpp"
#include "sdm/core_dynamics.hpp"

namespace sdm::cf {

void CFWord::canonicalize() { detail::canonicalize_eventually_periodic(preperiod, period); }

std::string CFWord::str() const {
  std::string s = "[0;";
  for (size_t i = 0; i < preperiod.size(); ++i) s += (i ? "," : " ") + std::to_string(preperiod[i]);
  if (!period.empty()) {
    s += preperiod.empty() ? " (" : ",(";
    for (size_t i = 0; i < period.size(); ++i) s += (i ? "," : "") + std::to_string(period[i]);
    s += ")^inf";
  }
  s += "]";
  return s;
}

Rational cf_eval(std::span<const long> quotients) {
  Rational t = 0;
  for (auto it = quotients.rbegin(); it != quotients.rend(); ++it) {
    if (*it < 1) throw std::domain_error("cf_eval: partial quotient < 1");
    t = Rational(1) / (*it + t);
  }
  return t;
}

CFWord cf_expand(const Rational& x) {
  if (x <= 0 || x > 1) throw std::domain_error("cf_expand: x outside (0,1]");
  std::vector<long> q;
  // Euclidean algorithm on 1/x; terminates with last quotient >= 2
  Int p = denominator(x), r = numerator(x);
  while (r != 0) {
    Int a = p / r;
    q.push_back(static_cast<long>(a));
    Int rem = p % r;
    p = r;
    r = rem;
  }
  return CFWord::finite(std::move(q));
}

std::pair<Rational, Rational> cf_enclosure(const CFWord& x, int precision_bits) {
  if (x.is_finite()) {
    Rational v = cf_eval(x.preperiod);
    return {v, v};
  }
  const Rational eps = pow2(-precision_bits);
  // convergents p_k/q_k; consecutive ones bracket the value
  Int pk1 = 1, qk1 = 0;  // p_{-1}, q_{-1}
  Int pk = 0, qk = 1;    // p_0, q_0
  size_t i = 0;
  Rational prev(0), cur(0);
  while (true) {
    long a = i < x.preperiod.size()
                 ? x.preperiod[i]
                 : x.period[(i - x.preperiod.size()) % x.period.size()];
    Int pn = a * pk + pk1, qn = a * qk + qk1;
    pk1 = pk; qk1 = qk; pk = pn; qk = qn;
    ++i;
    prev = cur;
    cur = Rational(pk, qk);
    if (i >= 2) {
      Rational gap = cur > prev ? cur - prev : prev - cur;
      if (gap <= eps) break;
    }
    if (i > 100000) throw std::logic_error("cf_enclosure: no convergence");
  }
  return cur < prev ? std::make_pair(cur, prev) : std::make_pair(prev, cur);
}

int gauss_compare(const CFWord& s, const CFWord& t) {
  CFWord a = s, b = t;
  a.canonicalize();
  b.canonicalize();
  if (a.preperiod == b.preperiod && a.period == b.period) return 0;
  size_t pa = a.period.empty() ? 1 : a.period.size();
  size_t pb = b.period.empty() ? 1 : b.period.size();
  size_t n = std::max(a.preperiod.size(), b.preperiod.size()) + std::lcm(pa, pb) + 1;
  auto ua = a.prefix(n), ub = b.prefix(n);
  size_t m = std::min(ua.size(), ub.size());
  for (size_t i = 0; i < m; ++i) {
    if (ua[i] != ub[i]) {
      // odd index (1-based): larger quotient means smaller value
      bool odd = (i % 2) == 0;
      bool less = odd ? ua[i] > ub[i] : ua[i] < ub[i];
      return less ? -1 : 1;
    }
  }
  throw std::runtime_error("gauss_compare: tie on a finite word, order undecidable");
}

Rational a_of_omega(const Word& omega) {
  auto ell = blocks::ell_decomposition(omega).runs;
  std::vector<long> q;
  size_t k = ell.size();  // even; ell[k-1] may be zero
  if (ell[k - 1] == 0) {
    q.assign(ell.begin(), ell.end() - 2);
    q.push_back(ell[k - 2] + 1);
  } else {
    q.assign(ell.begin(), ell.end() - 1);
    q.push_back(ell[k - 1] + 1);
  }
  return cf_eval(q);
}

Word word_from_quotients(std::span<const long> quotients) {
  size_t n = quotients.size();
  if (n == 0) throw std::domain_error("word_from_quotients: empty");
  Word w;
  for (size_t i = 0; i < n; ++i) {
    uint8_t digit = (i % 2 == 0) ? 1 : 0;
    long run = quotients[i];
    if (n % 2 == 0 && i == n - 1) run -= 1;  // even length: 0^{a_n - 1} then final 1
    for (long j = 0; j < run; ++j) w.bits.push_back(digit);
  }
  if (n % 2 == 0) w.bits.push_back(1);
  return w;
}

bool QuadraticCoeffs::has_root(const Int& u, const Int& v, const Int& d, const Int& w) const {
  if (w == 0) return false;
  // A x^2 + B x + C with x = (u + v sqrt(d)) / w: split rational and sqrt(d) parts
  Int rational_part = A * (u * u + v * v * d) + B * u * w + C * w * w;
  Int surd_part = 2 * A * u * v + B * v * w;
  return rational_part == 0 && surd_part == 0;
}

namespace {

QuadraticCoeffs equation_of_periodic(const std::vector<long>& period) {
  // x = g_{c1} o ... o g_ck (x) with g_c(t) = 1/(c+t); Moebius matrix product
  Int m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  for (long c : period) {
    // multiply by [[0,1],[1,c]]
    Int n00 = m01, n01 = m00 + m01 * c;
    Int n10 = m11, n11 = m10 + m11 * c;
    m00 = n00; m01 = n01; m10 = n10; m11 = n11;
  }
  // x = (m00 x + m01)/(m10 x + m11)  =>  m10 x^2 + (m11 - m00) x - m01 = 0
  Int A = m10, B = m11 - m00, C = -m01;
  Int g = gcd(gcd(abs(A), abs(B)), abs(C));
  if (g > 1) { A /= g; B /= g; C /= g; }
  if (A < 0) { A = -A; B = -B; C = -C; }
  return {A, B, C};
}

QuadraticSurd make_surd(std::vector<long> period, int precision_bits) {
  QuadraticSurd s;
  s.word = CFWord::periodic(std::move(period));
  s.equation = equation_of_periodic(s.word.period);
  auto [lo, hi] = cf_enclosure(s.word, precision_bits);
  s.lo = lo;
  s.hi = hi;
  // the enclosure must straddle a root of the fixed-point equation
  auto eval = [&](const Rational& x) {
    return Rational(s.equation.A) * x * x + Rational(s.equation.B) * x + Rational(s.equation.C);
  };
  if (eval(lo) > 0 && eval(hi) > 0) throw std::logic_error("quadratic surd: enclosure misses root");
  if (eval(lo) < 0 && eval(hi) < 0) throw std::logic_error("quadratic surd: enclosure misses root");
  return s;
}

}  // namespace

QuadraticInterval quadratic_endpoints(const Rational& a, int precision_bits) {
  if (a >= 1) throw std::domain_error("quadratic_endpoints: a must lie in (0,1)");
  CFWord w = cf_expand(a);
  std::vector<long> plain = w.preperiod;
  size_t n = plain.size();
  std::vector<long> split = plain;  // a1 .. a_{n-1} (a_n - 1) 1
  split.back() -= 1;
  split.push_back(1);

  QuadraticSurd first = make_surd(plain, precision_bits);
  QuadraticSurd second = make_surd(split, precision_bits);
  // parity rule: for odd n the plain word is the minimum
  bool plain_is_min = (n % 2 == 1);
  QuadraticInterval qi;
  qi.a = a;
  qi.lo = plain_is_min ? first : second;
  qi.hi = plain_is_min ? second : first;
  if (!(qi.lo.hi < qi.hi.lo) && gauss_compare(qi.lo.word, qi.hi.word) >= 0)
    throw std::logic_error("quadratic_endpoints: endpoint order violated");
  return qi;
}

bool is_maximal_quadratic(const Rational& a) {
  std::vector<long> w = cf_expand(a).preperiod;
  size_t n = w.size();
  CFWord base = CFWord::periodic(w);
  bool all_strict = true;
  for (size_t i = 1; i < n && all_strict; ++i) {
    std::vector<long> rot(w.begin() + i, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + i);
    if (gauss_compare(base, CFWord::periodic(rot)) >= 0) all_strict = false;
  }
  if (all_strict) return true;
  // exception: n/2 odd, first half <_g-minimal among its shifts, word = half half
  if (n % 2 != 0 || (n / 2) % 2 != 1) return false;
  size_t h = n / 2;
  if (!std::equal(w.begin(), w.begin() + h, w.begin() + h)) return false;
  std::vector<long> v(w.begin(), w.begin() + h);
  CFWord vbase = CFWord::periodic(v);
  for (size_t i = 1; i < h; ++i) {
    std::vector<long> rot(v.begin() + i, v.end());
    rot.insert(rot.end(), v.begin(), v.begin() + i);
    // strictly smallest: a repeated half (all shifts equal) is not maximal
    if (gauss_compare(vbase, CFWord::periodic(rot)) >= 0) return false;
  }
  return true;
}

namespace {

void append_run(std::vector<uint8_t>& out, uint8_t digit, long len) {
  for (long i = 0; i < len; ++i) out.push_back(digit);
}

}  // namespace

BinaryWord phi_word(const CFWord& x) {
  BinaryWord b;
  if (x.preperiod.empty() && x.period.empty()) {
    b.period = {1};  // phi(0) = 1
    return b;
  }
  size_t pre_count = x.preperiod.size();
  for (size_t i = 0; i < pre_count; ++i)
    append_run(b.preperiod, (i % 2 == 0) ? 1 : 0, x.preperiod[i]);
  if (x.is_finite()) {
    // terminal run implied by a_{n+1} = infinity
    b.period = {static_cast<uint8_t>(pre_count % 2 == 0 ? 1 : 0)};
  } else {
    std::vector<long> per = x.period;
    if (per.size() % 2 == 1) per.insert(per.end(), x.period.begin(), x.period.end());
    for (size_t j = 0; j < per.size(); ++j)
      append_run(b.period, ((pre_count + j) % 2 == 0) ? 1 : 0, per[j]);
  }
  b.canonicalize();
  return b;
}

Word phi_map(const CFWord& x, long n_bits) {
  auto bits = phi_word(x).prefix(static_cast<size_t>(n_bits));
  return Word(std::move(bits));
}

Rational phi_value(const CFWord& x) {
  if (!x.is_finite()) throw std::domain_error("phi_value: finite words only");
  return phi_word(x).value();
}

CFWord phi_inverse_dyadic(const Rational& y) {
  if (!is_dyadic(y)) throw std::domain_error("phi_inverse_dyadic: y not dyadic");
  if (y < Rational(1, 2) || y > 1) throw std::domain_error("phi_inverse_dyadic: y outside [1/2,1]");
  if (y == 1) return CFWord::finite({});  // phi(0) = 1
  long t = dyadic_exponent(y);
  // binary digits of the numerator over t bits, then run-length decompose
  std::vector<uint8_t> bits(t);
  Int v = numerator(y);
  for (long i = t - 1; i >= 0; --i) {
    bits[i] = static_cast<uint8_t>(v & 1);
    v >>= 1;
  }
  while (!bits.empty() && bits.back() == 0) bits.pop_back();
  std::vector<long> q;
  size_t i = 0;
  while (i < bits.size()) {
    size_t j0 = i;
    while (i < bits.size() && bits[i] == bits[j0]) ++i;
    q.push_back(static_cast<long>(i - j0));
  }
  // last run is a 1-run (odd count); canonicalize trailing quotient 1
  if (q.size() >= 2 && q.back() == 1) {
    q.pop_back();
    q.back() += 1;
  }
  return CFWord::finite(std::move(q));
}

Rational minkowski_q(const Rational& x) {
  if (x < 0 || x > 1) throw std::domain_error("minkowski_q: x outside [0,1]");
  if (x == 0) return 0;
  CFWord w = cf_expand(x);
  Rational sum = 0;
  long s = 0;
  int sign = 1;
  for (long a : w.preperiod) {
    s += a;
    sum += sign * pow2(-s);
    sign = -sign;
  }
  return 2 * sum;
}

CFWord farey_cf_step(const CFWord& x) {
  if (!x.is_finite()) throw std::domain_error("farey_cf_step: finite words only");
  if (x.preperiod.empty()) return x;  // F(0) = 0
  std::vector<long> q = x.preperiod;
  if (q[0] > 1)
    q[0] -= 1;
  else
    q.erase(q.begin());
  return CFWord::finite(std::move(q));
}

namespace {

BinaryWord r_minus(const Word& omega) {
  Word p = omega;
  p.bits.back() = 0;
  return BinaryWord::periodic(p);
}

BinaryWord r_plus(const Word& omega) {
  Word p = omega;
  Word c = complement(omega);
  p.bits.insert(p.bits.end(), c.bits.begin(), c.bits.end());
  return BinaryWord::periodic(p);
}

}  // namespace

HoleClauseReport farey_doubling_clauses(long m, const Rational& alpha) {
  HoleClauseReport rep;
  auto fail = [&rep](const std::string& what) { rep.failures.push_back(what); };
  Rational inv_alpha = 1 / alpha;
  CFWord atil = phi_inverse_dyadic(inv_alpha);
  rep.a_tilde = atil.preperiod;
  if (phi_value(atil) != inv_alpha) fail("phi_inverse round trip");

  Rational aval = cf_eval(atil.preperiod);
  rep.farey_ok = true;
  CFWord f = atil;
  for (long n = 0; n <= m; ++n) {
    Rational fv = cf_eval(f.preperiod);
    if (n < m && fv < aval) {
      rep.farey_ok = false;
      fail("F^n entered [0,a~) early at n=" + std::to_string(n));
    }
    if (n == m - 1 && !(fv > 1 / (aval + 1) && fv <= 1)) {
      rep.farey_ok = false;
      fail("F^{m-1} outside (1/(a~+1), 1]");
    }
    if (n == m && !(fv < aval)) {
      rep.farey_ok = false;
      fail("F^m not in [0, a~)");
    }
    if (n < m) {
      CFWord nf = farey_cf_step(f);
      if (cf_eval(nf.preperiod) != core::aux_map_step(core::AuxMap::Farey, fv)) {
        rep.farey_ok = false;
        fail("symbolic Farey step disagrees with rational map");
      }
      f = nf;
    }
  }

  Rational hole_lo = 1 / (2 * alpha), hole_hi = 1 - 1 / (2 * alpha);
  rep.doubling_ok = true;
  Rational u = inv_alpha;
  for (long n = 0; n <= m - 1; ++n) {
    bool inside = u > hole_lo && u < hole_hi;
    if (n <= m - 2 && inside) {
      rep.doubling_ok = false;
      fail("D^n entered the hole early at n=" + std::to_string(n));
    }
    if (n == m - 1 && !inside) {
      rep.doubling_ok = false;
      fail("D^{m-1} missed the hole");
    }
    if (n < m - 1) u = core::aux_map_step(core::AuxMap::Doubling, u);
  }
  return rep;
}

BridgeReport bridge_verify(const Word& omega, int identity_samples, uint64_t seed) {
  BridgeReport rep;
  auto fail = [&rep](const std::string& what) { rep.failures.push_back(what); };

  blocks::MatchingInterval J = blocks::matching_interval(omega);
  const long m = J.m;
  Rational a = a_of_omega(omega);
  QuadraticInterval qi = quadratic_endpoints(a);

  BinaryWord rm = r_minus(omega), rp = r_plus(omega);
  rep.phi_words_ok = phi_word(qi.lo.word).same_sequence(rp) && phi_word(qi.hi.word).same_sequence(rm);
  if (!rep.phi_words_ok) fail("phi(a^-/+) != r^+/- as periodic words");

  rep.endpoint_reciprocals_ok = (1 / J.L == rp.value()) && (1 / J.R == rm.value());
  if (!rep.endpoint_reciprocals_ok) fail("1/L != r^+ or 1/R != r^-");

  // dyadic-friendly test parameter: 1/alpha = j/2^t inside (r^-, r^+)
  Rational lo = rm.value(), hi = rp.value();
  for (long t = 1; t <= 40 && !rep.farey_clause_checked; ++t) {
    Int j = floor_rat(lo * pow2i(t)) + 1;
    Rational cand(j, pow2i(t));
    if (cand > lo && cand < hi) {
      rep.farey_clause_checked = true;
      rep.test_alpha = 1 / cand;
      HoleClauseReport hc = farey_doubling_clauses(m, rep.test_alpha);
      rep.a_tilde = hc.a_tilde;
      rep.farey_clause_ok = hc.farey_ok;
      rep.doubling_clause_ok = hc.doubling_ok;
      for (const auto& f : hc.failures) rep.failures.push_back(f);
    }
  }

  // functional identities on random rationals
  std::mt19937_64 gen(seed);
  rep.identities_ok = true;
  for (int i = 0; i < identity_samples; ++i) {
    long den = 2 + static_cast<long>(gen() % 9999);
    long num = static_cast<long>(gen() % (den + 1));
    Rational x(num, den);
    Rational qx = minkowski_q(x);
    if (x < 1) {
      Rational lhs = minkowski_q(core::aux_map_step(core::AuxMap::Farey, x));
      Rational rhs = core::aux_map_step(core::AuxMap::Tent, qx);
      if (lhs != rhs) {
        rep.identities_ok = false;
        fail("? o F != T o ? at x=" + fraction_string(x));
      }
      Rational td = core::aux_map_step(core::AuxMap::Tent, core::aux_map_step(core::AuxMap::Doubling, x));
      Rational tt = core::aux_map_step(core::AuxMap::Tent, core::aux_map_step(core::AuxMap::Tent, x));
      if (td != tt) {
        rep.identities_ok = false;
        fail("T o D != T o T at x=" + fraction_string(x));
      }
    }
    Rational pv = x == 0 ? Rational(1) : phi_value(cf_expand(x));
    if (pv + qx / 2 != 1) {
      rep.identities_ok = false;
      fail("phi + ?/2 != 1 at x=" + fraction_string(x));
    }
  }
  return rep;
}

}  // namespace sdm::cf
