#include "sdm/blocks.hpp"

#include <algorithm>
#include <stdexcept>

#include "sdm/cf_bridge.hpp"

namespace sdm::blocks {

Word psi(const Word& w) {
  if (w.size() < 2) throw std::domain_error("psi: |w| >= 2 required");
  Word out = w;
  for (size_t i = 0; i + 1 < w.size(); ++i) out.bits.push_back(static_cast<uint8_t>(1 - w[i]));
  out.bits.push_back(1);
  return out;
}

EllDecomposition ell_decomposition(const Word& w) {
  if (w.empty() || w.bits.front() != 1 || w.bits.back() != 1)
    throw std::domain_error("ell_decomposition: word must start and end with 1");
  // decompose everything before the final 1 into alternating runs
  std::vector<long> runs;
  size_t n = w.size() - 1;
  size_t i = 0;
  uint8_t expect = 1;
  while (i < n) {
    long len = 0;
    while (i < n && w[i] == expect) { ++len, ++i; }
    runs.push_back(len);
    expect = static_cast<uint8_t>(1 - expect);
  }
  if (runs.size() % 2 == 1) runs.push_back(0);  // trailing l_{2n} may be zero
  return {std::move(runs)};
}

namespace {

bool shape_ok(const Word& w) {
  size_t m = w.size();
  return m >= 2 && w[0] == 1 && w[1] == 1 && w[m - 1] == 1;
}

// condition (ii): every suffix is lexicographically <= the prefix of equal length
bool shift_condition(const Word& w) {
  size_t m = w.size();
  for (size_t n = 1; n < m; ++n) {
    for (size_t i = 0; i + n < m; ++i) {
      if (w[n + i] != w[i]) {
        if (w[n + i] > w[i]) return false;
        break;
      }
    }
  }
  return true;
}

// condition (iii) via the run-length rephrasing: no odd truncation b of w
// has b < w < psi(b)
bool no_psi_squeeze(const Word& w) {
  auto runs = ell_decomposition(w).runs;
  // truncation b_j covers runs 1..2j-1
  std::vector<size_t> cut;
  size_t acc = 0;
  for (size_t r = 0; r < runs.size(); ++r) {
    acc += static_cast<size_t>(runs[r]);
    if (r % 2 == 0) cut.push_back(acc);
  }
  for (size_t c : cut) {
    if (c < 2 || c >= w.size()) continue;  // psi needs length >= 2; b must be proper
    Word b;
    b.bits.assign(w.bits.begin(), w.bits.begin() + c);
    if (lex_compare(w, psi(b)) < 0) return false;
  }
  return true;
}

bool primitive_by_definition(const Word& w) {
  return shape_ok(w) && shift_condition(w) && no_psi_squeeze(w);
}

bool primitive_by_cf(const Word& w) {
  if (!shape_ok(w)) return false;
  return cf::is_maximal_quadratic(cf::a_of_omega(w));
}

// Exact orbit run at the midpoint of the candidate interval: matching must
// happen at exactly |w| steps with digit prefix w. Bounded by |w| steps,
// no cycle detection needed.
bool primitive_by_dynamics(const Word& w) {
  size_t m = w.size();
  Int x = word_value(w);
  if (x <= 1) return false;
  Rational L(pow2i(static_cast<long>(m)) + 1, x + 1);
  Rational R(pow2i(static_cast<long>(m)) - 1, x - 1);
  if (!(Rational(1) < L && L < R && R <= 2)) return false;
  Rational alpha = (L + R) / 2;
  const Rational half(1, 2), hole_hi = alpha - half;
  Rational p = 1;
  for (size_t n = 0; n < m; ++n) {
    bool in_hole = half < p && p < hole_hi;
    if (n + 1 < m && in_hole) return false;   // matched too early
    if (n + 1 == m && !in_hole) return false; // did not match at m
    auto [next, d] = core::s_alpha_step(p, alpha);
    if (d != static_cast<int>(w[n])) return false;
    p = next;
  }
  return true;
}

}  // namespace

bool is_primitive(const Word& w, PrimitivityMethod method) {
  if (w.size() < 2) throw std::domain_error("is_primitive: |w| >= 2 required");
  switch (method) {
    case PrimitivityMethod::Definition: return primitive_by_definition(w);
    case PrimitivityMethod::ContinuedFraction: return primitive_by_cf(w);
    case PrimitivityMethod::Dynamic: return primitive_by_dynamics(w);
  }
  throw std::logic_error("is_primitive: bad method");
}

bool is_primitive_checked(const Word& w) {
  bool d = is_primitive(w, PrimitivityMethod::Definition);
  bool c = is_primitive(w, PrimitivityMethod::ContinuedFraction);
  bool y = is_primitive(w, PrimitivityMethod::Dynamic);
  if (d != c || c != y)
    throw std::logic_error("primitivity methods disagree on " + w.str() + ": definition=" +
                           std::to_string(d) + " cf=" + std::to_string(c) +
                           " dynamic=" + std::to_string(y));
  return d;
}

std::vector<Word> enumerate_primitive(int max_len) {
  if (max_len < 2) throw std::domain_error("enumerate_primitive: max_len >= 2 required");
  std::vector<Word> out;
  for (int m = 2; m <= max_len; ++m) {
    int free_bits = m - 3;
    unsigned long count = free_bits <= 0 ? 1ul : (1ul << free_bits);
    for (unsigned long mask = 0; mask < count; ++mask) {
      Word w;
      w.bits.reserve(m);
      w.bits.push_back(1);
      w.bits.push_back(1);
      for (int i = free_bits - 1; i >= 0; --i)
        w.bits.push_back(static_cast<uint8_t>((mask >> i) & 1));
      if (m >= 3) w.bits.push_back(1);
      if (primitive_by_definition(w)) out.push_back(std::move(w));
    }
  }
  return out;
}

MatchingInterval matching_interval(const Word& w) {
  if (!is_primitive(w, PrimitivityMethod::Definition))
    throw std::domain_error("matching_interval: block is not primitive: " + w.str());
  MatchingInterval J;
  J.omega = w;
  J.m = static_cast<long>(w.size());
  J.x_m = word_value(w);
  Int p2 = pow2i(J.m);
  J.L = Rational(p2 + 1, J.x_m + 1);
  J.R = Rational(p2 - 1, J.x_m - 1);
  return J;
}

std::pair<SignedDigitSeq, SignedDigitSeq> boundary_sequences(const Word& w) {
  MatchingInterval J = matching_interval(w);
  long m = J.m;

  SignedDigitSeq expect_left, expect_right;
  Word lw = w, cw = complement(w);
  lw.bits.insert(lw.bits.end(), cw.bits.begin(), cw.bits.end());
  expect_left.period.assign(lw.bits.begin(), lw.bits.end());
  expect_left.canonicalize();
  Word rw = w;
  rw.bits.back() = 0;
  expect_right.period.assign(rw.bits.begin(), rw.bits.end());
  expect_right.canonicalize();

  long cap = 8 * m + 8;
  SignedDigitSeq at_left = core::signed_digit_sequence(1, J.L, cap);
  SignedDigitSeq at_right = core::signed_digit_sequence(1, J.R, cap);
  if (!at_left.same_sequence(expect_left) || !at_right.same_sequence(expect_right))
    throw std::logic_error("boundary_sequences: exact iteration disagrees with predicted words");
  return {at_left, at_right};
}

std::vector<MatchingInterval> cascade(const Word& w, int depth) {
  std::vector<MatchingInterval> out;
  Word cur = w;
  for (int k = 0; k <= depth; ++k) {
    out.push_back(matching_interval(cur));
    if (k < depth) cur = psi(cur);
  }
  for (size_t k = 0; k + 1 < out.size(); ++k) {
    if (out[k].L != out[k + 1].R)
      throw std::logic_error("cascade: endpoint identity L(psi^k) = R(psi^{k+1}) violated");
  }
  return out;
}

Word limit_word_prefix(const Word& w, size_t n) {
  if (!is_primitive(w, PrimitivityMethod::Definition))
    throw std::domain_error("limit_word_prefix: block is not primitive");
  Word v = w;
  while (v.size() < n) v = psi(v);
  v.bits.resize(n);
  return v;
}

CascadeLimit cascade_limit(const Word& w, int precision_bits) {
  if (precision_bits < 1) throw std::domain_error("cascade_limit: precision_bits >= 1");
  long n = precision_bits + 2;
  Word prefix = limit_word_prefix(w, static_cast<size_t>(n));
  Rational s(word_value(prefix), pow2i(n));
  CascadeLimit out;
  out.bits = precision_bits;
  out.p_lo = s;
  out.p_hi = s + pow2(-n);
  out.lo = 1 / out.p_hi;
  out.hi = 1 / out.p_lo;
  Rational mid = (out.lo + out.hi) / 2;
  Int scaled = floor_rat(mid * pow2i(precision_bits) + Rational(1, 2));
  out.dyadic = Rational(scaled, pow2i(precision_bits));
  if (out.hi - out.lo > pow2(-(precision_bits + 1)))
    throw std::logic_error("cascade_limit: enclosure wider than certified bound");
  return out;
}

LocateResult locate(const Rational& alpha) {
  if (alpha <= 1 || alpha > 2) throw std::domain_error("locate: alpha outside (1,2]");
  LocateResult res;
  res.match = core::matching_index(alpha);
  if (res.match.matched()) {
    if (res.match.m == 1) {
      res.kind = LocateResult::Kind::HighRegion;
      res.omega = Word::parse("1");
      return res;
    }
    res.omega = res.match.prefix;
    res.interval = matching_interval(res.omega);
    if (!res.interval.contains(alpha))
      throw std::logic_error("locate: matched parameter misses its interval");
    res.kind = LocateResult::Kind::Interval;
    return res;
  }

  // Non-matching: an endpoint iff the digit sequence of 1 is purely periodic
  // of the endpoint shape. Prefer the shorter block (a shared cascade
  // endpoint is both L(w) and R(psi(w))).
  SignedDigitSeq d = core::signed_digit_sequence(1, alpha, 0x7fffffff);
  if (d.preperiod.empty() && !d.period.empty()) {
    size_t p = d.period.size();
    if (p % 2 == 0) {
      size_t k = p / 2;
      bool comp = true;
      for (size_t i = 0; i < k && comp; ++i)
        comp = d.period[i] >= 0 && d.period[k + i] == 1 - d.period[i];
      if (comp && k >= 2) {
        Word cand;
        for (size_t i = 0; i < k; ++i) cand.bits.push_back(static_cast<uint8_t>(d.period[i]));
        if (is_primitive(cand, PrimitivityMethod::Definition) &&
            matching_interval(cand).L == alpha) {
          res.kind = LocateResult::Kind::Boundary;
          res.omega = cand;
          res.side = LocateResult::Side::Left;
          return res;
        }
      }
    }
    if (p >= 2 && d.period[p - 1] == 0) {
      Word cand;
      for (size_t i = 0; i + 1 < p; ++i) cand.bits.push_back(static_cast<uint8_t>(d.period[i]));
      cand.bits.push_back(1);
      if (is_primitive(cand, PrimitivityMethod::Definition) &&
          matching_interval(cand).R == alpha) {
        res.kind = LocateResult::Kind::Boundary;
        res.omega = cand;
        res.side = LocateResult::Side::Right;
        return res;
      }
    }
  }
  res.kind = LocateResult::Kind::NonMatching;
  return res;
}

}  // namespace sdm::blocks
