#ifndef SDM_WORDS_HPP
#define SDM_WORDS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sdm/rational.hpp"

namespace sdm {

// Finite block over {0,1}.
struct Word {
  std::vector<uint8_t> bits;  // most significant symbol first

  Word() = default;
  explicit Word(std::vector<uint8_t> b) : bits(std::move(b)) {}

  static Word parse(std::string_view s);
  std::string str() const;
  size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  uint8_t operator[](size_t i) const { return bits[i]; }

  bool operator==(const Word&) const = default;
};

// Lexicographic order; a proper prefix sorts before its extensions.
// Returns <0, 0, >0.
int lex_compare(const Word& a, const Word& b);

// x_m = 2^m * .w  (the integer with binary digits w).
Int word_value(const Word& w);

Word complement(const Word& w);

namespace detail {

template <typename Seq>
void canonicalize_eventually_periodic(std::vector<Seq>& pre, std::vector<Seq>& per) {
  if (per.empty()) return;
  // minimal period
  for (size_t d = 1; d <= per.size(); ++d) {
    if (per.size() % d != 0) continue;
    bool ok = true;
    for (size_t i = d; i < per.size() && ok; ++i) ok = per[i] == per[i % d];
    if (ok) {
      per.resize(d);
      break;
    }
  }
  // absorb matching tail of the preperiod into the cycle
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    Seq last = per.back();
    per.pop_back();
    per.insert(per.begin(), last);
  }
}

template <typename Seq>
std::vector<Seq> unroll(const std::vector<Seq>& pre, const std::vector<Seq>& per, size_t n) {
  std::vector<Seq> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i < pre.size())
      out.push_back(pre[i]);
    else if (!per.empty())
      out.push_back(per[(i - pre.size()) % per.size()]);
    else
      break;
  }
  return out;
}

}  // namespace detail

// Eventually periodic sequence over {-1,0,1}; period empty iff truncated.
struct SignedDigitSeq {
  std::vector<int8_t> preperiod;
  std::vector<int8_t> period;
  bool truncated = false;

  void canonicalize() { detail::canonicalize_eventually_periodic(preperiod, period); }
  std::vector<int8_t> prefix(size_t n) const { return detail::unroll(preperiod, period, n); }
  bool same_sequence(const SignedDigitSeq& o) const;
  std::string str() const;  // digits as '1','0','T' (T = -1), period in "(...)^inf"
};

// Eventually periodic binary word (a point of [0,1] written in base 2).
struct BinaryWord {
  std::vector<uint8_t> preperiod;
  std::vector<uint8_t> period;  // nonempty; use {0} for terminating expansions

  static BinaryWord periodic(const Word& w);
  static BinaryWord eventually(const Word& pre, const Word& per);

  void canonicalize() { detail::canonicalize_eventually_periodic(preperiod, period); }
  std::vector<uint8_t> prefix(size_t n) const { return detail::unroll(preperiod, period, n); }
  bool same_sequence(const BinaryWord& o) const;
  Rational value() const;
  std::string str() const;
};

}  // namespace sdm

#endif
