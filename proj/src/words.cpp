#include "sdm/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace sdm {

Word Word::parse(std::string_view s) {
  Word w;
  w.bits.reserve(s.size());
  for (char c : s) {
    if (c == '0')
      w.bits.push_back(0);
    else if (c == '1')
      w.bits.push_back(1);
    else
      throw std::invalid_argument("Word::parse: invalid symbol");
  }
  return w;
}

std::string Word::str() const {
  std::string s;
  s.reserve(bits.size());
  for (uint8_t b : bits) s += b ? '1' : '0';
  return s;
}

int lex_compare(const Word& a, const Word& b) {
  size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

Int word_value(const Word& w) {
  Int x = 0;
  for (uint8_t b : w.bits) x = 2 * x + b;
  return x;
}

Word complement(const Word& w) {
  Word c;
  c.bits.reserve(w.size());
  for (uint8_t b : w.bits) c.bits.push_back(static_cast<uint8_t>(1 - b));
  return c;
}

bool SignedDigitSeq::same_sequence(const SignedDigitSeq& o) const {
  if (truncated || o.truncated) return false;
  SignedDigitSeq a = *this, b = o;
  a.canonicalize();
  b.canonicalize();
  return a.preperiod == b.preperiod && a.period == b.period;
}

namespace {

char digit_char(int d) { return d == 1 ? '1' : d == 0 ? '0' : 'T'; }

}  // namespace

std::string SignedDigitSeq::str() const {
  std::string s;
  for (int8_t d : preperiod) s += digit_char(d);
  if (!period.empty()) {
    s += '(';
    for (int8_t d : period) s += digit_char(d);
    s += ")^inf";
  } else if (truncated) {
    s += "...";
  }
  return s;
}

BinaryWord BinaryWord::periodic(const Word& w) {
  if (w.empty()) throw std::domain_error("BinaryWord::periodic: empty period");
  BinaryWord b;
  b.period = w.bits;
  return b;
}

BinaryWord BinaryWord::eventually(const Word& pre, const Word& per) {
  if (per.empty()) throw std::domain_error("BinaryWord::eventually: empty period");
  BinaryWord b;
  b.preperiod = pre.bits;
  b.period = per.bits;
  return b;
}

bool BinaryWord::same_sequence(const BinaryWord& o) const {
  BinaryWord a = *this, b = o;
  a.canonicalize();
  b.canonicalize();
  return a.preperiod == b.preperiod && a.period == b.period;
}

Rational BinaryWord::value() const {
  if (period.empty()) throw std::domain_error("BinaryWord::value: missing period");
  Int p = 0;
  for (uint8_t b : preperiod) p = 2 * p + b;
  Int c = 0;
  for (uint8_t b : period) c = 2 * c + b;
  long lp = static_cast<long>(preperiod.size());
  long lc = static_cast<long>(period.size());
  Rational tail(c, pow2i(lc) - 1);
  return (Rational(p) + tail) / pow2i(lp);
}

std::string BinaryWord::str() const {
  std::string s = ".";
  for (uint8_t b : preperiod) s += b ? '1' : '0';
  s += '(';
  for (uint8_t b : period) s += b ? '1' : '0';
  s += ")^inf";
  return s;
}

}  // namespace sdm
