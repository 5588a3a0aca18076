#include "sdm/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace sdm {

Int pow2i(long k) {
  if (k < 0) throw std::domain_error("pow2i: negative exponent");
  Int r = 1;
  return r << static_cast<unsigned>(k);
}

Rational pow2(long k) {
  if (k >= 0) return Rational(pow2i(k));
  return Rational(1, pow2i(-k));
}

Int floor_rat(const Rational& x) {
  Int n = numerator(x), d = denominator(x);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

Rational parse_rational(std::string_view s) {
  auto bad = [&] { return std::invalid_argument("malformed rational: '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash != std::string_view::npos) {
      Int num(std::string(s.substr(0, slash)));
      Int den(std::string(s.substr(slash + 1)));
      if (den == 0) throw bad();
      return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string_view::npos) {
      std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
      long frac_len = static_cast<long>(s.size() - dot - 1);
      if (digits.empty() || digits == "-" || digits == "+") throw bad();
      Int num(digits);
      Int den = 1;
      for (long i = 0; i < frac_len; ++i) den *= 10;
      return Rational(num, den);
    }
    return Rational(Int(std::string(s)));
  } catch (const std::runtime_error&) {
    throw bad();
  }
}

std::string fraction_string(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

namespace {

// Digits of round(|x| * 10^k) with sign handling, half away from zero.
std::string decimal_digits(const Rational& x, long k, bool& negative) {
  negative = x < 0;
  Rational a = negative ? -x : x;
  Int scale = 1;
  for (long i = 0; i < k; ++i) scale *= 10;
  Int num = numerator(a) * scale;
  Int den = denominator(a);
  Int q = num / den, r = num % den;
  if (2 * r >= den) ++q;
  return q.str();
}

}  // namespace

std::string fixed_decimal_string(const Rational& x, int decimals) {
  bool neg = false;
  std::string d = decimal_digits(x, decimals, neg);
  if (static_cast<int>(d.size()) <= decimals) d.insert(0, decimals + 1 - d.size(), '0');
  std::string out;
  if (neg) out += '-';
  out += d.substr(0, d.size() - decimals);
  if (decimals > 0) {
    out += '.';
    out += d.substr(d.size() - decimals);
  }
  return out;
}

std::string decimal_string(const Rational& x, int significant) {
  if (x == 0) return "0";
  bool neg = x < 0;
  Rational a = neg ? -x : x;
  // decimal exponent e with 10^e <= a < 10^(e+1)
  long e = 0;
  Rational t = a;
  while (t >= 10) { t /= 10; ++e; }
  while (t < 1) { t *= 10; --e; }
  long decimals = significant - 1 - e;
  if (decimals < 0) decimals = 0;
  std::string s = fixed_decimal_string(a, static_cast<int>(decimals));
  if (s.find('.') != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  return neg ? "-" + s : s;
}

double to_double(const Rational& x) {
  return static_cast<double>(numerator(x)) / static_cast<double>(denominator(x));
}

bool is_dyadic(const Rational& x) {
  Int d = denominator(x);
  return (d & (d - 1)) == 0;
}

long dyadic_exponent(const Rational& x) {
  if (!is_dyadic(x)) throw std::domain_error("dyadic_exponent: not dyadic");
  Int d = denominator(x);
  long t = 0;
  while (d > 1) { d >>= 1; ++t; }
  return t;
}

}  // namespace sdm
