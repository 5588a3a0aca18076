#ifndef SDM_RATIONAL_HPP
#define SDM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace sdm {

// value-semantic bignum types (no expression templates)
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

// 2^k for k >= 0.
Int pow2i(long k);

// 2^k as a rational, k may be negative.
Rational pow2(long k);

Int floor_rat(const Rational& x);

// Accepts "p/q", plain integers and decimal strings like "1.25".
Rational parse_rational(std::string_view s);

// "p/q", or just "p" when the denominator is 1.
std::string fraction_string(const Rational& x);

// Shortest-of-fixed-width decimal rendering, round half away from zero.
// `significant` counts significant digits, not decimals.
std::string decimal_string(const Rational& x, int significant = 15);

// Fixed number of digits after the decimal point, round half away from zero.
std::string fixed_decimal_string(const Rational& x, int decimals);

double to_double(const Rational& x);

bool is_dyadic(const Rational& x);

// Smallest t >= 0 with x * 2^t integral. pre: is_dyadic(x).
long dyadic_exponent(const Rational& x);

}  // namespace sdm

#endif
