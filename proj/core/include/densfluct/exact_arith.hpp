#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace densfluct::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// C(n, k); 0 outside 0 <= k <= n.
BigInt binomial(long n, long k);

// num / den rounded to double from an exact integer quotient with at least
// 64 significant bits, so values far below 1e-300 keep full precision until
// the final scaling.
double ratio_to_double(const BigInt& num, const BigInt& den);
double to_double(const Rational& r);

// Natural log of a positive integer of any size.
double log(const BigInt& x);

}  // namespace densfluct::exact
