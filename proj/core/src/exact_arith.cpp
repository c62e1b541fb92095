#include "densfluct/exact_arith.hpp"

#include <cmath>

#include "densfluct/error.hpp"

namespace densfluct::exact {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (long i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

double ratio_to_double(const BigInt& num, const BigInt& den) {
  require(den != 0, ErrorKind::DomainError, "division by zero");
  if (num == 0) return 0.0;
  const bool negative = (num < 0) != (den < 0);
  const BigInt a = abs(num);
  const BigInt b = abs(den);
  const long shift = 64 - static_cast<long>(msb(a)) + static_cast<long>(msb(b));
  BigInt q = shift >= 0 ? BigInt((a << shift) / b) : BigInt(a / (b << -shift));
  const double value = std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
  return negative ? -value : value;
}

double to_double(const Rational& r) {
  return ratio_to_double(numerator(r), denominator(r));
}

double log(const BigInt& x) {
  require(x > 0, ErrorKind::DomainError, "log of non-positive integer");
  const long bits = static_cast<long>(msb(x));
  if (bits < 1000) return std::log(x.convert_to<double>());
  const long shift = bits - 60;
  BigInt divisor = 1;
  divisor <<= shift;
  const BigInt top = x / divisor;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

}  // namespace densfluct::exact
