#include "densfluct/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace densfluct::special {

namespace {

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (k > x && std::abs(term) < 1e-18) break;
  }
  return sum;
}

// Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalised with
// J_0 + 2 sum_{k>=1} J_{2k} = 1.
double j0_miller(double x) {
  int start = 2 * static_cast<int>(x) + 60;
  if (start % 2 == 1) ++start;
  double next = 0.0;
  double current = 1e-300;
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * current - next;
    next = current;
    current = prev;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
    if (std::abs(current) > 1e250) {
      current *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += current;
  return current / norm;
}

double j0_hankel(double x) {
  // a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k)
  double p = 1.0;
  double q = 0.0;
  double a = 1.0;
  double xpow = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= -(odd * odd) / (8.0 * k);
    xpow *= x;
    const double term = a / xpow;
    if (std::abs(term) >= last) break;
    last = std::abs(term);
    // (-1)^{floor(k/2)} sign pattern of P and Q.
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (std::abs(term) < 1e-18) break;
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// erf(x) = 2/sqrt(pi) exp(-x^2) sum_n 2^n x^(2n+1) / (2n+1)!!, all terms positive.
double erf_series(double x) {
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 500; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// 1 / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))) by modified Lentz.
double erfcx_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n < 100000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) d = tiny;
    c = x + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

constexpr double kSeriesSwitch = 1.0;

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x < 8.0) return j0_series(x);
  if (x < 40.0) return j0_miller(x);
  return j0_hankel(x);
}

double erfcx(double x) {
  if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx(-x);
  if (x < kSeriesSwitch) return std::exp(x * x) * (1.0 - erf_series(x));
  return erfcx_continued_fraction(x);
}

double erfc(double x) {
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x < kSeriesSwitch) return 1.0 - erf_series(x);
  return std::exp(-x * x) * erfcx_continued_fraction(x);
}

double log_erfc(double x) {
  if (x < kSeriesSwitch) return std::log(erfc(x));
  return std::log(erfcx_continued_fraction(x)) - x * x;
}

}  // namespace densfluct::special
