#pragma once

// In-repo special functions. Both are exercised against arbitrary-precision
// reference tables in tests/unit/test_special_functions.cpp.

namespace densfluct::special {

// Bessel J0. Power series for |x| < 8, Miller backward recurrence for
// 8 <= |x| < 40, Hankel asymptotic expansion beyond.
double bessel_j0(double x);

// Scaled complementary error function exp(x^2) erfc(x). Finite for all
// x >= 0; erfc itself underflows double past x ~ 26.55.
double erfcx(double x);

// erfc(x). For x < 1 uses 1 - erf(x) with a positive-term series; for
// x >= 1 uses the Laplace continued fraction evaluated by modified Lentz.
double erfc(double x);

// ln erfc(x), finite wherever erfcx is.
double log_erfc(double x);

}  // namespace densfluct::special
