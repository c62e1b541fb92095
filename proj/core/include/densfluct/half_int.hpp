#pragma once

#include <compare>
#include <cstdlib>
#include <string>

namespace densfluct {

// A spin quantum number stored as twice its value, so 3/2 is HalfInt(3).
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice) : twice_(twice) {}

  static constexpr HalfInt integer(int value) { return HalfInt(2 * value); }
  // Throws ErrorKind::InvalidArgument unless `value` is a multiple of 1/2.
  static HalfInt from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr HalfInt abs() const { return HalfInt(twice_ < 0 ? -twice_ : twice_); }

  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string str() const;

 private:
  int twice_ = 0;
};

}  // namespace densfluct
