#include "densfluct/half_int.hpp"

#include <cmath>

#include "densfluct/error.hpp"

namespace densfluct {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InvalidSector: return "invalid sector";
    case ErrorKind::UndefinedSpinRatio: return "undefined w (S_tot = 0)";
    case ErrorKind::UnsupportedSchedule: return "unsupported schedule";
    case ErrorKind::DegenerateDistribution: return "degenerate distribution";
    case ErrorKind::SizeLimit: return "size limit";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::OutOfRange: return "out of range";
    case ErrorKind::UnphysicalEnergy: return "unphysical energy";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::DomainError: return "domain error";
    case ErrorKind::MissingMetadata: return "missing metadata";
    case ErrorKind::ParseError: return "parse error";
    case ErrorKind::NumericalFailure: return "numerical failure";
  }
  return "error";
}

HalfInt HalfInt::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  require(std::isfinite(value) && std::abs(twice - rounded) < 1e-9 && std::abs(rounded) < 1e9,
          ErrorKind::InvalidArgument, "not a half-integer: " + std::to_string(value));
  return HalfInt(static_cast<int>(rounded));
}

std::string HalfInt::str() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace densfluct
