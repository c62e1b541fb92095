#include "densfluct/drive.hpp"

#include <algorithm>
#include <cmath>

#include "densfluct/error.hpp"

namespace densfluct {

SpinSector::SpinSector(int n_sites, HalfInt s_tot, HalfInt m) : n_sites_(n_sites), s_tot_(s_tot), m_(m) {
  require(n_sites > 0, ErrorKind::InvalidSector, "n_sites must be positive");
  require(s_tot.twice() >= 0, ErrorKind::InvalidSector, "S_tot must be non-negative");
  require(s_tot.twice() <= n_sites, ErrorKind::InvalidSector, "S_tot exceeds N/2");
  require((n_sites - s_tot.twice()) % 2 == 0, ErrorKind::InvalidSector,
          "N/2 - S_tot must be an integer for spin-1/2 sites");
  require(m.abs() <= s_tot, ErrorKind::InvalidSector, "|m| exceeds S_tot");
  require((s_tot - m.abs()).is_integer(), ErrorKind::InvalidSector, "S_tot - |m| must be an integer");
}

SpinSector SpinSector::dicke(int n_sites, HalfInt m) { return SpinSector(n_sites, HalfInt(n_sites), m); }

double SpinSector::w() const {
  require(s_tot_.twice() > 0, ErrorKind::UndefinedSpinRatio, "w = m/S_tot needs S_tot > 0");
  return static_cast<double>(m_.twice()) / s_tot_.twice();
}

DriveSchedule::DriveSchedule(DriveMode mode, std::vector<DriveSegment> segments, double b_z)
    : mode_(mode), segments_(std::move(segments)), b_z_(b_z) {
  require(std::isfinite(b_z), ErrorKind::InvalidArgument, "b_z must be finite");
  for (const auto& seg : segments_) {
    require(seg.duration > 0.0 && std::isfinite(seg.duration), ErrorKind::InvalidArgument,
            "segment durations must be strictly positive");
    require(std::isfinite(seg.b_y), ErrorKind::InvalidArgument, "b_y must be finite");
  }
}

DriveSchedule DriveSchedule::constant(DriveMode mode, double b_y, double duration, double b_z) {
  return DriveSchedule(mode, {{duration, b_y}}, b_z);
}

DriveSchedule DriveSchedule::rotation(double theta, double b_z) {
  if (theta == 0.0) return DriveSchedule(DriveMode::Replace, {}, b_z);
  return DriveSchedule(DriveMode::Replace, {{std::abs(theta), theta < 0 ? -1.0 : 1.0}}, b_z);
}

double DriveSchedule::total_duration() const {
  double total = 0.0;
  for (const auto& seg : segments_) total += seg.duration;
  return total;
}

double DriveSchedule::angle(double t) const {
  require(t >= 0.0, ErrorKind::OutOfRange, "time must be non-negative");
  double theta = 0.0;
  double elapsed = 0.0;
  for (const auto& seg : segments_) {
    const double dt = std::min(seg.duration, t - elapsed);
    if (dt <= 0.0) break;
    theta += seg.b_y * dt;
    elapsed += seg.duration;
  }
  return theta;
}

DriveSchedule DriveSchedule::truncated(double t) const {
  require(t >= 0.0, ErrorKind::OutOfRange, "time must be non-negative");
  std::vector<DriveSegment> kept;
  double elapsed = 0.0;
  for (const auto& seg : segments_) {
    const double dt = std::min(seg.duration, t - elapsed);
    if (dt <= 0.0) break;
    kept.push_back({dt, seg.b_y});
    elapsed += seg.duration;
  }
  return DriveSchedule(mode_, std::move(kept), b_z_);
}

}  // namespace densfluct
