#pragma once

#include <vector>

#include "densfluct/half_int.hpp"

namespace densfluct {

// Quantum numbers (N, S_tot, m) of a collective spin-1/2 initial state.
// Invariants: |m| <= S_tot <= N/2, S_tot - |m| integral, N - 2 S_tot even.
class SpinSector {
 public:
  SpinSector(int n_sites, HalfInt s_tot, HalfInt m);

  // Fully polarised-magnitude (Dicke) sector S_tot = N/2.
  static SpinSector dicke(int n_sites, HalfInt m);

  int n_sites() const { return n_sites_; }
  HalfInt s_tot() const { return s_tot_; }
  HalfInt m() const { return m_; }
  int dimension() const { return s_tot_.twice() + 1; }

  // w = m / S_tot; throws UndefinedSpinRatio for S_tot = 0.
  double w() const;

 private:
  int n_sites_;
  HalfInt s_tot_;
  HalfInt m_;
};

enum class DriveMode {
  Replace,  // H_spin is replaced by H_tr(t) = -b_y(t) sum_i S^y_i
  Augment,  // H_spin + H_tr
};

struct DriveSegment {
  double duration;
  double b_y;
};

// Piecewise-constant transverse-field protocol. After the last segment the
// system evolves with H_spin again, so accumulated quantities saturate.
class DriveSchedule {
 public:
  DriveSchedule(DriveMode mode, std::vector<DriveSegment> segments, double b_z);

  static DriveSchedule constant(DriveMode mode, double b_y, double duration, double b_z);
  // Replace-mode single segment with b_y = 1 and duration theta.
  static DriveSchedule rotation(double theta, double b_z);

  DriveMode mode() const { return mode_; }
  const std::vector<DriveSegment>& segments() const { return segments_; }
  double b_z() const { return b_z_; }
  double total_duration() const;

  // theta(t) = integral_0^t b_y(t') dt', accumulated exactly segment by segment.
  double angle(double t) const;

  // The schedule restricted to [0, t]; the last segment is shortened.
  DriveSchedule truncated(double t) const;

 private:
  DriveMode mode_;
  std::vector<DriveSegment> segments_;
  double b_z_;
};

}  // namespace densfluct
