#pragma once

#include <string>
#include <vector>

#include "densfluct/exact_lattice.hpp"

// Second-order Magnus expansion for piecewise-constant drives, and the
// series for the energy-density variance built from it.

namespace densfluct::magnus {

using lattice::DenseMatrix;
using lattice::Vector;

struct MagnusTerms {
  DenseMatrix omega1;  // -i sum_k H_k tau_k
  DenseMatrix omega2;  // -(1/2) sum_{k>l} [H_k, H_l] tau_k tau_l
  int order = 2;
};

// Throws OutOfRange for t < 0 or t beyond the schedule.
MagnusTerms magnus_terms(const lattice::LatticeSpec& lattice, const DriveSchedule& schedule, double t);
MagnusTerms magnus_terms(const std::vector<DenseMatrix>& hamiltonians, const std::vector<double>& durations);

// exp(Omega) for anti-Hermitian Omega via the eigendecomposition of i Omega.
DenseMatrix exp_anti_hermitian(const DenseMatrix& omega);
double spectral_norm(const DenseMatrix& m);

// || exp(Omega1 + Omega2) - U_exact(t) ||_2
double magnus_error(const lattice::LatticeSpec& lattice, const DriveSchedule& schedule, double t);

// Two Augment segments of length t/2 with b_y = 0 then b_y = 1. Replace-mode
// segments all commute, so this is the simplest schedule with [H_2, H_1] != 0.
DriveSchedule two_segment_schedule(double t, double b_z);

struct VarianceSeries {
  double sigma_sq_initial = 0.0;
  // (<[H^2, O1]> + 2 E0 <[O1, H]>) / N^2
  double first_order = 0.0;
  // Second-order term as usually printed: anticommutators of (O2 + O1^2/2)
  // with H^2 and H, without the square of the first-order energy shift.
  double second_order_printed = 0.0;
  // Second-order term of the expansion of <e^{-O} H^2 e^{O}> - <e^{-O} H e^{O}>^2:
  //   <[H^2,O2]> + <{O1^2/2, H^2}> - <O1 H^2 O1>
  //   - 2 E0 (<[H,O2]> + <{O1^2/2, H}> - <O1 H O1>) - <[H,O1]>^2
  double second_order = 0.0;
  double exact_sigma_sq = 0.0;

  double through_first() const { return sigma_sq_initial + first_order; }
  double through_second() const { return sigma_sq_initial + first_order + second_order; }
};

// Series for Var(H_spin / N) after evolving `state` for time t under the schedule.
VarianceSeries variance_expansion(const lattice::QuantumState& state, const lattice::LatticeSpec& lattice,
                                  const DriveSchedule& schedule, double t);

// I = (i / N^2) < {D, H} - 2 <H> D >, D = [H(t), H], evaluated in state_t.
// N is the site count of h_ref.
double variance_rate(const lattice::QuantumState& state_t, const lattice::MatrixOperator& h_drive,
                     const lattice::MatrixOperator& h_ref);
double variance_rate(const Vector& psi, const DenseMatrix& h_drive, const DenseMatrix& h_ref, double n);

}  // namespace densfluct::magnus
