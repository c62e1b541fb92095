#pragma once

#include <optional>

#include "densfluct/exact_lattice.hpp"

namespace densfluct::bounds {

struct BoundReport {
  static constexpr double kSlackTolerance = 1e-12;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  double slack = 0.0;

  static BoundReport make(double lhs, double rhs);
};

struct UncertaintyReports {
  // sigma_{H/N} sigma_{Ht} >= (1/2) |<[H/N, Ht]>|
  BoundReport commutator;
  // sigma_{H/N} sigma_{Ht} >= |dE/dt| / (2N), dE/dt = i <[Ht, H]>
  BoundReport rate;
  // Gbar_S Gbar_I >= |dE/dt|^2 / (4 N^2); absent when either operator has no
  // local-term decomposition.
  std::optional<BoundReport> correlator;
  double sigma_density = 0.0;
  double sigma_total = 0.0;
  double energy_rate = 0.0;
  double gbar_system = 0.0;
  double gbar_total = 0.0;
};

// h_system is H of the subsystem, h_total the time-independent Ht driving it.
UncertaintyReports uncertainty_check(const lattice::QuantumState& state, const lattice::MatrixOperator& h_system,
                                     const lattice::MatrixOperator& h_total, int n_sites);

// Robertson inequality sigma_A sigma_B >= |<[A,B]>| / 2 for dense Hermitian A, B.
BoundReport robertson(const lattice::Vector& psi, const lattice::DenseMatrix& a, const lattice::DenseMatrix& b);

// 2 T^2 sqrt(C_I C_S), hbar = k_B = 1. Rates above this cannot keep a sharp
// equilibrium energy density.
double equilibrium_rate_threshold(double temperature, double cv_total, double cv_subsystem);

}  // namespace densfluct::bounds
