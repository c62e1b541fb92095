#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "densfluct/distribution.hpp"
#include "densfluct/drive.hpp"

// Full 2^N product-basis construction of spin-1/2 Heisenberg models.
// Basis index bit i set <=> site i spin up <=> hard-core boson present at i.

namespace densfluct::lattice {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

inline constexpr int kMaxSites = 14;

struct Coupling {
  int i;
  int j;
  double value;
};

class LatticeSpec {
 public:
  LatticeSpec(int n_sites, std::vector<Coupling> couplings, double b_z);
  static LatticeSpec chain(int n_sites, double j, double b_z, bool periodic = false);
  static LatticeSpec all_to_all(int n_sites, double j, double b_z);

  int n_sites() const { return n_sites_; }
  std::size_t dimension() const { return std::size_t{1} << n_sites_; }
  const std::vector<Coupling>& couplings() const { return couplings_; }
  double b_z() const { return b_z_; }
  // sum_{i<j} J_ij
  double coupling_sum() const;
  // sum_j J_ij for one site
  double coupling_sum_at(int site) const;
  // H_symm eigenvalue on the fully symmetric subspace: -(1/4) sum_{i<j} J_ij.
  double symmetric_energy() const { return -0.25 * coupling_sum(); }

 private:
  int n_sites_;
  std::vector<Coupling> couplings_;
  double b_z_;
};

class QuantumState {
 public:
  static constexpr double kNormTolerance = 1e-12;
  // Validates length 2^n and unit norm.
  static QuantumState from_amplitudes(int n_sites, Vector amplitudes);
  // Product state: bit i of `bits` set means site i up.
  static QuantumState basis(int n_sites, std::size_t bits);
  // Output of unitary evolution; norm is checked by the caller, not here.
  static QuantumState evolved(int n_sites, Vector amplitudes);

  int n_sites() const { return n_sites_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

 private:
  QuantumState(int n_sites, Vector amplitudes) : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {}
  int n_sites_;
  Vector amplitudes_;
};

// Hermitian operator with an optional decomposition into local terms H_i.
struct MatrixOperator {
  int n_sites = 0;
  SparseMatrix matrix;
  std::vector<SparseMatrix> local_terms;
  std::string decomposition;

  DenseMatrix dense() const { return DenseMatrix(matrix); }
  double hermiticity_residual() const;
  // max |sum_i H_i - H|; 0 when no decomposition is attached.
  double decomposition_residual() const;
};

// -sum J_ij S_i.S_j - B_z sum S^z_i. Local term i holds -B_z S^z_i plus half of
// every bond incident on i.
MatrixOperator build_spin_hamiltonian(const LatticeSpec& lattice);
// H_tr = -b_y sum_i S^y_i, decomposed per site.
MatrixOperator transverse_field(int n_sites, double b_y);
// Segment Hamiltonian of a schedule: H_tr (Replace) or H_spin + H_tr (Augment).
MatrixOperator segment_hamiltonian(const LatticeSpec& lattice, DriveMode mode, double b_y);

SparseMatrix site_sz(int n_sites, int site);
SparseMatrix total_sz(int n_sites);
SparseMatrix total_s_squared(int n_sites);

// Equal-amplitude superposition of all product states with S^z_tot = m.
QuantumState dicke_state(int n_sites, HalfInt m);

double expectation(const SparseMatrix& op, const QuantumState& state);
double variance(const SparseMatrix& op, const QuantumState& state);

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  DenseMatrix eigenvectors;
};
Spectrum diagonalize(const SparseMatrix& op);

struct TrajectoryPoint {
  double time;
  QuantumState state;
};

// Segment-wise exact propagation, exp(-i H_seg dt) = V exp(-i lambda dt) V^dagger.
// Replace-mode segments share one eigendecomposition of -sum S^y scaled by b_y;
// Augment segments are cached per distinct b_y. Not safe for concurrent use.
class Evolver {
 public:
  Evolver(LatticeSpec lattice, DriveMode mode);
  Vector apply(const Vector& psi, double b_y, double dt);
  DenseMatrix propagator(double b_y, double dt);
  const LatticeSpec& lattice() const { return lattice_; }

 private:
  // Spectrum of the segment Hamiltonian per unit b_y (Replace) or per b_y (Augment).
  const Spectrum& spectrum_for(double b_y, double& scale);
  LatticeSpec lattice_;
  DriveMode mode_;
  std::map<double, Spectrum> cache_;
};

// Trajectory at t = 0 and at every segment boundary. With substeps > 1 each
// segment is additionally sampled at equal sub-intervals. Throws
// DimensionMismatch when the state does not match the lattice, and
// NumericalFailure when the norm drifts by more than 1e-10.
std::vector<TrajectoryPoint> evolve_state(const QuantumState& state, const LatticeSpec& lattice,
                                          const DriveSchedule& schedule, int substeps = 1);

// Time-ordered exact propagator for the first t of the schedule (dense).
DenseMatrix schedule_propagator(const LatticeSpec& lattice, const DriveSchedule& schedule, double t);

struct CorrelatorReport {
  Eigen::MatrixXd g_matrix;
  double gbar = 0.0;
  // Variance of H / N' computed from sum_ij G_ij / N'^2.
  double sigma_sq = 0.0;
  // |sum_ij G_ij / N'^2 - Var(H)/N'^2| as an independent check.
  double identity_residual = 0.0;
};

CorrelatorReport connected_pair_correlators(const QuantumState& state, const MatrixOperator& op);

inline constexpr double kDegeneracyTolerance = 1e-9;

// (eigenvalue / N, |projection|^2) with eigenvalues closer than merge_tol
// merged. Points whose merged weight is below min_weight are dropped.
EnergyDistribution eigenbasis_distribution(const QuantumState& state, const MatrixOperator& op,
                                           double merge_tol = kDegeneracyTolerance,
                                           double min_weight = 1e-20);
EnergyDistribution eigenbasis_distribution(const QuantumState& state, const Spectrum& spectrum,
                                           int n_sites, double merge_tol = kDegeneracyTolerance,
                                           double min_weight = 1e-20);

struct BoseDualReport {
  MatrixOperator h_bose;
  // Constant that makes h_bose the exact operator image of H_spin.
  double constant_offset = 0.0;
  double spectrum_max_diff = 0.0;
  double operator_max_diff = 0.0;
  // |n - (S^z_tot + N/2)| entrywise
  double number_map_max_diff = 0.0;
  // |H_doping(b_y) - H_tr(-b_y)| entrywise for b_y = 1
  double doping_map_max_diff = 0.0;
  bool spectra_agree = false;
};

// Hard-core boson image of H_spin built from b, b^dagger, n directly:
//   H_Bose = -sum_{i<j} J_ij [ (b^dag_i b_j + h.c.)/2 + n_i n_j ]
//            - sum_i (B_z - (1/2) sum_j J_ij) n_i + (B_z N/2 - (1/4) sum_{i<j} J_ij)
BoseDualReport bose_dual(const LatticeSpec& lattice, double tolerance = 1e-10);

// -(i b_y / 2) sum_i (b^dag_i - b_i)
SparseMatrix bose_doping(int n_sites, double b_y);

}  // namespace densfluct::lattice
