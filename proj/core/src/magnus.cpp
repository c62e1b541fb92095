#include "densfluct/magnus.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "densfluct/error.hpp"

namespace densfluct::magnus {

using lattice::Complex;

namespace {

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) { return a * b - b * a; }

Complex expect(const Vector& psi, const DenseMatrix& op) { return psi.dot(op * psi); }

}  // namespace

MagnusTerms magnus_terms(const std::vector<DenseMatrix>& hamiltonians, const std::vector<double>& durations) {
  require(!hamiltonians.empty() && hamiltonians.size() == durations.size(), ErrorKind::InvalidArgument,
          "need one duration per segment Hamiltonian");
  const auto dim = hamiltonians.front().rows();
  MagnusTerms terms;
  terms.omega1 = DenseMatrix::Zero(dim, dim);
  terms.omega2 = DenseMatrix::Zero(dim, dim);
  DenseMatrix earlier = DenseMatrix::Zero(dim, dim);  // sum_{l<k} H_l tau_l
  for (std::size_t k = 0; k < hamiltonians.size(); ++k) {
    require(hamiltonians[k].rows() == dim, ErrorKind::DimensionMismatch, "segment dimensions differ");
    terms.omega1 += Complex(0.0, -durations[k]) * hamiltonians[k];
    terms.omega2 += (-0.5 * durations[k]) * commutator(hamiltonians[k], earlier);
    earlier += durations[k] * hamiltonians[k];
  }
  return terms;
}

MagnusTerms magnus_terms(const lattice::LatticeSpec& lattice, const DriveSchedule& schedule, double t) {
  require(t >= 0.0 && t <= schedule.total_duration() * (1.0 + 1e-15), ErrorKind::OutOfRange,
          "t outside the schedule span");
  const auto dim = static_cast<Eigen::Index>(lattice.dimension());
  if (t == 0.0) return {DenseMatrix::Zero(dim, dim), DenseMatrix::Zero(dim, dim), 2};
  std::vector<DenseMatrix> hs;
  std::vector<double> taus;
  const DriveSchedule head = schedule.truncated(t);
  for (const auto& seg : head.segments()) {
    hs.push_back(lattice::segment_hamiltonian(lattice, schedule.mode(), seg.b_y).dense());
    taus.push_back(seg.duration);
  }
  return magnus_terms(hs, taus);
}

DenseMatrix exp_anti_hermitian(const DenseMatrix& omega) {
  const DenseMatrix h = Complex(0.0, 1.0) * omega;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(0.5 * (h + h.adjoint()));
  require(solver.info() == Eigen::Success, ErrorKind::NumericalFailure, "eigendecomposition failed");
  Eigen::VectorXcd phases(solver.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -solver.eigenvalues()(k)));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

double spectral_norm(const DenseMatrix& m) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double magnus_error(const lattice::LatticeSpec& lattice, const DriveSchedule& schedule, double t) {
  const MagnusTerms terms = magnus_terms(lattice, schedule, t);
  const DenseMatrix approx = exp_anti_hermitian(terms.omega1 + terms.omega2);
  return spectral_norm(approx - lattice::schedule_propagator(lattice, schedule, t));
}

DriveSchedule two_segment_schedule(double t, double b_z) {
  return DriveSchedule(DriveMode::Augment, {{0.5 * t, 0.0}, {0.5 * t, 1.0}}, b_z);
}

VarianceSeries variance_expansion(const lattice::QuantumState& state, const lattice::LatticeSpec& lattice,
                                  const DriveSchedule& schedule, double t) {
  const lattice::MatrixOperator h_op = lattice::build_spin_hamiltonian(lattice);
  const DenseMatrix h = h_op.dense();
  const DenseMatrix h2 = h * h;
  const Vector& psi = state.amplitudes();
  const double n2 = static_cast<double>(lattice.n_sites()) * lattice.n_sites();
  const MagnusTerms terms = magnus_terms(lattice, schedule, t);
  const DenseMatrix& o1 = terms.omega1;
  const DenseMatrix& o2 = terms.omega2;
  const DenseMatrix half_o1_sq = 0.5 * o1 * o1;

  VarianceSeries s;
  const double e0 = expect(psi, h).real();
  s.sigma_sq_initial = (expect(psi, h2).real() - e0 * e0) / n2;

  const Complex e1 = expect(psi, commutator(h, o1));
  s.first_order = (expect(psi, commutator(h2, o1)) + 2.0 * e0 * expect(psi, commutator(o1, h))).real() / n2;

  auto anti = [](const DenseMatrix& a, const DenseMatrix& b) -> DenseMatrix { return a * b + b * a; };
  const Complex printed = expect(psi, anti(o2 + half_o1_sq, h2)) - expect(psi, o1 * h2 * o1) -
                          2.0 * e0 * (expect(psi, anti(o2 + half_o1_sq, h)) - expect(psi, o1 * h * o1));
  s.second_order_printed = printed.real() / n2;

  const Complex e2 = expect(psi, commutator(h, o2)) + expect(psi, anti(half_o1_sq, h)) - expect(psi, o1 * h * o1);
  const Complex second = expect(psi, commutator(h2, o2)) + expect(psi, anti(half_o1_sq, h2)) -
                         expect(psi, o1 * h2 * o1) - 2.0 * e0 * e2 - e1 * e1;
  s.second_order = second.real() / n2;

  const Vector psi_t = lattice::schedule_propagator(lattice, schedule, t) * psi;
  const double et = expect(psi_t, h).real();
  s.exact_sigma_sq = (expect(psi_t, h2).real() - et * et) / n2;
  return s;
}

double variance_rate(const Vector& psi, const DenseMatrix& h_drive, const DenseMatrix& h_ref, double n) {
  require(h_drive.rows() == h_ref.rows() && h_ref.rows() == psi.size(), ErrorKind::DimensionMismatch,
          "operator and state dimensions differ");
  const DenseMatrix d = commutator(h_drive, h_ref);
  const double mean_h = expect(psi, h_ref).real();
  const Complex value = Complex(0.0, 1.0) * (expect(psi, d * h_ref + h_ref * d) - 2.0 * mean_h * expect(psi, d));
  return value.real() / (n * n);
}

double variance_rate(const lattice::QuantumState& state_t, const lattice::MatrixOperator& h_drive,
                     const lattice::MatrixOperator& h_ref) {
  return variance_rate(state_t.amplitudes(), h_drive.dense(), h_ref.dense(), h_ref.n_sites);
}

}  // namespace densfluct::magnus
