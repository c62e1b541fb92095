#include "densfluct/bounds.hpp"

#include <cmath>

#include "densfluct/error.hpp"

namespace densfluct::bounds {

using lattice::Complex;
using lattice::DenseMatrix;
using lattice::Vector;

BoundReport BoundReport::make(double lhs, double rhs) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.satisfied = r.slack >= -kSlackTolerance;
  return r;
}

namespace {

double stddev(const Vector& psi, const DenseMatrix& op) {
  const Vector v = op * psi;
  const double mean = psi.dot(v).real();
  return (v - mean * psi).norm();
}

}  // namespace

BoundReport robertson(const Vector& psi, const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == psi.size() && b.rows() == psi.size(), ErrorKind::DimensionMismatch,
          "operator and state dimensions differ");
  const Complex comm = psi.dot(a * (b * psi)) - psi.dot(b * (a * psi));
  return BoundReport::make(stddev(psi, a) * stddev(psi, b), 0.5 * std::abs(comm));
}

UncertaintyReports uncertainty_check(const lattice::QuantumState& state, const lattice::MatrixOperator& h_system,
                                     const lattice::MatrixOperator& h_total, int n_sites) {
  const Vector& psi = state.amplitudes();
  require(h_system.matrix.rows() == psi.size() && h_total.matrix.rows() == psi.size(),
          ErrorKind::DimensionMismatch, "operator and state dimensions differ");
  require(n_sites > 0, ErrorKind::InvalidArgument, "n_sites must be positive");
  const double n = n_sites;
  const Vector h_psi = h_system.matrix * psi;
  const Vector t_psi = h_total.matrix * psi;
  // <[Ht, H]> = <Ht psi | H psi> - <H psi | Ht psi>
  const Complex comm = t_psi.dot(h_psi) - h_psi.dot(t_psi);

  UncertaintyReports r;
  r.sigma_density = std::sqrt(lattice::variance(h_system.matrix, state)) / n;
  r.sigma_total = std::sqrt(lattice::variance(h_total.matrix, state));
  r.energy_rate = (Complex(0.0, 1.0) * comm).real();
  const double lhs = r.sigma_density * r.sigma_total;
  r.commutator = BoundReport::make(lhs, 0.5 * std::abs(comm) / n);
  r.rate = BoundReport::make(lhs, std::abs(r.energy_rate) / (2.0 * n));
  if (!h_system.local_terms.empty() && !h_total.local_terms.empty()) {
    r.gbar_system = lattice::connected_pair_correlators(state, h_system).gbar;
    r.gbar_total = lattice::connected_pair_correlators(state, h_total).gbar;
    r.correlator = BoundReport::make(r.gbar_system * r.gbar_total, r.energy_rate * r.energy_rate / (4.0 * n * n));
  }
  return r;
}

double equilibrium_rate_threshold(double temperature, double cv_total, double cv_subsystem) {
  require(temperature > 0.0, ErrorKind::InvalidArgument, "temperature must be positive");
  require(cv_total >= 0.0 && cv_subsystem >= 0.0, ErrorKind::InvalidArgument,
          "heat capacities must be non-negative");
  return 2.0 * temperature * temperature * std::sqrt(cv_total * cv_subsystem);
}

}  // namespace densfluct::bounds
