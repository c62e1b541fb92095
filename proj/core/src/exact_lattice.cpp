#include "densfluct/exact_lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <utility>

#include <Eigen/Eigenvalues>

#include "densfluct/error.hpp"

namespace densfluct::lattice {

namespace {

using Triplet = Eigen::Triplet<Complex>;

bool up(std::size_t s, int i) { return (s >> i) & 1U; }

SparseMatrix from_triplets(std::size_t dim, const std::vector<Triplet>& t) {
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

// Appends c * S_i.S_j.
void add_exchange(std::vector<Triplet>& t, std::size_t dim, int i, int j, double c) {
  for (std::size_t s = 0; s < dim; ++s) {
    const bool ui = up(s, i);
    const bool uj = up(s, j);
    const auto idx = static_cast<Eigen::Index>(s);
    t.emplace_back(idx, idx, c * (ui == uj ? 0.25 : -0.25));
    if (ui != uj) {
      const std::size_t flipped = s ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
      t.emplace_back(static_cast<Eigen::Index>(flipped), idx, 0.5 * c);
    }
  }
}

void add_sz(std::vector<Triplet>& t, std::size_t dim, int i, double c) {
  for (std::size_t s = 0; s < dim; ++s) {
    const auto idx = static_cast<Eigen::Index>(s);
    t.emplace_back(idx, idx, c * (up(s, i) ? 0.5 : -0.5));
  }
}

// c * S^y_i; <up|S^y|down> = -i/2, <down|S^y|up> = +i/2.
void add_sy(std::vector<Triplet>& t, std::size_t dim, int i, double c) {
  for (std::size_t s = 0; s < dim; ++s) {
    const std::size_t flipped = s ^ (std::size_t{1} << i);
    const Complex amp = up(s, i) ? Complex(0.0, 0.5) : Complex(0.0, -0.5);
    t.emplace_back(static_cast<Eigen::Index>(flipped), static_cast<Eigen::Index>(s), c * amp);
  }
}

void check_sites(int n_sites) {
  require(n_sites >= 1, ErrorKind::InvalidArgument, "n_sites must be positive");
  require(n_sites <= kMaxSites, ErrorKind::SizeLimit,
          "n_sites exceeds the exact-diagonalization cap of " + std::to_string(kMaxSites));
}

double max_abs(const SparseMatrix& m) {
  double r = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

}  // namespace

LatticeSpec::LatticeSpec(int n_sites, std::vector<Coupling> couplings, double b_z)
    : n_sites_(n_sites), couplings_(std::move(couplings)), b_z_(b_z) {
  check_sites(n_sites_);
  std::set<std::pair<int, int>> seen;
  for (const auto& c : couplings_) {
    require(c.i >= 0 && c.j < n_sites_ && c.i < c.j, ErrorKind::InvalidArgument,
            "coupling indices must satisfy 0 <= i < j < n_sites");
    require(seen.emplace(c.i, c.j).second, ErrorKind::InvalidArgument, "duplicate coupling pair");
  }
}

LatticeSpec LatticeSpec::chain(int n_sites, double j, double b_z, bool periodic) {
  std::vector<Coupling> c;
  for (int i = 0; i + 1 < n_sites; ++i) c.push_back({i, i + 1, j});
  if (periodic && n_sites > 2) c.push_back({0, n_sites - 1, j});
  return LatticeSpec(n_sites, std::move(c), b_z);
}

LatticeSpec LatticeSpec::all_to_all(int n_sites, double j, double b_z) {
  std::vector<Coupling> c;
  for (int i = 0; i < n_sites; ++i)
    for (int k = i + 1; k < n_sites; ++k) c.push_back({i, k, j});
  return LatticeSpec(n_sites, std::move(c), b_z);
}

double LatticeSpec::coupling_sum() const {
  double s = 0.0;
  for (const auto& c : couplings_) s += c.value;
  return s;
}

double LatticeSpec::coupling_sum_at(int site) const {
  double s = 0.0;
  for (const auto& c : couplings_)
    if (c.i == site || c.j == site) s += c.value;
  return s;
}

QuantumState QuantumState::from_amplitudes(int n_sites, Vector amplitudes) {
  check_sites(n_sites);
  require(amplitudes.size() == (Eigen::Index{1} << n_sites), ErrorKind::DimensionMismatch,
          "amplitude vector length must be 2^n_sites");
  require(std::abs(amplitudes.norm() - 1.0) <= kNormTolerance, ErrorKind::InvalidArgument,
          "state must have unit norm");
  return QuantumState(n_sites, std::move(amplitudes));
}

QuantumState QuantumState::basis(int n_sites, std::size_t bits) {
  check_sites(n_sites);
  Vector v = Vector::Zero(Eigen::Index{1} << n_sites);
  require(bits < static_cast<std::size_t>(v.size()), ErrorKind::OutOfRange, "basis index out of range");
  v(static_cast<Eigen::Index>(bits)) = 1.0;
  return QuantumState(n_sites, std::move(v));
}

QuantumState QuantumState::evolved(int n_sites, Vector amplitudes) {
  return QuantumState(n_sites, std::move(amplitudes));
}

double MatrixOperator::hermiticity_residual() const {
  SparseMatrix diff = SparseMatrix(matrix.adjoint()) - matrix;
  return max_abs(diff);
}

double MatrixOperator::decomposition_residual() const {
  if (local_terms.empty()) return 0.0;
  SparseMatrix sum = local_terms.front();
  for (std::size_t i = 1; i < local_terms.size(); ++i) sum += local_terms[i];
  return max_abs(SparseMatrix(sum - matrix));
}

MatrixOperator build_spin_hamiltonian(const LatticeSpec& lattice) {
  const int n = lattice.n_sites();
  const std::size_t dim = lattice.dimension();
  std::vector<std::vector<Triplet>> local(n);
  for (int i = 0; i < n; ++i) add_sz(local[i], dim, i, -lattice.b_z());
  for (const auto& c : lattice.couplings()) {
    add_exchange(local[c.i], dim, c.i, c.j, -0.5 * c.value);
    add_exchange(local[c.j], dim, c.i, c.j, -0.5 * c.value);
  }
  MatrixOperator op;
  op.n_sites = n;
  op.decomposition = "site field term plus half of each incident bond";
  op.matrix = SparseMatrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (int i = 0; i < n; ++i) {
    op.local_terms.push_back(from_triplets(dim, local[i]));
    op.matrix += op.local_terms.back();
  }
  op.matrix.prune(Complex(0.0));
  return op;
}

MatrixOperator transverse_field(int n_sites, double b_y) {
  check_sites(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  MatrixOperator op;
  op.n_sites = n_sites;
  op.decomposition = "one transverse-field term per site";
  op.matrix = SparseMatrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (int i = 0; i < n_sites; ++i) {
    std::vector<Triplet> t;
    add_sy(t, dim, i, -b_y);
    op.local_terms.push_back(from_triplets(dim, t));
    op.matrix += op.local_terms.back();
  }
  return op;
}

MatrixOperator segment_hamiltonian(const LatticeSpec& lattice, DriveMode mode, double b_y) {
  MatrixOperator tr = transverse_field(lattice.n_sites(), b_y);
  if (mode == DriveMode::Replace) return tr;
  MatrixOperator h = build_spin_hamiltonian(lattice);
  h.matrix += tr.matrix;
  for (int i = 0; i < h.n_sites; ++i) h.local_terms[i] += tr.local_terms[i];
  h.decomposition += "; transverse field per site";
  return h;
}

SparseMatrix site_sz(int n_sites, int site) {
  check_sites(n_sites);
  require(site >= 0 && site < n_sites, ErrorKind::OutOfRange, "site index out of range");
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<Triplet> t;
  add_sz(t, dim, site, 1.0);
  return from_triplets(dim, t);
}

SparseMatrix total_sz(int n_sites) {
  check_sites(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<Triplet> t;
  for (int i = 0; i < n_sites; ++i) add_sz(t, dim, i, 1.0);
  return from_triplets(dim, t);
}

SparseMatrix total_s_squared(int n_sites) {
  check_sites(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<Triplet> t;
  for (std::size_t s = 0; s < dim; ++s) {
    const auto idx = static_cast<Eigen::Index>(s);
    t.emplace_back(idx, idx, 0.75 * n_sites);
  }
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) add_exchange(t, dim, i, j, 2.0);
  return from_triplets(dim, t);
}

QuantumState dicke_state(int n_sites, HalfInt m) {
  check_sites(n_sites);
  const int twice_n_up = m.twice() + n_sites;
  require(twice_n_up >= 0 && twice_n_up <= 2 * n_sites && twice_n_up % 2 == 0,
          ErrorKind::InvalidSector, "m incompatible with n_sites spin-1/2 sites");
  const int n_up = twice_n_up / 2;
  const std::size_t dim = std::size_t{1} << n_sites;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  std::size_t count = 0;
  for (std::size_t s = 0; s < dim; ++s)
    if (std::popcount(s) == n_up) {
      v(static_cast<Eigen::Index>(s)) = 1.0;
      ++count;
    }
  v /= std::sqrt(static_cast<double>(count));
  return QuantumState::from_amplitudes(n_sites, std::move(v));
}

double expectation(const SparseMatrix& op, const QuantumState& state) {
  require(op.rows() == state.amplitudes().size(), ErrorKind::DimensionMismatch,
          "operator and state dimensions differ");
  const Vector hv = op * state.amplitudes();
  return state.amplitudes().dot(hv).real();
}

double variance(const SparseMatrix& op, const QuantumState& state) {
  const double mean = expectation(op, state);
  const Vector centered = op * state.amplitudes() - mean * state.amplitudes();
  return centered.squaredNorm();
}

Spectrum diagonalize(const SparseMatrix& op) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(DenseMatrix(op), Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, ErrorKind::NumericalFailure, "eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Evolver::Evolver(LatticeSpec lattice, DriveMode mode) : lattice_(std::move(lattice)), mode_(mode) {}

const Spectrum& Evolver::spectrum_for(double b_y, double& scale) {
  const double key = mode_ == DriveMode::Replace ? 1.0 : b_y;
  scale = mode_ == DriveMode::Replace ? b_y : 1.0;
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, diagonalize(segment_hamiltonian(lattice_, mode_, key).matrix)).first;
  return it->second;
}

Vector Evolver::apply(const Vector& psi, double b_y, double dt) {
  double scale = 1.0;
  const Spectrum& sp = spectrum_for(b_y, scale);
  Vector coeff = sp.eigenvectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeff.size(); ++k)
    coeff(k) *= std::exp(Complex(0.0, -scale * sp.eigenvalues(k) * dt));
  return sp.eigenvectors * coeff;
}

DenseMatrix Evolver::propagator(double b_y, double dt) {
  double scale = 1.0;
  const Spectrum& sp = spectrum_for(b_y, scale);
  Eigen::VectorXcd phases(sp.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -scale * sp.eigenvalues(k) * dt));
  return sp.eigenvectors * phases.asDiagonal() * sp.eigenvectors.adjoint();
}

std::vector<TrajectoryPoint> evolve_state(const QuantumState& state, const LatticeSpec& lattice,
                                          const DriveSchedule& schedule, int substeps) {
  require(state.n_sites() == lattice.n_sites(), ErrorKind::DimensionMismatch,
          "state and lattice site counts differ");
  require(substeps >= 1, ErrorKind::InvalidArgument, "substeps must be positive");
  Evolver evolver(lattice, schedule.mode());
  std::vector<TrajectoryPoint> out;
  out.push_back({0.0, state});
  Vector psi = state.amplitudes();
  const double norm0 = psi.norm();
  double t = 0.0;
  for (const auto& seg : schedule.segments()) {
    const double dt = seg.duration / substeps;
    for (int k = 1; k <= substeps; ++k) {
      psi = evolver.apply(psi, seg.b_y, dt);
      const double time = (k == substeps) ? t + seg.duration : t + k * dt;
      require(std::abs(psi.norm() - norm0) <= 1e-10, ErrorKind::NumericalFailure,
              "norm drift above 1e-10 during evolution");
      out.push_back({time, QuantumState::evolved(state.n_sites(), psi)});
    }
    t += seg.duration;
  }
  return out;
}

DenseMatrix schedule_propagator(const LatticeSpec& lattice, const DriveSchedule& schedule, double t) {
  require(t >= 0.0 && t <= schedule.total_duration() * (1.0 + 1e-15), ErrorKind::OutOfRange,
          "t outside the schedule span");
  const auto dim = static_cast<Eigen::Index>(lattice.dimension());
  DenseMatrix u = DenseMatrix::Identity(dim, dim);
  if (t == 0.0) return u;
  Evolver evolver(lattice, schedule.mode());
  const DriveSchedule head = schedule.truncated(t);
  for (const auto& seg : head.segments()) u = evolver.propagator(seg.b_y, seg.duration) * u;
  return u;
}

CorrelatorReport connected_pair_correlators(const QuantumState& state, const MatrixOperator& op) {
  require(!op.local_terms.empty(), ErrorKind::InvalidArgument, "operator carries no decomposition");
  const Vector& psi = state.amplitudes();
  require(op.matrix.rows() == psi.size(), ErrorKind::DimensionMismatch,
          "operator and state dimensions differ");
  const auto np = static_cast<Eigen::Index>(op.local_terms.size());
  std::vector<Vector> centered;
  centered.reserve(op.local_terms.size());
  for (const auto& term : op.local_terms) {
    Vector v = term * psi;
    const Complex mean = psi.dot(v);
    v -= mean.real() * psi;
    centered.push_back(std::move(v));
  }
  CorrelatorReport r;
  r.g_matrix.resize(np, np);
  double sum = 0.0;
  double abs_sum = 0.0;
  for (Eigen::Index i = 0; i < np; ++i)
    for (Eigen::Index j = 0; j < np; ++j) {
      const double g = centered[i].dot(centered[j]).real();
      r.g_matrix(i, j) = g;
      sum += g;
      abs_sum += std::abs(g);
    }
  const double n2 = static_cast<double>(np * np);
  r.gbar = abs_sum / n2;
  r.sigma_sq = sum / n2;
  r.identity_residual = std::abs(r.sigma_sq - variance(op.matrix, state) / n2);
  return r;
}

EnergyDistribution eigenbasis_distribution(const QuantumState& state, const Spectrum& spectrum,
                                           int n_sites, double merge_tol, double min_weight) {
  const Vector proj = spectrum.eigenvectors.adjoint() * state.amplitudes();
  std::vector<WeightedPoint> points;
  Eigen::Index k = 0;
  const Eigen::Index dim = proj.size();
  while (k < dim) {
    const double first = spectrum.eigenvalues(k);
    double weight = 0.0;
    double weighted_value = 0.0;
    Eigen::Index count = 0;
    while (k < dim && spectrum.eigenvalues(k) - first <= merge_tol) {
      weight += std::norm(proj(k));
      weighted_value += spectrum.eigenvalues(k);
      ++count;
      ++k;
    }
    if (weight > min_weight) points.push_back({weighted_value / count / n_sites, weight});
  }
  return EnergyDistribution::empirical(std::move(points));
}

EnergyDistribution eigenbasis_distribution(const QuantumState& state, const MatrixOperator& op,
                                           double merge_tol, double min_weight) {
  require(op.matrix.rows() == state.amplitudes().size(), ErrorKind::DimensionMismatch,
          "operator and state dimensions differ");
  return eigenbasis_distribution(state, diagonalize(op.matrix), op.n_sites, merge_tol, min_weight);
}

SparseMatrix bose_doping(int n_sites, double b_y) {
  check_sites(n_sites);
  const std::size_t dim = std::size_t{1} << n_sites;
  const Complex c(0.0, -0.5 * b_y);
  std::vector<Triplet> t;
  for (int i = 0; i < n_sites; ++i)
    for (std::size_t s = 0; s < dim; ++s) {
      const std::size_t other = s ^ (std::size_t{1} << i);
      // b^dag_i |s> when empty, -b_i |s> when occupied
      t.emplace_back(static_cast<Eigen::Index>(other), static_cast<Eigen::Index>(s),
                     up(s, i) ? -c : c);
    }
  return from_triplets(dim, t);
}

BoseDualReport bose_dual(const LatticeSpec& lattice, double tolerance) {
  const int n = lattice.n_sites();
  const std::size_t dim = lattice.dimension();
  std::vector<Triplet> t;
  auto occ = [](std::size_t s, int i) { return up(s, i) ? 1.0 : 0.0; };
  for (const auto& c : lattice.couplings()) {
    for (std::size_t s = 0; s < dim; ++s) {
      const auto idx = static_cast<Eigen::Index>(s);
      t.emplace_back(idx, idx, -c.value * occ(s, c.i) * occ(s, c.j));
      // hopping: b^dag_i b_j moves a boson j -> i, and its conjugate
      if (up(s, c.i) != up(s, c.j)) {
        const std::size_t moved = s ^ ((std::size_t{1} << c.i) | (std::size_t{1} << c.j));
        t.emplace_back(static_cast<Eigen::Index>(moved), idx, -0.5 * c.value);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const double mu = lattice.b_z() - 0.5 * lattice.coupling_sum_at(i);
    for (std::size_t s = 0; s < dim; ++s) {
      const auto idx = static_cast<Eigen::Index>(s);
      t.emplace_back(idx, idx, -mu * occ(s, i));
    }
  }
  BoseDualReport r;
  r.constant_offset = 0.5 * lattice.b_z() * n - 0.25 * lattice.coupling_sum();
  for (std::size_t s = 0; s < dim; ++s) {
    const auto idx = static_cast<Eigen::Index>(s);
    t.emplace_back(idx, idx, r.constant_offset);
  }
  r.h_bose.n_sites = n;
  r.h_bose.matrix = from_triplets(dim, t);
  r.h_bose.decomposition = "none";

  const MatrixOperator h_spin = build_spin_hamiltonian(lattice);
  r.operator_max_diff = max_abs(SparseMatrix(r.h_bose.matrix - h_spin.matrix));
  const Eigen::VectorXd e_bose = diagonalize(r.h_bose.matrix).eigenvalues;
  const Eigen::VectorXd e_spin = diagonalize(h_spin.matrix).eigenvalues;
  r.spectrum_max_diff = (e_bose - e_spin).cwiseAbs().maxCoeff();

  std::vector<Triplet> number;
  for (std::size_t s = 0; s < dim; ++s) {
    const auto idx = static_cast<Eigen::Index>(s);
    number.emplace_back(idx, idx, static_cast<double>(std::popcount(s)) - 0.5 * n);
  }
  r.number_map_max_diff = max_abs(SparseMatrix(from_triplets(dim, number) - total_sz(n)));
  r.doping_map_max_diff =
      max_abs(SparseMatrix(bose_doping(n, 1.0) - transverse_field(n, -1.0).matrix));
  r.spectra_agree = r.spectrum_max_diff <= tolerance;
  return r;
}

}  // namespace densfluct::lattice
