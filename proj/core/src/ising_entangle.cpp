#include "densfluct/ising_entangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "densfluct/error.hpp"

namespace densfluct::ising {

using exact::BigInt;
using exact::Rational;

DomainWallEnsemble::DomainWallEnsemble(int chain_length_, int wall_count_, double coupling_)
    : chain_length(chain_length_), wall_count(wall_count_), coupling(coupling_) {
  require(chain_length >= 2, ErrorKind::InvalidArgument, "chain length must be at least 2");
  require(wall_count >= 0 && wall_count <= chain_length - 1, ErrorKind::InvalidArgument,
          "wall count must lie in [0, L-1]");
  require(coupling > 0.0, ErrorKind::InvalidArgument, "coupling must be positive");
}

Rational correlator_hypergeometric(const DomainWallEnsemble& e, int d) {
  require(d >= 1 && d <= e.bonds(), ErrorKind::OutOfRange, "distance must lie in [1, L-1]");
  const int b = e.bonds();
  const int k = e.wall_count;
  BigInt sum = 0;
  for (int j = 0; j <= std::min(d, k); ++j) {
    const BigInt term = exact::binomial(d, j) * exact::binomial(b - d, k - j);
    sum += (j % 2 == 0) ? term : BigInt(-term);
  }
  return Rational(sum, exact::binomial(b, k));
}

Rational correlator_enumerated(const DomainWallEnsemble& e, int d) {
  require(d >= 1 && d <= e.bonds(), ErrorKind::OutOfRange, "distance must lie in [1, L-1]");
  require(e.chain_length <= kMaxEnumerationLength, ErrorKind::SizeLimit,
          "enumeration is capped at L = " + std::to_string(kMaxEnumerationLength));
  const int l = e.chain_length;
  long long total = 0;
  long long count = 0;
  for (unsigned long s = 0; s < (1UL << l); ++s) {
    int walls = 0;
    for (int i = 0; i + 1 < l; ++i) walls += ((s >> i) & 1UL) != ((s >> (i + 1)) & 1UL);
    if (walls != e.wall_count) continue;
    for (int r = 0; r + d < l; ++r) {
      total += (((s >> r) & 1UL) == ((s >> (r + d)) & 1UL)) ? 1 : -1;
      ++count;
    }
  }
  return Rational(total, count);
}

double domain_wall_correlator(const DomainWallEnsemble& e, int d, CorrelatorMethod method, double beta) {
  require(d >= 1 && d <= e.bonds(), ErrorKind::OutOfRange, "distance must lie in [1, L-1]");
  switch (method) {
    case CorrelatorMethod::ExactEnumeration:
      return exact::to_double(correlator_enumerated(e, d));
    case CorrelatorMethod::ExactHypergeometric:
      return exact::to_double(correlator_hypergeometric(e, d));
    case CorrelatorMethod::Asymptotic:
      return std::pow(static_cast<double>(e.bonds() - 2 * e.wall_count) / e.bonds(), d);
    case CorrelatorMethod::Thermal:
      return std::pow(std::tanh(beta * e.coupling), d);
  }
  return 0.0;
}

namespace {

double heat_capacity(int l, double j, double beta, double energy) {
  if (std::isinf(beta)) return 0.0;
  const double bj = beta * j;
  const double be = beta * energy / l;
  return l * (bj * bj - be * be);
}

}  // namespace

ThermoPoint thermo_from_energy(int l, double j, double energy) {
  require(l >= 2 && j > 0.0, ErrorKind::InvalidArgument, "need L >= 2 and J > 0");
  const double e_max = j * (l - 1);
  require(std::abs(energy) <= e_max, ErrorKind::UnphysicalEnergy, "|E| exceeds J (L-1)");
  const double ratio = -energy / e_max;
  double beta;
  if (ratio >= 1.0)
    beta = std::numeric_limits<double>::infinity();
  else if (ratio <= -1.0)
    beta = -std::numeric_limits<double>::infinity();
  else
    beta = std::atanh(ratio) / j;
  return {beta, energy, heat_capacity(l, j, beta, energy)};
}

ThermoPoint thermo_from_beta(int l, double j, double beta) {
  require(l >= 2 && j > 0.0, ErrorKind::InvalidArgument, "need L >= 2 and J > 0");
  const double energy = -j * (l - 1) * std::tanh(beta * j);
  return {beta, energy, heat_capacity(l, j, beta, energy)};
}

DickeSplit::DickeSplit(int n_sites_, HalfInt m_, int left_size_) : n_sites(n_sites_), m(m_), left_size(left_size_) {
  require(n_sites >= 2, ErrorKind::InvalidSector, "need at least two sites");
  require(m.abs().twice() <= n_sites && (n_sites - m.abs().twice()) % 2 == 0, ErrorKind::InvalidSector,
          "need |m| <= N/2 with N/2 - |m| integral");
  require(left_size >= 1 && left_size <= n_sites - 1, ErrorKind::InvalidSector, "need 1 <= L_A <= N-1");
}

double dicke_saddle_variance(const DickeSplit& split) {
  const double mu = split.m.value() / split.n_sites;
  return (1.0 - 4.0 * mu * mu) * split.left_size * split.right_size() / (4.0 * split.n_sites);
}

namespace {

// -sum w ln w for weights num_k / den, evaluated in log space. Summed in
// ascending order so that permuted weight lists give identical results.
double entropy_of_ratios(std::vector<BigInt> nums, const BigInt& den) {
  std::sort(nums.begin(), nums.end());
  const double log_den = exact::log(den);
  double s = 0.0;
  for (const auto& num : nums) {
    if (num == 0) continue;
    const double log_w = exact::log(num) - log_den;
    s -= std::exp(log_w) * log_w;
  }
  return s;
}

}  // namespace

double dicke_entanglement(const DickeSplit& split, EntropyMethod method) {
  if (method == EntropyMethod::Saddle)
    return 0.5 * std::log(2.0 * std::numbers::pi * dicke_saddle_variance(split) + 1.0);
  const int n = split.up_count();
  const int la = split.left_size;
  const int lb = split.right_size();
  std::vector<BigInt> nums;
  for (int k = std::max(0, n - lb); k <= std::min(la, n); ++k)
    nums.push_back(exact::binomial(la, k) * exact::binomial(lb, n - k));
  return entropy_of_ratios(nums, exact::binomial(split.n_sites, n));
}

double ising_wall_entanglement(const DomainWallEnsemble& e, int left_size) {
  require(left_size >= 1 && left_size <= e.chain_length - 1, ErrorKind::InvalidArgument,
          "need 1 <= L_A <= L-1");
  const int la = left_size;
  const int lb = e.chain_length - left_size;
  const int k = e.wall_count;
  std::vector<BigInt> nums;
  for (int j = 0; j <= k; ++j) nums.push_back(exact::binomial(la, k - j) * exact::binomial(lb - 1, j));
  return entropy_of_ratios(nums, exact::binomial(e.bonds(), k));
}

namespace {

void check_multiplet(int n_sites, HalfInt s_tot) {
  require(n_sites >= 1 && s_tot.twice() >= 0 && s_tot.twice() <= n_sites, ErrorKind::InvalidSector,
          "need 0 <= S <= N/2");
  require((n_sites - s_tot.twice()) % 2 == 0, ErrorKind::InvalidSector, "N - 2S must be even");
}

}  // namespace

BigInt spin_multiplicity_exact(int n_sites, HalfInt s_tot) {
  check_multiplet(n_sites, s_tot);
  const int down = (n_sites - s_tot.twice()) / 2;  // N/2 - S
  const int up = down + s_tot.twice() + 1;         // N/2 + S + 1
  // C(N, N/2 - S) (2S+1) / (N/2 + S + 1) is an integer.
  return exact::binomial(n_sites, down) * (s_tot.twice() + 1) / up;
}

double spin_multiplicity_log_gaussian(int n_sites, HalfInt s_tot) {
  check_multiplet(n_sites, s_tot);
  const double n = n_sites;
  const double s = s_tot.value();
  require(s > 0.0, ErrorKind::DomainError, "Gaussian form needs S > 0");
  return (n + 2.5) * std::numbers::ln2 - 2.0 * s * s / n + std::log(s) - 1.5 * std::log(n) -
         0.5 * std::log(std::numbers::pi);
}

double multiplicity_gaussian_ratio(int n_sites, HalfInt s_tot) {
  return std::exp(spin_multiplicity_log_gaussian(n_sites, s_tot) - exact::log(spin_multiplicity_exact(n_sites, s_tot)));
}

}  // namespace densfluct::ising
