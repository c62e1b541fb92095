#pragma once

#include "densfluct/exact_arith.hpp"
#include "densfluct/half_int.hpp"

// Ising-chain domain-wall eigenstates, entanglement of symmetric fixed-energy
// states, and total-spin multiplicities of N spin-1/2 sites.

namespace densfluct::ising {

// Open chain of L sites, B = L - 1 bonds, exactly k domain walls.
struct DomainWallEnsemble {
  DomainWallEnsemble(int chain_length, int wall_count, double coupling);
  int chain_length;
  int wall_count;
  double coupling;
  int bonds() const { return chain_length - 1; }
  // -J (B - 2k)
  double energy() const { return -coupling * (bonds() - 2 * wall_count); }
};

enum class CorrelatorMethod { ExactEnumeration, ExactHypergeometric, Asymptotic, Thermal };

inline constexpr int kMaxEnumerationLength = 20;

// <s_r s_{r+d}> with s = +-1 in the equal-amplitude superposition of all
// k-wall configurations. `beta` is used by Thermal only.
double domain_wall_correlator(const DomainWallEnsemble& ensemble, int distance, CorrelatorMethod method,
                              double beta = 0.0);
// sum_j (-1)^j C(d,j) C(B-d,k-j) / C(B,k)
exact::Rational correlator_hypergeometric(const DomainWallEnsemble& ensemble, int distance);
// Averaged over every configuration and every start site r.
exact::Rational correlator_enumerated(const DomainWallEnsemble& ensemble, int distance);

struct ThermoPoint {
  double beta;
  double energy;
  double heat_capacity;
};

// E = -J (L-1) tanh(beta J); C_v = L ((beta J)^2 - (beta E / L)^2).
ThermoPoint thermo_from_energy(int chain_length, double coupling, double energy);
ThermoPoint thermo_from_beta(int chain_length, double coupling, double beta);

struct DickeSplit {
  DickeSplit(int n_sites, HalfInt m, int left_size);
  int n_sites;
  HalfInt m;
  int left_size;
  int right_size() const { return n_sites - left_size; }
  int up_count() const { return (m.twice() + n_sites) / 2; }
};

enum class EntropyMethod { Exact, Saddle };

// Exact: -sum lambda_k ln lambda_k with lambda_k = C(L_A,k) C(L_B,n-k) / C(N,n).
// Saddle: (1/2) ln(2 pi sigma_B^2 + 1), sigma_B^2 = (1 - 4 mu^2) L_A L_B / (4N),
// mu = m/N, in units of the level spacing B_z (free spins in a field).
double dicke_entanglement(const DickeSplit& split, EntropyMethod method);
double dicke_saddle_variance(const DickeSplit& split);

// Entanglement of the symmetric k-wall state across the cut after site L_A:
// lambda_j = C(L_A, k-j) C(L_B - 1, j) / C(B, k).
double ising_wall_entanglement(const DomainWallEnsemble& ensemble, int left_size);

// N! (2S+1) / ((N/2+S+1)! (N/2-S)!)
exact::BigInt spin_multiplicity_exact(int n_sites, HalfInt s_tot);
// ln of 2^{N+5/2} e^{-2S^2/N} S / (N^{3/2} sqrt(pi)); the value itself
// overflows double for N beyond ~1000.
double spin_multiplicity_log_gaussian(int n_sites, HalfInt s_tot);
double multiplicity_gaussian_ratio(int n_sites, HalfInt s_tot);

}  // namespace densfluct::ising
