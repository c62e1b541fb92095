#pragma once

#include <vector>

#include "densfluct/distribution.hpp"
#include "densfluct/drive.hpp"

// Closed-form results for the rotationally symmetric spin model driven by a
// uniform transverse field, plus an exact (2 S_tot + 1)-dimensional ladder
// representation used as an oracle.
//
// Units: hbar = 1. Every closed form carries hbar to first power next to
// S_tot, so restoring units multiplies energies by hbar.

namespace densfluct::collective {

// Standard deviation of the energy density H_spin/N at t_f.
//   Replace: B_z S |sin theta(t_f)| / (N sqrt 2) * sqrt(1 + 1/S - w^2)
//   Augment: precession about (0, B_y, B_z); single constant segment only.
double analytic_sigma(const SpinSector& sector, const DriveSchedule& schedule, double t_f);

// Energy density (e_symm - B_z m cos theta(t_f)) / N. e_symm is the
// rotationally invariant part of the initial eigenvalue.
double analytic_energy_mean(const SpinSector& sector, const DriveSchedule& schedule, double t_f,
                            double e_symm);

enum class MomentMethod { Asymptotic, Exact };
enum class EnergyScale { Density, Global };

// <(Delta eps)^{2g}>. Asymptotic is the large-N law C(2g,g) (sigma^2/2)^g.
// Exact evaluates the Heisenberg-picture energy in |S_tot, m> by repeated
// tridiagonal application. Replace mode only.
double central_moment(const SpinSector& sector, const DriveSchedule& schedule, double t_f, int g,
                      MomentMethod method);

// Exact central moment of any order p >= 1 at rotation angle theta, either
// per site (Density) or for the global energy (Global).
double exact_central_moment(const SpinSector& sector, double theta, double b_z, int order,
                            EnergyScale scale = EnergyScale::Density);

// J0(q sigma sqrt 2), the characteristic function of the arcsine law.
double characteristic_value(double q, double sigma);

// Arcsine density 1/(pi sigma sqrt(2 - d^2/sigma^2)) on |d| < sigma sqrt 2.
// Throws DegenerateDistribution for width 0.
double arcsine_density(double eps, double center, double width);
double arcsine_cdf(double eps, double center, double width);

// Column m of the Wigner matrix, d^S_{m',m}(theta) = <S m'| exp(-i theta S_y) |S m>,
// for m' = -S..S in ascending order. Computed by applying the exponential of
// the real tridiagonal generator -i S_y to e_m in Taylor substeps, which
// stays orthogonal to rounding for any S.
std::vector<double> wigner_column(HalfInt s, HalfInt m, double theta);

// Weights |d^S_{m',m}(theta)|^2 at energy densities (e_symm - B_z m')/N.
EnergyDistribution eigenweight_distribution(const SpinSector& sector, double theta, double b_z = 1.0,
                                            double e_symm = 0.0);

// Kolmogorov-Smirnov distance between point masses and the arcsine CDF.
double ks_distance_to_arcsine(const EmpiricalLaw& law, double center, double width);

// Times t_k = k pi / b_y at which sigma vanishes under a constant field.
double sigma_zero_time(int k, double b_y);

}  // namespace densfluct::collective
