#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "densfluct/distribution.hpp"
#include "densfluct/viscosity_data.hpp"

namespace densfluct::nonequil {

struct DeltaKernel {
  double at;
};
struct GaussianKernel {
  double mean;
  double sigma;
};
struct EmpiricalKernel {
  std::vector<WeightedPoint> points;
};

// Probability distribution over one intensive parameter.
class SmearKernel {
 public:
  // Gaussian quadrature runs over mean +- kGaussianReach sigma.
  static constexpr double kGaussianReach = 12.0;

  static SmearKernel delta(double at);
  static SmearKernel gaussian(double mean, double sigma);
  static SmearKernel empirical(std::vector<WeightedPoint> points);

  const std::variant<DeltaKernel, GaussianKernel, EmpiricalKernel>& kind() const { return kind_; }
  double mean() const;
  // Smallest and largest parameter value carrying weight.
  std::pair<double, double> support() const;

 private:
  explicit SmearKernel(std::variant<DeltaKernel, GaussianKernel, EmpiricalKernel> k) : kind_(std::move(k)) {}
  std::variant<DeltaKernel, GaussianKernel, EmpiricalKernel> kind_;
};

using Curve = std::function<double(double)>;

// Piecewise-linear curve through (x, y); NaN outside [x.front(), x.back()].
Curve tabulated_curve(std::vector<double> x, std::vector<double> y);

inline constexpr double kQuadratureTolerance = 1e-8;

// int P(q) O(q) dq. Exact sums for Delta/Empirical, adaptive Gauss-Kronrod for
// Gaussian. Throws DomainError if the curve is not finite on the support.
double kernel_average(const SmearKernel& kernel, const Curve& curve, double rel_tol = kQuadratureTolerance);

// A T (eps_melt - eps(T)) / (T_melt - T)
double glass_sigma(double temperature, const Curve& eps_of_t, double t_melt, double eps_melt, double abar);

// (T_melt - T) / (A T sqrt 2)
double collapse_abscissa(double temperature, double t_melt, double abar);
// eta_melt / erfc(x)
double viscosity_predict(double temperature, double t_melt, double abar, double eta_melt);
// log10 of the same, finite where erfc itself underflows.
double log10_viscosity_predict(double temperature, double t_melt, double abar, double eta_melt);

struct CollapsePoint {
  double temperature;
  double x;
  double y;  // eta / eta(T_l)
};

struct CollapseFit {
  std::string liquid_id;
  double abar = 0.0;
  // RMS of log10(eta_pred) - log10(eta_obs) over retained rows.
  double residual_rms = 0.0;
  bool at_boundary = false;
  std::string warning;
  std::size_t excluded_rows = 0;
  std::vector<CollapsePoint> points;
};

struct AbarBounds {
  double lo = 0.001;
  double hi = 1.0;
};

// Bounded least squares in log10 eta: log-spaced scan over the bounds, then
// Brent refinement (golden section with parabolic steps) inside the best
// bracket, polished as a root of the analytic slope when the optimum is
// interior. Throws InsufficientData for fewer than 3 retained rows.
CollapseFit fit_liquid(const ViscosityRecord& record, AbarBounds bounds = {});
std::vector<CollapseFit> fit_collapse(const ViscosityDataset& dataset, AbarBounds bounds = {});

// Residual of log10(y erfc(x)) per point; zero on the master curve.
double master_curve_residual(const CollapsePoint& p);

// G(w) = int P(mu) Z / (w - eps_k + mu + i/tau) dmu at every grid point.
std::vector<std::complex<double>> smeared_green(const std::vector<double>& omega_grid, double eps_k,
                                                const SmearKernel& kernel, double z_weight, double tau,
                                                double rel_tol = kQuadratureTolerance);
// A(w) = -Im G / pi
std::vector<double> spectral_function(const std::vector<std::complex<double>>& g);

// int_lo^hi A(w) dw from the closed-form Lorentzian integral per mu, averaged
// over the kernel.
double spectral_weight_closed_form(double eps_k, const SmearKernel& kernel, double z_weight, double tau, double lo,
                                   double hi);
// int A(w) dw by adaptive quadrature of the smeared Green's function; infinite
// limits allowed.
double spectral_weight_numeric(double eps_k, const SmearKernel& kernel, double z_weight, double tau, double lo,
                               double hi);

// Full width at half maximum of a sampled peak, linear interpolation between
// samples. Throws DomainError when the half-maximum crossings are not on the grid.
double full_width_half_max(const std::vector<double>& x, const std::vector<double>& y);

// 1 / (exp(nu/T) - 1)
double planck_occupation(double nu, double temperature);

// int P(T') planck(nu, T') dT' + ptei_weight planck(nu, T_ptei). The 2 h nu^3 / c^2
// radiance prefactor is 1 here; callers apply it.
double smeared_planck(double nu, const SmearKernel& kernel, double ptei_weight = 0.0, double ptei_temperature = 1.0,
                      double rel_tol = kQuadratureTolerance);

struct MomentPair {
  double arcsine;
  double gaussian;
};
// (C(2g,g) (s^2/2)^g, (2g)!/(2^g g!) s^{2g})
MomentPair moment_compare(int g, double sigma);

}  // namespace densfluct::nonequil
