#include "densfluct/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "densfluct/error.hpp"
#include "densfluct/special_functions.hpp"

namespace densfluct {

namespace {

double binomial_central(int g) {
  double c = 1.0;
  for (int k = 1; k <= g; ++k) c = c * (g + k) / k;
  return c;
}

}  // namespace

EnergyDistribution EnergyDistribution::analytic(double center, double width) {
  require(width >= 0.0 && std::isfinite(width), ErrorKind::InvalidArgument, "width must be >= 0");
  return EnergyDistribution(ArcsineLaw{center, width});
}

EnergyDistribution EnergyDistribution::empirical(std::vector<WeightedPoint> points) {
  double total = 0.0;
  for (const auto& p : points) {
    require(p.weight >= 0.0, ErrorKind::InvalidArgument, "negative weight");
    total += p.weight;
  }
  require(std::abs(total - 1.0) <= kWeightTolerance, ErrorKind::InvalidArgument,
          "weights must sum to 1 (got " + std::to_string(total) + ")");
  return EnergyDistribution(EmpiricalLaw{std::move(points)});
}

double EnergyDistribution::mean() const {
  if (is_analytic()) return arcsine().center;
  double m = 0.0;
  for (const auto& p : points().points) m += p.weight * p.value;
  return m;
}

double EnergyDistribution::variance() const { return central_moment(2); }

double EnergyDistribution::stddev() const { return std::sqrt(std::max(0.0, variance())); }

double EnergyDistribution::central_moment(int order) const {
  require(order >= 0, ErrorKind::InvalidArgument, "moment order must be >= 0");
  if (is_analytic()) {
    if (order % 2 == 1) return 0.0;
    const int g = order / 2;
    const double s2 = arcsine().width * arcsine().width;
    return binomial_central(g) * std::pow(0.5 * s2, g);
  }
  const double mu = mean();
  double acc = 0.0;
  for (const auto& p : points().points) acc += p.weight * std::pow(p.value - mu, order);
  return acc;
}

double EnergyDistribution::characteristic(double q) const {
  if (is_analytic()) return special::bessel_j0(q * arcsine().width * std::numbers::sqrt2);
  const double mu = mean();
  double acc = 0.0;
  for (const auto& p : points().points) acc += p.weight * std::cos(q * (p.value - mu));
  return acc;
}

}  // namespace densfluct
