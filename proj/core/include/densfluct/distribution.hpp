#pragma once

#include <variant>
#include <vector>

namespace densfluct {

struct WeightedPoint {
  double value;
  double weight;
};

// Closed-form arcsine law with support [center - width*sqrt(2), center + width*sqrt(2)].
struct ArcsineLaw {
  double center;
  double width;
};

// Point masses |c_alpha|^2 at eps_alpha.
struct EmpiricalLaw {
  std::vector<WeightedPoint> points;
};

// Probability distribution P(eps') of the energy density.
class EnergyDistribution {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  static EnergyDistribution analytic(double center, double width);
  // Validates non-negative weights summing to one within kWeightTolerance.
  static EnergyDistribution empirical(std::vector<WeightedPoint> points);

  bool is_analytic() const { return std::holds_alternative<ArcsineLaw>(law_); }
  const ArcsineLaw& arcsine() const { return std::get<ArcsineLaw>(law_); }
  const EmpiricalLaw& points() const { return std::get<EmpiricalLaw>(law_); }

  double mean() const;
  double variance() const;
  double stddev() const;
  // <(eps' - mean)^order>
  double central_moment(int order) const;
  // <cos(q (eps' - mean))>; the sine part vanishes for the arcsine law and is
  // dropped for empirical inputs.
  double characteristic(double q) const;

 private:
  explicit EnergyDistribution(std::variant<ArcsineLaw, EmpiricalLaw> law) : law_(std::move(law)) {}

  std::variant<ArcsineLaw, EmpiricalLaw> law_;
};

}  // namespace densfluct
