#include "densfluct/collective_spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "densfluct/error.hpp"
#include "densfluct/special_functions.hpp"

namespace densfluct::collective {

namespace {

// <m+1| S+ |m> for spin s, both arguments doubled.
double ladder(int twice_s, int twice_m) {
  const double s = 0.5 * twice_s;
  const double m = 0.5 * twice_m;
  return std::sqrt(std::max(0.0, s * (s + 1.0) - m * (m + 1.0)));
}

double central_binomial(int g) {
  double c = 1.0;
  for (int k = 1; k <= g; ++k) c = c * (g + k) / k;
  return c;
}

// S (S+1) - m^2 = S^2 (1 + 1/S - w^2).
double transverse_weight(const SpinSector& sector) {
  const double s = sector.s_tot().value();
  const double m = sector.m().value();
  return s * (s + 1.0) - m * m;
}

}  // namespace

double analytic_sigma(const SpinSector& sector, const DriveSchedule& schedule, double t_f) {
  (void)sector.w();  // rejects S_tot = 0
  const double n = sector.n_sites();
  const double b_z = schedule.b_z();
  const double amplitude = std::sqrt(transverse_weight(sector) / 2.0);
  if (schedule.mode() == DriveMode::Replace) {
    const double theta = schedule.angle(t_f);
    return std::abs(b_z * std::sin(theta)) * amplitude / n;
  }
  require(schedule.segments().size() == 1, ErrorKind::UnsupportedSchedule,
          "augment mode requires a single constant-b_y segment");
  const double b_y = schedule.segments().front().b_y;
  const double t = std::min(t_f, schedule.total_duration());
  const double b = std::hypot(b_y, b_z);
  if (b == 0.0) return 0.0;
  const double phase = b * t;
  const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * phase), 2);
  const double angular = std::sqrt(std::pow(std::sin(phase), 2) +
                                   b_z * b_z * one_minus_cos * one_minus_cos / (b * b));
  return std::abs(b_z * b_y) / (n * b) * amplitude * angular;
}

double analytic_energy_mean(const SpinSector& sector, const DriveSchedule& schedule, double t_f,
                            double e_symm) {
  require(schedule.mode() == DriveMode::Replace, ErrorKind::UnsupportedSchedule,
          "energy mean closed form is for replace mode");
  const double theta = schedule.angle(t_f);
  return (e_symm - schedule.b_z() * sector.m().value() * std::cos(theta)) / sector.n_sites();
}

double exact_central_moment(const SpinSector& sector, double theta, double b_z, int order,
                            EnergyScale scale) {
  require(order >= 1, ErrorKind::InvalidArgument, "moment order must be positive");
  const int twice_s = sector.s_tot().twice();
  const int dim = twice_s + 1;
  const int twice_m = sector.m().twice();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double m = sector.m().value();

  // X = cos(theta) (S_z - m) + sin(theta) S_x; the centered Heisenberg-picture
  // energy is -B_z X. <m|S_x|m> = 0 so X is already centered.
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> out(dim, 0.0);
    for (int k = 0; k < dim; ++k) {
      const int twice_mk = -twice_s + 2 * k;
      double acc = c * (0.5 * twice_mk - m) * v[k];
      if (k > 0) acc += 0.5 * s * ladder(twice_s, twice_mk - 2) * v[k - 1];
      if (k + 1 < dim) acc += 0.5 * s * ladder(twice_s, twice_mk) * v[k + 1];
      out[k] = acc;
    }
    return out;
  };

  std::vector<double> v(dim, 0.0);
  v[(twice_m + twice_s) / 2] = 1.0;
  double log_scale = 0.0;
  const int half = order / 2;
  for (int i = 0; i < half; ++i) {
    v = apply(v);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (double& x : v) x /= norm;
    log_scale += std::log(norm);
  }
  double inner = 1.0;
  if (order % 2 == 1) {
    const auto xv = apply(v);
    inner = 0.0;
    for (int k = 0; k < dim; ++k) inner += v[k] * xv[k];
  }
  if (inner == 0.0) return 0.0;
  const double divisor = scale == EnergyScale::Density ? sector.n_sites() : 1.0;
  const double sign = (order % 2 == 1) ? -1.0 : 1.0;  // from -B_z
  const double log_mag =
      2.0 * log_scale + std::log(std::abs(inner)) + order * std::log(std::abs(b_z) / divisor);
  const double b_sign = (order % 2 == 1 && b_z < 0) ? -1.0 : 1.0;
  return sign * b_sign * (inner < 0 ? -1.0 : 1.0) * std::exp(log_mag);
}

double central_moment(const SpinSector& sector, const DriveSchedule& schedule, double t_f, int g,
                      MomentMethod method) {
  require(g >= 1, ErrorKind::InvalidArgument, "g must be a positive integer");
  require(schedule.mode() == DriveMode::Replace, ErrorKind::UnsupportedSchedule,
          "central moments are defined for replace mode");
  if (method == MomentMethod::Asymptotic) {
    const double sigma = analytic_sigma(sector, schedule, t_f);
    return central_binomial(g) * std::pow(0.5 * sigma * sigma, g);
  }
  return exact_central_moment(sector, schedule.angle(t_f), schedule.b_z(), 2 * g);
}

double characteristic_value(double q, double sigma) {
  require(sigma >= 0.0, ErrorKind::InvalidArgument, "sigma must be >= 0");
  return special::bessel_j0(q * sigma * std::numbers::sqrt2);
}

double arcsine_density(double eps, double center, double width) {
  require(width > 0.0, ErrorKind::DegenerateDistribution, "zero width: use a point mass");
  const double d = eps - center;
  if (std::abs(d) >= width * std::numbers::sqrt2) return 0.0;
  const double z = d / width;
  // (sqrt2 - z)(sqrt2 + z) keeps relative accuracy near the edges.
  return 1.0 / (std::numbers::pi * width * std::sqrt((std::numbers::sqrt2 - z) * (std::numbers::sqrt2 + z)));
}

double arcsine_cdf(double eps, double center, double width) {
  require(width > 0.0, ErrorKind::DegenerateDistribution, "zero width: use a point mass");
  const double z = (eps - center) / (width * std::numbers::sqrt2);
  if (z <= -1.0) return 0.0;
  if (z >= 1.0) return 1.0;
  return 0.5 + std::asin(z) / std::numbers::pi;
}

std::vector<double> wigner_column(HalfInt s, HalfInt m, double theta) {
  require(s.twice() >= 0 && m.abs() <= s && (s - m.abs()).is_integer(), ErrorKind::InvalidSector,
          "need |m| <= S with S - |m| integral");
  const int twice_s = s.twice();
  const int dim = twice_s + 1;
  std::vector<double> v(dim, 0.0);
  v[(m.twice() + twice_s) / 2] = 1.0;
  if (theta == 0.0 || dim == 1) return v;

  // A = -i S_y is real antisymmetric: A[k+1][k] = -c_k/2, A[k][k+1] = +c_k/2
  // with c_k = <k+1|S+|k>.
  std::vector<double> up(dim, 0.0);
  for (int k = 0; k + 1 < dim; ++k) up[k] = 0.5 * ladder(twice_s, -twice_s + 2 * k);
  auto apply = [&](const std::vector<double>& x, double h, std::vector<double>& out) {
    for (int k = 0; k < dim; ++k) {
      double acc = 0.0;
      if (k > 0) acc -= up[k - 1] * x[k - 1];
      if (k + 1 < dim) acc += up[k] * x[k + 1];
      out[k] = h * acc;
    }
  };

  const double norm_bound = 2.0 * *std::max_element(up.begin(), up.end());
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(theta) * norm_bound / 1.5)));
  const double h = theta / steps;
  std::vector<double> term(dim), next(dim), acc(dim);
  for (int step = 0; step < steps; ++step) {
    term = v;
    acc = v;
    for (int k = 1; k < 80; ++k) {
      apply(term, h / k, next);
      term.swap(next);
      double tnorm = 0.0;
      for (int i = 0; i < dim; ++i) {
        acc[i] += term[i];
        tnorm = std::max(tnorm, std::abs(term[i]));
      }
      if (tnorm < 1e-20) break;
    }
    v.swap(acc);
  }
  return v;
}

EnergyDistribution eigenweight_distribution(const SpinSector& sector, double theta, double b_z,
                                            double e_symm) {
  const auto column = wigner_column(sector.s_tot(), sector.m(), theta);
  const int twice_s = sector.s_tot().twice();
  std::vector<WeightedPoint> points;
  points.reserve(column.size());
  double total = 0.0;
  for (double amp : column) total += amp * amp;
  for (std::size_t k = 0; k < column.size(); ++k) {
    const double m_prime = 0.5 * (-twice_s + 2 * static_cast<int>(k));
    // Divide out rounding drift of the orthogonal propagation (~1e-15).
    points.push_back({(e_symm - b_z * m_prime) / sector.n_sites(), column[k] * column[k] / total});
  }
  std::sort(points.begin(), points.end(),
            [](const WeightedPoint& a, const WeightedPoint& b) { return a.value < b.value; });
  return EnergyDistribution::empirical(std::move(points));
}

double ks_distance_to_arcsine(const EmpiricalLaw& law, double center, double width) {
  auto pts = law.points;
  std::sort(pts.begin(), pts.end(),
            [](const WeightedPoint& a, const WeightedPoint& b) { return a.value < b.value; });
  double cumulative = 0.0;
  double distance = 0.0;
  for (const auto& p : pts) {
    const double f = arcsine_cdf(p.value, center, width);
    distance = std::max(distance, std::abs(cumulative - f));
    cumulative += p.weight;
    distance = std::max(distance, std::abs(cumulative - f));
  }
  return distance;
}

double sigma_zero_time(int k, double b_y) {
  require(b_y != 0.0, ErrorKind::InvalidArgument, "b_y must be non-zero");
  return k * std::numbers::pi / std::abs(b_y);
}

}  // namespace densfluct::collective
