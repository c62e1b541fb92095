#include "densfluct/serialize.hpp"

#include <array>
#include <charconv>

#include "densfluct/error.hpp"

namespace densfluct {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  require(ec == std::errc(), ErrorKind::NumericalFailure, "number formatting failed");
  return std::string(buf.data(), ptr);
}

Json to_json(const EnergyDistribution& d) {
  if (d.is_analytic()) return {{"type", "arcsine"}, {"center", d.arcsine().center}, {"width", d.arcsine().width}};
  Json pts = Json::array();
  for (const auto& p : d.points().points) pts.push_back({{"value", p.value}, {"weight", p.weight}});
  return {{"type", "empirical"}, {"points", pts}};
}

EnergyDistribution distribution_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "arcsine") return EnergyDistribution::analytic(j.at("center").get<double>(), j.at("width").get<double>());
  require(type == "empirical", ErrorKind::ParseError, "unknown distribution type `" + type + "`");
  std::vector<WeightedPoint> pts;
  for (const auto& p : j.at("points")) pts.push_back({p.at("value").get<double>(), p.at("weight").get<double>()});
  return EnergyDistribution::empirical(std::move(pts));
}

Json to_json(const lattice::QuantumState& s) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i)
    amps.push_back({s.amplitudes()(i).real(), s.amplitudes()(i).imag()});
  return {{"n_sites", s.n_sites()}, {"amplitudes", amps}};
}

lattice::QuantumState state_from_json(const Json& j) {
  const int n = j.at("n_sites").get<int>();
  const auto& amps = j.at("amplitudes");
  lattice::Vector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = {amps[i].at(0).get<double>(), amps[i].at(1).get<double>()};
  return lattice::QuantumState::from_amplitudes(n, std::move(v));
}

Json to_json(const lattice::MatrixOperator& op) {
  const lattice::DenseMatrix m = op.dense();
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  return {{"n_sites", op.n_sites},
          {"decomposition", op.decomposition},
          {"local_terms", op.local_terms.size()},
          {"rows", m.rows()},
          {"cols", m.cols()},
          {"entries", entries}};
}

Json to_json(const lattice::CorrelatorReport& r) {
  Json g = Json::array();
  for (Eigen::Index i = 0; i < r.g_matrix.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < r.g_matrix.cols(); ++j) row.push_back(r.g_matrix(i, j));
    g.push_back(row);
  }
  return {{"g_matrix", g}, {"gbar", r.gbar}, {"sigma_sq", r.sigma_sq}, {"identity_residual", r.identity_residual}};
}

Json to_json(const bounds::BoundReport& r) {
  return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"satisfied", r.satisfied}, {"slack", r.slack}};
}

Json to_json(const magnus::VarianceSeries& s) {
  return {{"sigma_sq_initial", s.sigma_sq_initial},
          {"first_order", s.first_order},
          {"second_order", s.second_order},
          {"second_order_printed", s.second_order_printed},
          {"through_second", s.through_second()},
          {"exact_sigma_sq", s.exact_sigma_sq}};
}

Json to_json(const nonequil::CollapseFit& f) {
  Json pts = Json::array();
  for (const auto& p : f.points) pts.push_back({{"T", p.temperature}, {"x", p.x}, {"y", p.y}});
  return {{"liquid", f.liquid_id},
          {"abar", f.abar},
          {"residual_rms", f.residual_rms},
          {"at_boundary", f.at_boundary},
          {"warning", f.warning},
          {"excluded_rows", f.excluded_rows},
          {"points", pts}};
}

}  // namespace densfluct
