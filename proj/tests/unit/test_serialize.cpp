#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>

#include "densfluct/error.hpp"
#include "densfluct/serialize.hpp"
#include "doctest.h"

using namespace densfluct;

TEST_CASE("format_double round trips") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, u(rng)) * (i % 2 ? 1 : -1);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(2.0) == "2");
  CHECK(std::strtod(format_double(std::numeric_limits<double>::denorm_min() * 7).c_str(), nullptr) ==
        std::numeric_limits<double>::denorm_min() * 7);
}

TEST_CASE("distributions round trip through JSON text") {
  const auto a = EnergyDistribution::analytic(0.25, 0.125);
  const auto a2 = distribution_from_json(Json::parse(to_json(a).dump()));
  CHECK(a2.mean() == a.mean());
  CHECK(a2.stddev() == a.stddev());
  const auto e = EnergyDistribution::empirical({{-0.3, 0.2}, {0.1, 0.5}, {0.7, 0.3}});
  const auto e2 = distribution_from_json(Json::parse(to_json(e).dump()));
  REQUIRE(e2.points().points.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(e2.points().points[i].value == e.points().points[i].value);
    CHECK(e2.points().points[i].weight == e.points().points[i].weight);
  }
  CHECK_THROWS_AS(distribution_from_json(Json{{"type", "lognormal"}}), Error);
}

TEST_CASE("states round trip through JSON text") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  lattice::Vector v(16);
  for (auto& x : v) x = {g(rng), g(rng)};
  v.normalize();
  const auto s = lattice::QuantumState::from_amplitudes(4, v);
  const auto back = state_from_json(Json::parse(to_json(s).dump()));
  CHECK(back.n_sites() == 4);
  CHECK((back.amplitudes() - v).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(state_from_json(Json{{"n_sites", 2}, {"amplitudes", Json::array({Json::array({1.0, 0.0})})}}),
                  Error);
}

TEST_CASE("reports serialize their fields") {
  const auto b = bounds::BoundReport::make(0.625, 0.125);
  const Json jb = to_json(b);
  CHECK(jb.at("lhs").get<double>() == 0.625);
  CHECK(jb.at("satisfied").get<bool>());

  const auto op = lattice::build_spin_hamiltonian(lattice::LatticeSpec::chain(2, 1.0, 1.0));
  const Json jo = to_json(op);
  CHECK(jo.at("rows").get<int>() == 4);
  CHECK(jo.at("entries").size() == 16);

  nonequil::CollapseFit f;
  f.liquid_id = "x";
  f.abar = 0.08;
  f.points.push_back({900.0, 1.5, 20.0});
  const Json jf = to_json(f);
  CHECK(jf.at("liquid") == "x");
  CHECK(jf.at("points").size() == 1);
}
