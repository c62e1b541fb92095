#include <cmath>

#include "densfluct/distribution.hpp"
#include "densfluct/drive.hpp"
#include "densfluct/error.hpp"
#include "densfluct/half_int.hpp"
#include "doctest.h"

using namespace densfluct;

TEST_CASE("HalfInt arithmetic and parsing") {
  CHECK(HalfInt::from_double(1.5).twice() == 3);
  CHECK(HalfInt::from_double(-2.0) == HalfInt::integer(-2));
  CHECK_THROWS_AS(HalfInt::from_double(0.3), Error);
  CHECK((HalfInt(3) - HalfInt(1)).is_integer());
  CHECK(HalfInt(-3).abs() == HalfInt(3));
  CHECK(HalfInt(3).str() == "3/2");
  CHECK(HalfInt(4).str() == "2");
}

TEST_CASE("SpinSector validation") {
  CHECK_NOTHROW(SpinSector(4, HalfInt(4), HalfInt(0)));
  CHECK_NOTHROW(SpinSector(3, HalfInt(1), HalfInt(-1)));
  CHECK_THROWS_AS(SpinSector(4, HalfInt(6), HalfInt(0)), Error);  // S > N/2
  CHECK_THROWS_AS(SpinSector(4, HalfInt(3), HalfInt(1)), Error);  // N - 2S odd
  CHECK_THROWS_AS(SpinSector(4, HalfInt(2), HalfInt(4)), Error);  // |m| > S
  CHECK_THROWS_AS(SpinSector(4, HalfInt(2), HalfInt(1)), Error);  // S - m not integral
  try {
    (void)SpinSector(4, HalfInt(0), HalfInt(0)).w();
    FAIL("expected UndefinedSpinRatio");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UndefinedSpinRatio);
  }
  CHECK(SpinSector::dicke(4, HalfInt(2)).w() == 0.5);
}

TEST_CASE("DriveSchedule angle accumulates per segment and saturates") {
  DriveSchedule s(DriveMode::Replace, {{1.0, 2.0}, {0.5, -1.0}}, 1.0);
  CHECK(s.total_duration() == 1.5);
  CHECK(s.angle(0.0) == 0.0);
  CHECK(s.angle(0.5) == 1.0);
  CHECK(s.angle(1.25) == doctest::Approx(1.75));
  CHECK(s.angle(1.5) == 1.5);
  CHECK(s.angle(10.0) == 1.5);
  CHECK(s.truncated(1.25).segments().size() == 2);
  CHECK(s.truncated(1.25).segments()[1].duration == doctest::Approx(0.25));
  CHECK_THROWS_AS(DriveSchedule(DriveMode::Replace, {{0.0, 1.0}}, 1.0), Error);
  CHECK_THROWS_AS(DriveSchedule(DriveMode::Replace, {{-1.0, 1.0}}, 1.0), Error);
  CHECK(DriveSchedule::rotation(-0.3, 1.0).angle(1.0) == doctest::Approx(-0.3));
}

TEST_CASE("EnergyDistribution validation and moments") {
  CHECK_THROWS_AS(EnergyDistribution::empirical({{0.0, 0.5}, {1.0, 0.4}}), Error);
  CHECK_THROWS_AS(EnergyDistribution::empirical({{0.0, 1.2}, {1.0, -0.2}}), Error);
  const auto d = EnergyDistribution::empirical({{-1.0, 0.5}, {1.0, 0.5}});
  CHECK(d.mean() == 0.0);
  CHECK(d.variance() == 1.0);
  CHECK(d.central_moment(3) == 0.0);
  CHECK(d.characteristic(0.7) == doctest::Approx(std::cos(0.7)));

  const auto a = EnergyDistribution::analytic(0.2, 0.5);
  CHECK(a.mean() == 0.2);
  CHECK(a.variance() == doctest::Approx(0.25));
  CHECK(a.central_moment(4) == doctest::Approx(1.5 * std::pow(0.5, 4)));
  CHECK(a.characteristic(0.0) == 1.0);
}
