#include <doctest.h>

#include "vicsim/generator.hpp"
#include "vicsim/params.hpp"

using vicsim::SystemParams;

TEST_CASE("derive_rates fixes the channel split") {
  SystemParams<> p;
  auto r = vicsim::derive_rates(p);
  CHECK(r.gamma_sigma == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(r.gamma_pi == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(r.gamma_total == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r.gamma_total == r.gamma_sigma + r.gamma_pi);
  CHECK(2 * r.gamma_sigma == doctest::Approx(1.0 / 3));
  CHECK(2 * r.gamma_pi == doctest::Approx(1.0 / 6));

  p.gamma0 = 2.0;
  r = vicsim::derive_rates(p);
  CHECK(r.gamma_sigma == doctest::Approx(1.0 / 3));
  CHECK(r.gamma_pi == doctest::Approx(1.0 / 6));
  CHECK(r.gamma_total == doctest::Approx(0.5));
}

TEST_CASE("non-positive or non-finite gamma0 is rejected") {
  SystemParams<> p;
  p.gamma0 = 0.0;
  CHECK_THROWS_AS(vicsim::derive_rates(p), vicsim::InvalidParameter);
  p.gamma0 = -1.0;
  CHECK_THROWS_AS(vicsim::derive_rates(p), vicsim::InvalidParameter);
  p.gamma0 = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(vicsim::derive_rates(p), vicsim::InvalidParameter);
  p.gamma0 = 1.0;
  p.detuning = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(vicsim::validate(p), vicsim::InvalidParameter);
}

TEST_CASE("vic strength is binary") {
  CHECK(vicsim::vic_from_strength(1.0));
  CHECK_FALSE(vicsim::vic_from_strength(0.0));
  CHECK_THROWS_AS(vicsim::vic_from_strength(0.5), vicsim::InvalidParameter);
  CHECK_THROWS_AS(vicsim::vic_from_strength(2), vicsim::InvalidParameter);
}

TEST_CASE("rates and generators scale linearly in gamma0") {
  for (double c : {0.5, 2.0, 7.3}) {
    SystemParams<> one;
    one.rabi = {0.7, 0.2};
    one.detuning = 0.4;
    SystemParams<> scaled = one;
    scaled.gamma0 = c;
    const auto r1 = vicsim::derive_rates(one), rc = vicsim::derive_rates(scaled);
    CHECK(rc.gamma_total == doctest::Approx(c * r1.gamma_total));
    CHECK(rc.gamma_total == rc.gamma_sigma + rc.gamma_pi);

    const auto m1 = vicsim::build_full16(one).matrix;
    const auto mc = vicsim::build_full16(scaled).matrix;
    CHECK((mc - c * m1).cwiseAbs().maxCoeff() <= 1e-14 * c);
  }
}

TEST_CASE("geometry prefactors") {
  vicsim::GeometryPrefactors<> reduced;
  CHECK(reduced.intensity() == 1.0);
  CHECK(reduced.correlation() == 1.0);
  const auto phys = vicsim::GeometryPrefactors<>::physical_defaults();
  CHECK(phys.intensity() == doctest::Approx(1.0 / 6));
  CHECK(phys.correlation() == doctest::Approx(1.0 / 36));
  auto g = phys;
  g.reduced_dipole = 2.0;
  g.distance = 2.0;
  // (1)^4 * 4 / (6 * 4)
  CHECK(g.intensity() == doctest::Approx(1.0 / 6));
  // 16 / (36 * 16)
  CHECK(g.correlation() == doctest::Approx(1.0 / 36));
  g.frequency = 2.0;
  CHECK(g.intensity() == doctest::Approx(16.0 / 6));
}
