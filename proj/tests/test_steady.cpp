#include <doctest.h>

#include "vicsim/steady.hpp"

using namespace vicsim;
using cd = std::complex<double>;

namespace {

SystemParams<> params(cd omega, double delta, bool vic = true) {
  SystemParams<> p;
  p.rabi = omega;
  p.detuning = delta;
  p.vic = vic;
  return p;
}

double max_diff(const DensityMatrix<double>& a, const DensityMatrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("closed form at Omega=0.5, Delta=0") {
  const auto s = steady_analytic(params(0.5, 0.0));
  CHECK(s.rho11() == doctest::Approx(2.0 / 9).epsilon(1e-14));
  CHECK(s.rho22() == doctest::Approx(2.0 / 9).epsilon(1e-14));
  CHECK(s.rho33() == doctest::Approx(5.0 / 18).epsilon(1e-14));
  CHECK(s.rho44() == doctest::Approx(5.0 / 18).epsilon(1e-14));
  CHECK(std::abs(s.rho13() - cd(0, -1.0 / 9)) < 1e-15);
  CHECK(std::abs(s.rho24() - cd(0, 1.0 / 9)) < 1e-15);
  CHECK(std::abs(s.rho.trace() - cd(1.0)) < 1e-15);
}

TEST_CASE("undriven and saturated limits") {
  const auto s0 = steady_analytic(params(0.0, 0.3));
  CHECK(s0.rho11() == 0.0);
  CHECK(s0.rho33() == doctest::Approx(0.5));
  CHECK(s0.rho44() == doctest::Approx(0.5));
  CHECK(std::abs(s0.rho13()) == 0.0);

  const auto sat = steady_analytic(params(1e4, 0.0));
  CHECK(sat.rho11() == doctest::Approx(0.25).epsilon(1e-6));
  CHECK(sat.rho33() == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("analytic and null-space solutions agree over the grid") {
  for (double omega : {0.1, 0.5, 1.0, 3.0, 10.0})
    for (double delta : {0.0, 0.5, 2.0}) {
      CAPTURE(omega);
      CAPTURE(delta);
      const auto p = params(omega, delta);
      const auto a = steady_analytic(p);
      const auto n = steady_numeric(p);
      CHECK(max_diff(a.rho, n.rho) <= 1e-10);
      CHECK(n.residual <= 1e-12 * (1 + 2 * omega));
    }
}

TEST_CASE("steady state does not depend on q") {
  for (double omega : {0.1, 0.5, 3.0})
    for (double delta : {0.0, 0.5, 2.0}) {
      const auto on = steady_numeric(params(omega, delta, true));
      const auto off = steady_numeric(params(omega, delta, false));
      CHECK(max_diff(on.rho, off.rho) <= 1e-12);
    }
}

TEST_CASE("normalization, Hermiticity and positivity") {
  const auto s = steady_numeric(params({0.8, -0.6}, 1.1));
  CHECK(std::abs(s.rho.trace() - cd(1.0)) < 1e-13);
  CHECK((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<DensityMatrix<double>> es(s.rho);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("complex Rabi frequency enters through |W|^2 and the coherence phase") {
  const double phi = 0.7;
  const auto real = steady_analytic(params(0.5, 0.5));
  const auto cplx = steady_analytic(params(std::polar(0.5, phi), 0.5));
  CHECK(cplx.rho11() == doctest::Approx(real.rho11()));
  CHECK(std::abs(cplx.rho13() - real.rho13() * std::polar(1.0, phi)) < 1e-15);
  CHECK(max_diff(cplx.rho, steady_numeric(params(std::polar(0.5, phi), 0.5)).rho) <= 1e-10);
}

TEST_CASE("gamma0 scaling leaves the steady state unchanged") {
  auto p = params(0.5, 0.5);
  const auto one = steady_numeric(p);
  p.gamma0 = 3.0;
  CHECK(max_diff(one.rho, steady_numeric(p).rho) <= 1e-10);
  CHECK(max_diff(one.rho, steady_analytic(p).rho) <= 1e-10);
}

TEST_CASE("null space is degenerate without drive") {
  CHECK_THROWS_AS(steady_numeric(params(0.0, 0.0)), DegenerateKernel);
  CHECK_THROWS_AS(steady_numeric(build_block8(params(0.5, 0.0))), DimensionMismatch);
}
