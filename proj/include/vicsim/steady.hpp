// Driven steady state: closed form and null space of the full generator.

#ifndef VICSIM_STEADY_HPP
#define VICSIM_STEADY_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "vicsim/generator.hpp"
#include "vicsim/params.hpp"

namespace vicsim {

class DegenerateKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Real = double>
struct SteadyState {
  DensityMatrix<Real> rho = DensityMatrix<Real>::Zero();
  // max |G v| of the kernel vector; zero for the closed form
  Real residual = Real(0);

  Real rho11() const { return rho(0, 0).real(); }
  Real rho22() const { return rho(1, 1).real(); }
  Real rho33() const { return rho(2, 2).real(); }
  Real rho44() const { return rho(3, 3).real(); }
  std::complex<Real> rho13() const { return rho(0, 2); }
  std::complex<Real> rho24() const { return rho(1, 3); }

  CVector<Real> as_vector() const { return vectorize(rho); }
  // The 8-block components in slot order.
  CVector<Real> block8() const { return as_vector().head(kBlockDim); }
};

// Closed form. With D = 2|W|^2 + G^2 + d^2:
//   rho11 = rho22 = |W|^2 / (2D)
//   rho33 = rho44 = (|W|^2 + G^2 + d^2) / (2D)
//   rho13 = -rho24 = -(i W / (G + i d)) (G^2 + d^2) / (2D)
// All other coherences vanish.
template <typename Real>
SteadyState<Real> steady_analytic(const SystemParams<Real>& p) {
  const auto r = derive_rates(p);
  const Real G = r.gamma_total;
  const Real d = p.detuning_rate();
  const Real w2 = p.rabi_abs2();
  const Real denom = 2 * w2 + G * G + d * d;
  const std::complex<Real> I{0, 1};

  SteadyState<Real> s;
  const Real excited = w2 / (2 * denom);
  const Real ground = (w2 + G * G + d * d) / (2 * denom);
  const std::complex<Real> c13 =
      -(I * p.rabi_rate() / std::complex<Real>(G, d)) * ((G * G + d * d) / (2 * denom));
  s.rho(0, 0) = excited;
  s.rho(1, 1) = excited;
  s.rho(2, 2) = ground;
  s.rho(3, 3) = ground;
  s.rho(0, 2) = c13;
  s.rho(2, 0) = std::conj(c13);
  s.rho(1, 3) = -c13;
  s.rho(3, 1) = -std::conj(c13);
  return s;
}

struct SteadyOptions {
  // singular values below rank_tol * sigma_max count as kernel directions
  double rank_tol = 1e-10;
};

// Unique kernel vector of the 16x16 generator, normalized to unit trace.
template <typename Real>
SteadyState<Real> steady_numeric(const GeneratorMatrix<Real>& g, SteadyOptions opt = {}) {
  if (g.dimension() != kFullDim) throw DimensionMismatch("steady_numeric needs the 16x16 generator");

  Eigen::JacobiSVD<CMatrix<Real>> svd(g.matrix, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Real cutoff = Real(opt.rank_tol) * sv(0);
  int kernel_dim = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) <= cutoff) ++kernel_dim;
  if (kernel_dim != 1)
    throw DegenerateKernel("generator kernel has dimension " + std::to_string(kernel_dim));

  CVector<Real> v = svd.matrixV().col(sv.size() - 1);
  v /= population_sum(v);

  SteadyState<Real> s;
  s.rho = unvectorize(v);
  // Enforce exact Hermiticity; the kernel vector is Hermitian up to rounding.
  s.rho = ((s.rho + s.rho.adjoint()) / Real(2)).eval();
  for (int k = 0; k < 4; ++k) s.rho(k, k) = s.rho(k, k).real();
  s.residual = (g.matrix * s.as_vector()).cwiseAbs().maxCoeff();
  return s;
}

template <typename Real>
SteadyState<Real> steady_numeric(const SystemParams<Real>& p, SteadyOptions opt = {}) {
  return steady_numeric(build_full16(p), opt);
}

}  // namespace vicsim

#endif  // VICSIM_STEADY_HPP
