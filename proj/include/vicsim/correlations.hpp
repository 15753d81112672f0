// Pi-polarized fluorescence: steady intensity and two-time photon-photon
// correlations with and without vacuum-induced interference.
//
// The regression theorem gives
//
//   <B^+ (|1><1| + |2><2|)(t+tau) B> = sum_k F_k(tau) <B^+ X_k B>,
//   F_k = f_1k + f_5k,
//
// with X_k the slot operators of the 8-block and B = |3><1| - |4><2| (the two
// pi lowering operators add coherently because their dipoles are
// antiparallel). Without interference each transition contributes
// separately, f_1k <B1^+ X_k B1> + f_5k <B2^+ X_k B2> with B1 = |3><1|,
// B2 = |4><2|. The initial weights are evaluated on the steady state, so the
// vanishing of the coherence-slot terms is computed rather than assumed.

#ifndef VICSIM_CORRELATIONS_HPP
#define VICSIM_CORRELATIONS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "vicsim/generator.hpp"
#include "vicsim/params.hpp"
#include "vicsim/propagator.hpp"
#include "vicsim/steady.hpp"

namespace vicsim {

class UndefinedNormalization : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// |a><b| with 1-based level labels.
template <typename Real>
DensityMatrix<Real> ket_bra(int a, int b) {
  DensityMatrix<Real> m = DensityMatrix<Real>::Zero();
  m(a - 1, b - 1) = Real(1);
  return m;
}

// Coherent sum of the pi lowering operators, |3><1| - |4><2|.
template <typename Real>
DensityMatrix<Real> pi_lowering() {
  return ket_bra<Real>(3, 1) - ket_bra<Real>(4, 2);
}

// w_k = Tr(rho B^+ X_k B) for the eight slot operators X_k.
template <typename Real>
CVector<Real> regression_weights(const DensityMatrix<Real>& rho, const DensityMatrix<Real>& lowering) {
  CVector<Real> w(kBlockDim);
  const DensityMatrix<Real> raising = lowering.adjoint();
  for (int k = 0; k < kBlockDim; ++k) {
    const auto [a, b] = kComponentLevels[k];
    // rho_ab = <|b><a|>
    w(k) = (rho * raising * ket_bra<Real>(b, a) * lowering).trace();
  }
  return w;
}

template <typename Real = double>
struct PiIntensity {
  Real reduced = Real(0);   // |W|^2 / (2|W|^2 + G^2 + d^2) = rho11 + rho22
  Real physical = Real(0);  // reduced times the geometric prefactor
};

template <typename Real>
PiIntensity<Real> intensity_pi(const SystemParams<Real>& p, const GeometryPrefactors<Real>& geom = {}) {
  const auto s = steady_analytic(p);
  // |d31|^2 = |d42|^2 = |D|^2/6, carried by the prefactor
  PiIntensity<Real> i;
  i.reduced = s.rho11() + s.rho22();
  i.physical = geom.intensity() * i.reduced;
  return i;
}

// F_i = f_1i + f_5i with the 1-based slot label i.
template <typename Real>
Real big_F(const CMatrix<Real>& f, int i) {
  if (i < 1 || i > kBlockDim) throw std::out_of_range("F index must be in 1..8");
  return (f(0, i - 1) + f(4, i - 1)).real();
}

template <typename Real>
Real big_F(const PropagatorDecomposition<Real>& d, Real tau, int i) {
  return big_F<Real>(f_elements(d, tau), i);
}

// Uniform grid [0, tmax] with spacing dt; the last point is tmax when tmax/dt
// is integral (to rounding).
template <typename Real>
std::vector<Real> uniform_grid(Real tmax, Real dt) {
  if (!(dt > Real(0)) || !(tmax >= Real(0))) throw InvalidParameter("grid needs dt > 0 and tmax >= 0");
  const auto n = static_cast<long>(std::floor(tmax / dt + Real(1e-9)));
  std::vector<Real> g(static_cast<std::size_t>(n + 1));
  for (long k = 0; k <= n; ++k) g[static_cast<std::size_t>(k)] = dt * Real(k);
  return g;
}

// Precomputed pieces shared by every correlation evaluation at fixed params.
template <typename Real = double>
struct CorrelationModel {
  SystemParams<Real> params;
  GeometryPrefactors<Real> geometry;
  SteadyState<Real> steady;
  PropagatorDecomposition<Real> propagator;
  CVector<Real> weights_vic;    // B = |3><1| - |4><2|
  CVector<Real> weights_pi13;   // B = |3><1|
  CVector<Real> weights_pi24;   // B = |4><2|

  explicit CorrelationModel(const SystemParams<Real>& p, const GeometryPrefactors<Real>& g = {})
      : params(p),
        geometry(g),
        steady(steady_analytic(p)),
        propagator(decompose(build_block8(p))),
        weights_vic(regression_weights(steady.rho, pi_lowering<Real>())),
        weights_pi13(regression_weights(steady.rho, ket_bra<Real>(3, 1))),
        weights_pi24(regression_weights(steady.rho, ket_bra<Real>(4, 2))) {}

  // Complex-valued before truncation, so callers can inspect the residue.
  std::complex<Real> G2_vic_complex(const CMatrix<Real>& f) const {
    return ((f.row(0) + f.row(4)) * weights_vic).value() * geometry.correlation();
  }
  std::complex<Real> G2_novic_complex(const CMatrix<Real>& f) const {
    return ((f.row(0) * weights_pi13).value() + (f.row(4) * weights_pi24).value()) *
           geometry.correlation();
  }

  // Denominators of the normalized forms: <I>^2 (coherent) and the sum of the
  // per-transition <I>^2 (independent transitions).
  Real norm_vic() const {
    const Real i = steady.rho11() + steady.rho22();
    return i * i * geometry.correlation();
  }
  Real norm_novic() const {
    return (steady.rho11() * steady.rho11() + steady.rho22() * steady.rho22()) * geometry.correlation();
  }
  bool normalizable() const { return steady.rho11() > Real(0); }
};

template <typename Real = double>
struct CorrelationSeries {
  std::vector<Real> tau;
  std::vector<Real> G2_vic;
  std::vector<Real> G2_novic;
  std::vector<Real> g2_vic;     // empty unless normalized
  std::vector<Real> g2_novic;
  SystemParams<Real> params;
  GeometryPrefactors<Real> geometry;
  PropagatorPath path = PropagatorPath::eigendecomposition;
  Real max_imag_residue = Real(0);
  bool normalized = false;
};

template <typename Real>
CorrelationSeries<Real> correlation_series(const SystemParams<Real>& p, const std::vector<Real>& tau_grid,
                                           bool normalized = true,
                                           const GeometryPrefactors<Real>& geom = {}) {
  const CorrelationModel<Real> model(p, geom);
  if (normalized && !model.normalizable())
    throw UndefinedNormalization("g2 is undefined without drive (rho11 = 0)");

  CorrelationSeries<Real> s;
  s.params = p;
  s.geometry = geom;
  s.path = model.propagator.path;
  s.normalized = normalized;
  s.tau = tau_grid;
  s.G2_vic.reserve(tau_grid.size());
  s.G2_novic.reserve(tau_grid.size());
  for (Real t : tau_grid) {
    const CMatrix<Real> f = f_elements(model.propagator, t);
    const auto gv = model.G2_vic_complex(f);
    const auto gn = model.G2_novic_complex(f);
    s.max_imag_residue = std::max({s.max_imag_residue, std::abs(gv.imag()), std::abs(gn.imag())});
    s.G2_vic.push_back(gv.real());
    s.G2_novic.push_back(gn.real());
  }
  if (normalized) {
    const Real nv = model.norm_vic(), nn = model.norm_novic();
    for (std::size_t k = 0; k < s.tau.size(); ++k) {
      s.g2_vic.push_back(s.G2_vic[k] / nv);
      s.g2_novic.push_back(s.G2_novic[k] / nn);
    }
  }
  return s;
}

// Reduced G2 with interference: (F2 + F6) rho11 for the symmetric steady state.
template <typename Real>
std::vector<Real> G2_vic(const SystemParams<Real>& p, const std::vector<Real>& tau_grid,
                         const GeometryPrefactors<Real>& geom = {}) {
  return correlation_series(p, tau_grid, false, geom).G2_vic;
}

// Reduced G2 without interference: (f12 + f56) rho11.
template <typename Real>
std::vector<Real> G2_novic(const SystemParams<Real>& p, const std::vector<Real>& tau_grid,
                           const GeometryPrefactors<Real>& geom = {}) {
  return correlation_series(p, tau_grid, false, geom).G2_novic;
}

// vic: (F2 + F6) / (4 rho11); no vic: (f12 + f56) / (2 rho11).
template <typename Real>
std::vector<Real> g2_normalized(const SystemParams<Real>& p, const std::vector<Real>& tau_grid, bool vic) {
  auto s = correlation_series(p, tau_grid, true);
  return vic ? s.g2_vic : s.g2_novic;
}

template <typename Real = double>
struct PathwaySeries {
  std::vector<Real> tau;
  std::vector<Real> f12;  // |3> -> |1>
  std::vector<Real> f52;  // |3> -> |1> -> (sigma) |4> -> |2>
};

template <typename Real>
PathwaySeries<Real> pathway_probabilities(const SystemParams<Real>& p, const std::vector<Real>& tau_grid) {
  const auto d = decompose(build_block8(p));
  PathwaySeries<Real> s;
  s.tau = tau_grid;
  for (Real t : tau_grid) {
    const auto f = f_elements(d, t);
    s.f12.push_back(f_element<Real>(f, 1, 2).real());
    s.f52.push_back(f_element<Real>(f, 5, 2).real());
  }
  return s;
}

template <typename Real = double>
struct AsymptoteReport {
  SystemParams<Real> params;
  Real rho11 = 0;
  // Limits implied by f(inf) = v_ss (1,1,0,0,1,1,0,0).
  Real G2_vic_limit = 0;    // 4 rho11^2
  Real G2_novic_limit = 0;  // 2 rho11^2
  Real limit_ratio = 0;
  // Large-tau expressions in their printed form: 2|W|^2/D and |W|^2/D.
  Real G2_vic_printed = 0;
  Real G2_novic_printed = 0;
  Real printed_ratio = 0;
  // Measured at tau_max.
  Real tau_max = 0;
  Real G2_vic_measured = 0;
  Real G2_novic_measured = 0;
  Real measured_ratio = 0;
  Real g2_vic_measured = 0;
  Real g2_novic_measured = 0;
};

template <typename Real>
AsymptoteReport<Real> asymptote_report(const SystemParams<Real>& p, Real tau_max = Real(60)) {
  const CorrelationModel<Real> model(p);
  if (!model.normalizable()) throw UndefinedNormalization("asymptotes are undefined without drive");
  const Real r11 = model.steady.rho11();
  const Real w2 = p.rabi_abs2();
  const Real G = derive_rates(p).gamma_total;
  const Real denom = 2 * w2 + G * G + p.detuning_rate() * p.detuning_rate();

  AsymptoteReport<Real> a;
  a.params = p;
  a.rho11 = r11;
  a.G2_vic_limit = 4 * r11 * r11;
  a.G2_novic_limit = 2 * r11 * r11;
  a.limit_ratio = a.G2_vic_limit / a.G2_novic_limit;
  a.G2_vic_printed = 2 * w2 / denom;
  a.G2_novic_printed = w2 / denom;
  a.printed_ratio = a.G2_vic_printed / a.G2_novic_printed;

  a.tau_max = tau_max;
  const auto f = f_elements(model.propagator, tau_max);
  a.G2_vic_measured = model.G2_vic_complex(f).real();
  a.G2_novic_measured = model.G2_novic_complex(f).real();
  a.measured_ratio = a.G2_vic_measured / a.G2_novic_measured;
  a.g2_vic_measured = a.G2_vic_measured / model.norm_vic();
  a.g2_novic_measured = a.G2_novic_measured / model.norm_novic();
  return a;
}

}  // namespace vicsim

#endif  // VICSIM_CORRELATIONS_HPP
