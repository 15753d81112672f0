// Propagator of the closed 8-block: f(tau) = exp(M tau) through the
// eigendecomposition M = P diag(L) P^-1, a scaling-and-squaring fallback for
// ill-conditioned P, and an adaptive Runge-Kutta path used as an oracle.

#ifndef VICSIM_PROPAGATOR_HPP
#define VICSIM_PROPAGATOR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/numeric/odeint.hpp>

#include "vicsim/generator.hpp"
#include "vicsim/params.hpp"

namespace vicsim {

class IntegrationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PropagatorPath { eigendecomposition, matrix_exponential };

inline const char* to_string(PropagatorPath p) {
  return p == PropagatorPath::eigendecomposition ? "eigendecomposition" : "matrix_exponential";
}

struct DecomposeOptions {
  double condition_limit = 1e8;
  double zero_mode_tol = 1e-10;
};

template <typename Real = double>
struct PropagatorDecomposition {
  CMatrix<Real> generator;
  CVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;          // P
  CMatrix<Real> inverse_eigenvectors;  // P^-1
  Real residual = Real(0);             // |P L P^-1 - M|_inf / |M|_inf
  Real condition = Real(1);            // 2-norm condition number of P
  int stationary_modes = 0;            // eigenvalues with |l| <= zero_mode_tol
  PropagatorPath path = PropagatorPath::eigendecomposition;

  bool used_fallback() const { return path == PropagatorPath::matrix_exponential; }
};

template <typename Real>
Real inf_norm(const CMatrix<Real>& m) {
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

template <typename Real>
PropagatorDecomposition<Real> decompose(const GeneratorMatrix<Real>& m, DecomposeOptions opt = {}) {
  if (m.dimension() != kBlockDim) throw DimensionMismatch("decompose expects the 8x8 block");

  PropagatorDecomposition<Real> d;
  d.generator = m.matrix;
  Eigen::ComplexEigenSolver<CMatrix<Real>> es(m.matrix, true);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  d.eigenvalues = es.eigenvalues();
  d.eigenvectors = es.eigenvectors();

  Eigen::JacobiSVD<CMatrix<Real>> svd(d.eigenvectors);
  const auto& sv = svd.singularValues();
  d.condition = sv(sv.size() - 1) > Real(0) ? sv(0) / sv(sv.size() - 1)
                                            : std::numeric_limits<Real>::infinity();
  d.inverse_eigenvectors = d.eigenvectors.fullPivLu().inverse();

  const CMatrix<Real> rebuilt =
      d.eigenvectors * d.eigenvalues.asDiagonal() * d.inverse_eigenvectors;
  const Real scale = std::max(inf_norm<Real>(m.matrix), std::numeric_limits<Real>::min());
  d.residual = inf_norm<Real>(rebuilt - m.matrix) / scale;

  for (int k = 0; k < d.eigenvalues.size(); ++k)
    if (std::abs(d.eigenvalues(k)) <= Real(opt.zero_mode_tol)) ++d.stationary_modes;

  if (!(d.condition <= Real(opt.condition_limit))) d.path = PropagatorPath::matrix_exponential;
  return d;
}

// f(tau) = exp(M tau); element (i, k) is f_{i+1,k+1} in 1-based slot labels.
template <typename Real>
CMatrix<Real> f_elements(const PropagatorDecomposition<Real>& d, Real tau) {
  if (!(tau >= Real(0))) throw InvalidParameter("tau must be >= 0");
  if (d.used_fallback()) return (d.generator * tau).exp();
  CVector<Real> decay(d.eigenvalues.size());
  for (int l = 0; l < decay.size(); ++l) decay(l) = std::exp(d.eigenvalues(l) * tau);
  return d.eigenvectors * decay.asDiagonal() * d.inverse_eigenvectors;
}

// f_ik with 1-based slot labels, as in f12, f52, f56.
template <typename Real>
std::complex<Real> f_element(const CMatrix<Real>& f, int i, int k) {
  if (i < 1 || i > f.rows() || k < 1 || k > f.cols())
    throw std::out_of_range("f index out of range");
  return f(i - 1, k - 1);
}

struct OracleOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  long max_steps = 10'000'000;
};

// Integrates v' = M v with an adaptive Dormand-Prince 5(4) stepper and returns
// the state at each requested time (times must be nondecreasing, >= 0).
template <typename Real>
std::vector<CVector<Real>> expm_oracle_trajectory(const CMatrix<Real>& m, const CVector<Real>& v0,
                                                  const std::vector<Real>& times,
                                                  OracleOptions opt = {}) {
  namespace ode = boost::numeric::odeint;
  using State = std::vector<std::complex<Real>>;

  if (v0.size() != m.cols()) throw DimensionMismatch("initial state does not match generator");
  const auto n = static_cast<std::size_t>(v0.size());
  auto system = [&m, n](const State& x, State& dxdt, Real) {
    Eigen::Map<const CVector<Real>> xv(x.data(), static_cast<Eigen::Index>(n));
    Eigen::Map<CVector<Real>> dv(dxdt.data(), static_cast<Eigen::Index>(n));
    dv.noalias() = m * xv;
  };

  auto stepper = ode::make_controlled(Real(opt.abs_tol), Real(opt.rel_tol),
                                      ode::runge_kutta_dopri5<State, Real, State, Real>());
  State x(v0.data(), v0.data() + n);
  Real t = 0;
  Real dt = Real(opt.initial_step);
  long steps = 0;

  std::vector<CVector<Real>> out;
  out.reserve(times.size());
  for (Real target : times) {
    if (!(target >= t)) throw InvalidParameter("oracle times must be nondecreasing and >= 0");
    while (t < target) {
      const bool clipped = dt > target - t;
      Real h = clipped ? target - t : dt;
      const auto result = stepper.try_step(system, x, t, h);
      if (result == ode::success) {
        dt = clipped ? std::max(dt, h) : h;
      } else {
        dt = h;
        const Real floor = std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(t)) * 16;
        if (dt < floor) throw IntegrationFailure("step size underflow at t=" + std::to_string(double(t)));
      }
      if (++steps > opt.max_steps) throw IntegrationFailure("step budget exhausted");
      // try_step may have landed within rounding of the target
      if (target - t <= std::numeric_limits<Real>::epsilon() * std::max(Real(1), target)) t = target;
    }
    out.push_back(Eigen::Map<const CVector<Real>>(x.data(), static_cast<Eigen::Index>(n)));
  }
  return out;
}

template <typename Real>
CVector<Real> expm_oracle(const CMatrix<Real>& m, const CVector<Real>& v0, Real tau,
                          OracleOptions opt = {}) {
  if (!(tau >= Real(0))) throw InvalidParameter("tau must be >= 0");
  return expm_oracle_trajectory<Real>(m, v0, std::vector<Real>{tau}, opt).front();
}

// ---------------------------------------------------------------------------
// Eigenvalue reports

template <typename Real = double>
struct EigenReport {
  std::vector<std::complex<Real>> eigenvalues;
  SystemParams<Real> params;
  PropagatorPath path = PropagatorPath::eigendecomposition;
  Real residual = Real(0);
};

// Descending |Im|, then descending Re; ties in |Im| put +Im first so that
// conjugate pairs are adjacent. Imaginary parts below clamp_tol become 0.
template <typename Real>
std::vector<std::complex<Real>> canonical_eigenvalues(const CVector<Real>& ev, Real clamp_tol) {
  std::vector<std::complex<Real>> out(ev.data(), ev.data() + ev.size());
  for (auto& z : out)
    if (std::abs(z.imag()) <= clamp_tol) z = {z.real(), Real(0)};
  // Quantized keys keep conjugate partners (equal |Im| up to rounding) together.
  const Real grain = std::max(clamp_tol, Real(1e-9));
  auto key = [grain](const std::complex<Real>& z) {
    return std::make_tuple(-std::round(std::abs(z.imag()) / grain), -std::round(z.real() / grain),
                           -z.imag());
  };
  std::sort(out.begin(), out.end(), [&key](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

template <typename Real>
EigenReport<Real> report_eigenvalues(const SystemParams<Real>& p) {
  const auto m = build_block8(p);
  const auto d = decompose(m);
  EigenReport<Real> r;
  r.params = p;
  r.path = d.path;
  r.residual = d.residual;
  r.eigenvalues = canonical_eigenvalues<Real>(d.eigenvalues, Real(1e-9) * inf_norm<Real>(m.matrix));
  return r;
}

template <typename Real = double>
struct EigenMatch {
  std::vector<std::complex<Real>> computed;   // paired with reference[i]
  std::vector<std::complex<Real>> reference;
  std::vector<Real> deltas;                   // |computed - reference|
  Real max_delta = Real(0);

  bool within(Real tol) const { return max_delta <= tol; }
};

// Multiset comparison: the pairing minimizes the largest per-value distance,
// then the total distance (exhaustive over permutations; sets are small).
template <typename Real>
EigenMatch<Real> match_eigenvalues(const std::vector<std::complex<Real>>& computed,
                                   const std::vector<std::complex<Real>>& reference) {
  if (computed.size() != reference.size())
    throw std::invalid_argument("eigenvalue sets differ in size");
  if (computed.size() > 10) throw std::invalid_argument("match_eigenvalues: set too large");

  std::vector<std::size_t> perm(computed.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best = perm;
  Real best_max = std::numeric_limits<Real>::infinity();
  Real best_sum = best_max;
  do {
    Real mx = 0, sum = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      const Real dlt = std::abs(computed[perm[i]] - reference[i]);
      mx = std::max(mx, dlt);
      sum += dlt;
      if (mx > best_max) break;
    }
    if (mx < best_max || (mx == best_max && sum < best_sum)) {
      best_max = mx;
      best_sum = sum;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  EigenMatch<Real> m;
  m.reference = reference;
  for (std::size_t i = 0; i < best.size(); ++i) {
    m.computed.push_back(computed[best[i]]);
    m.deltas.push_back(std::abs(computed[best[i]] - reference[i]));
  }
  m.max_delta = best_max;
  return m;
}

}  // namespace vicsim

#endif  // VICSIM_PROPAGATOR_HPP
