// Physical parameters of the pi-driven four-level j=1/2 <-> j=1/2 atom.
//
// Level labels follow the usual convention for this scheme: |1>, |2> are the
// excited sublevels, |3>, |4> the ground sublevels. |1><->|3> and |2><->|4>
// are the (antiparallel) pi transitions, |1><->|4> and |2><->|3> the sigma
// transitions.

#ifndef VICSIM_PARAMS_HPP
#define VICSIM_PARAMS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace vicsim {

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// rabi and detuning are dimensionless multiples of gamma0; the *_rate()
// accessors give them in the same absolute units as gamma0.
template <typename Real = double>
struct SystemParams {
  Real gamma0 = Real(1);
  std::complex<Real> rabi{Real(0), Real(0)};
  Real detuning = Real(0);
  // Vacuum-induced interference switch q. Only 0/1 exists.
  bool vic = true;

  std::complex<Real> rabi_rate() const { return rabi * gamma0; }
  Real detuning_rate() const { return detuning * gamma0; }
  Real rabi_abs2() const { return std::norm(rabi_rate()); }
  int q() const { return vic ? 1 : 0; }
};

template <typename Real = double>
struct DerivedRates {
  Real gamma_sigma;  // gamma0 / 6
  Real gamma_pi;     // gamma0 / 12
  Real gamma_total;  // gamma_sigma + gamma_pi
};

template <typename Real>
void validate(const SystemParams<Real>& p) {
  using std::isfinite;
  if (!isfinite(p.gamma0) || !(p.gamma0 > Real(0)))
    throw InvalidParameter("gamma0 must be finite and > 0");
  if (!isfinite(p.rabi.real()) || !isfinite(p.rabi.imag()))
    throw InvalidParameter("rabi must be finite");
  if (!isfinite(p.detuning)) throw InvalidParameter("detuning must be finite");
}

template <typename Real>
DerivedRates<Real> derive_rates(const SystemParams<Real>& p) {
  validate(p);
  DerivedRates<Real> r;
  r.gamma_sigma = p.gamma0 / Real(6);
  r.gamma_pi = p.gamma0 / Real(12);
  r.gamma_total = r.gamma_sigma + r.gamma_pi;
  return r;
}

// Interprets an integer/real interference strength. Only exact 0 or 1 is
// accepted.
template <typename Real>
bool vic_from_strength(Real q) {
  if (q == Real(0)) return false;
  if (q == Real(1)) return true;
  throw InvalidParameter("vic must be 0 or 1, got " + std::to_string(double(q)));
}

// Far-field prefactors for observation perpendicular to both the drive
// polarization and the propagation direction. Reduced mode pins both to 1.
template <typename Real = double>
struct GeometryPrefactors {
  Real reduced_dipole = Real(1);
  Real frequency = Real(1);
  Real distance = Real(1);
  Real speed_of_light = Real(1);
  bool reduced = true;

  // (w0/c)^4 |D|^2 / (6 r^2)
  Real intensity() const {
    if (reduced) return Real(1);
    const Real k = frequency / speed_of_light;
    return std::pow(k, 4) * reduced_dipole * reduced_dipole /
           (Real(6) * distance * distance);
  }

  // (w0/c)^8 |D|^4 / (36 r^4)
  Real correlation() const {
    if (reduced) return Real(1);
    const Real k = frequency / speed_of_light;
    return std::pow(k, 8) * std::pow(reduced_dipole, 4) /
           (Real(36) * std::pow(distance, 4));
  }

  static GeometryPrefactors physical_defaults() {
    GeometryPrefactors g;
    g.reduced = false;
    return g;
  }
};

}  // namespace vicsim

#endif  // VICSIM_PARAMS_HPP
