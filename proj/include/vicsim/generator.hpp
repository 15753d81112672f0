// Rotating-frame generators of the density-matrix dynamics.
//
// Component ordering (0-based index -> density element):
//
//    0 rho11   1 rho33   2 rho13   3 rho31   4 rho22   5 rho44   6 rho24   7 rho42
//    8 rho12   9 rho21  10 rho14  11 rho41  12 rho23  13 rho32  14 rho34  15 rho43
//
// The first eight form a closed set (the "8-block"); f_ik labels elsewhere in
// the library refer to this order with 1-based indices. rho_ab is the
// expectation of the slot operator |b><a|, e.g. slot 2 (rho33) is |3><3| and
// slot 3 (rho13) is |3><1|.

#ifndef VICSIM_GENERATOR_HPP
#define VICSIM_GENERATOR_HPP

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "vicsim/params.hpp"

namespace vicsim {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using DensityMatrix = Eigen::Matrix<std::complex<Real>, 4, 4>;

inline constexpr int kBlockDim = 8;
inline constexpr int kFullDim = 16;

enum class Slot : int { rho11 = 0, rho33, rho13, rho31, rho22, rho44, rho24, rho42 };

inline constexpr int index(Slot s) { return static_cast<int>(s); }

// Level labels (1-based) of each component, same order as above.
inline constexpr std::array<std::pair<int, int>, kFullDim> kComponentLevels{{
    {1, 1}, {3, 3}, {1, 3}, {3, 1}, {2, 2}, {4, 4}, {2, 4}, {4, 2},
    {1, 2}, {2, 1}, {1, 4}, {4, 1}, {2, 3}, {3, 2}, {3, 4}, {4, 3},
}};

// Component index of rho_ab (levels 1-based).
inline int component_index(int a, int b) {
  for (int k = 0; k < kFullDim; ++k)
    if (kComponentLevels[k].first == a && kComponentLevels[k].second == b) return k;
  throw std::out_of_range("no component for rho" + std::to_string(a) + std::to_string(b));
}

inline constexpr bool is_population(int k) {
  return kComponentLevels[k].first == kComponentLevels[k].second;
}

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Real = double>
struct GeneratorMatrix {
  CMatrix<Real> matrix;
  SystemParams<Real> params;

  int dimension() const { return static_cast<int>(matrix.rows()); }
};

template <typename Real>
CVector<Real> vectorize(const DensityMatrix<Real>& rho) {
  CVector<Real> v(kFullDim);
  for (int k = 0; k < kFullDim; ++k) {
    const auto [a, b] = kComponentLevels[k];
    v(k) = rho(a - 1, b - 1);
  }
  return v;
}

template <typename Real>
DensityMatrix<Real> unvectorize(const CVector<Real>& v) {
  if (v.size() != kFullDim) throw DimensionMismatch("unvectorize expects 16 components");
  DensityMatrix<Real> rho;
  for (int k = 0; k < kFullDim; ++k) {
    const auto [a, b] = kComponentLevels[k];
    rho(a - 1, b - 1) = v(k);
  }
  return rho;
}

// Sum of the population components of a 8- or 16-component state.
template <typename Real>
std::complex<Real> population_sum(const CVector<Real>& v) {
  std::complex<Real> s{};
  for (int k = 0; k < v.size(); ++k)
    if (is_population(k)) s += v(k);
  return s;
}

// Row functional selecting the population slots.
template <typename Real>
Eigen::Matrix<std::complex<Real>, 1, Eigen::Dynamic> trace_functional(int dim) {
  Eigen::Matrix<std::complex<Real>, 1, Eigen::Dynamic> w =
      Eigen::Matrix<std::complex<Real>, 1, Eigen::Dynamic>::Zero(dim);
  for (int k = 0; k < dim; ++k)
    if (is_population(k)) w(k) = Real(1);
  return w;
}

namespace detail {

// Writes d(rho_ij)/dt += c * rho_ab into the generator.
template <typename Real>
struct EquationWriter {
  CMatrix<Real>& m;

  void add(int i, int j, int a, int b, std::complex<Real> c) {
    m(component_index(i, j), component_index(a, b)) += c;
  }
  // Same term plus its Hermitian partner: d(rho_ji)/dt += conj(c) * rho_ba.
  void add_pair(int i, int j, int a, int b, std::complex<Real> c) {
    add(i, j, a, b, c);
    add(j, i, b, a, std::conj(c));
  }
};

template <typename Real>
void write_block8(CMatrix<Real>& m, const SystemParams<Real>& p) {
  const auto r = derive_rates(p);
  const std::complex<Real> I{0, 1};
  const auto W = p.rabi_rate();
  const auto Wc = std::conj(W);
  const Real G = r.gamma_total;
  const Real D = p.detuning_rate();
  EquationWriter<Real> eq{m};

  // Excited populations decay at 2*Gamma and feed the ground states through
  // 2*gamma_pi (pi channel) and 2*gamma_sigma (sigma channel).
  eq.add(1, 1, 1, 3, I * Wc);
  eq.add(1, 1, 3, 1, -I * W);
  eq.add(1, 1, 1, 1, -2 * G);

  eq.add(3, 3, 3, 1, I * W);
  eq.add(3, 3, 1, 3, -I * Wc);
  eq.add(3, 3, 2, 2, 2 * r.gamma_sigma);
  eq.add(3, 3, 1, 1, 2 * r.gamma_pi);

  eq.add_pair(1, 3, 1, 3, -I * D - G);
  eq.add_pair(1, 3, 1, 1, I * W);
  eq.add_pair(1, 3, 3, 3, -I * W);

  eq.add(2, 2, 4, 2, I * W);
  eq.add(2, 2, 2, 4, -I * Wc);
  eq.add(2, 2, 2, 2, -2 * G);

  eq.add(4, 4, 2, 4, I * Wc);
  eq.add(4, 4, 4, 2, -I * W);
  eq.add(4, 4, 1, 1, 2 * r.gamma_sigma);
  eq.add(4, 4, 2, 2, 2 * r.gamma_pi);

  eq.add_pair(2, 4, 2, 4, -I * D - G);
  eq.add_pair(2, 4, 2, 2, -I * W);
  eq.add_pair(2, 4, 4, 4, I * W);
}

template <typename Real>
void write_complement(CMatrix<Real>& m, const SystemParams<Real>& p) {
  const auto r = derive_rates(p);
  const std::complex<Real> I{0, 1};
  const auto W = p.rabi_rate();
  const auto Wc = std::conj(W);
  const Real G = r.gamma_total;
  const Real D = p.detuning_rate();
  EquationWriter<Real> eq{m};

  eq.add_pair(1, 2, 3, 2, -I * W);
  eq.add_pair(1, 2, 1, 4, -I * Wc);
  eq.add_pair(1, 2, 1, 2, std::complex<Real>(-2 * G));

  eq.add_pair(1, 4, 1, 4, -I * D - G);
  eq.add_pair(1, 4, 1, 2, -I * W);
  eq.add_pair(1, 4, 3, 4, -I * W);

  eq.add_pair(2, 3, 2, 3, -I * D - G);
  eq.add_pair(2, 3, 2, 1, I * W);
  eq.add_pair(2, 3, 4, 3, I * W);

  eq.add_pair(3, 4, 3, 2, -I * W);
  eq.add_pair(3, 4, 1, 4, -I * Wc);
  // Vacuum-induced interference between the antiparallel pi dipoles.
  if (p.vic) eq.add_pair(3, 4, 1, 2, std::complex<Real>(-r.gamma_pi));
}

}  // namespace detail

// Closed 8x8 block acting on (rho11, rho33, rho13, rho31, rho22, rho44, rho24, rho42).
// Independent of the vic switch.
template <typename Real>
GeneratorMatrix<Real> build_block8(const SystemParams<Real>& p) {
  validate(p);
  GeneratorMatrix<Real> g{CMatrix<Real>::Zero(kFullDim, kFullDim), p};
  detail::write_block8(g.matrix, p);
  g.matrix = g.matrix.topLeftCorner(kBlockDim, kBlockDim).eval();
  return g;
}

// Full 16x16 generator; block-diagonal with the 8-block in the top-left corner.
template <typename Real>
GeneratorMatrix<Real> build_full16(const SystemParams<Real>& p) {
  validate(p);
  GeneratorMatrix<Real> g{CMatrix<Real>::Zero(kFullDim, kFullDim), p};
  detail::write_block8(g.matrix, p);
  detail::write_complement(g.matrix, p);
  return g;
}

template <typename Real, typename Derived>
CVector<Real> rhs(const GeneratorMatrix<Real>& g, const Eigen::MatrixBase<Derived>& state) {
  if (state.size() != g.dimension())
    throw DimensionMismatch("state has " + std::to_string(state.size()) +
                            " components, generator expects " +
                            std::to_string(g.dimension()));
  return g.matrix * state;
}

// Applies the full generator to a 4x4 density matrix.
template <typename Real>
DensityMatrix<Real> apply(const GeneratorMatrix<Real>& g, const DensityMatrix<Real>& rho) {
  if (g.dimension() != kFullDim) throw DimensionMismatch("apply needs the 16x16 generator");
  return unvectorize<Real>(g.matrix * vectorize(rho));
}

}  // namespace vicsim

#endif  // VICSIM_GENERATOR_HPP
