#pragma once

// Matrix-pencil fit of a uniformly sampled sum of damped exponentials,
// y(n dt) = sum_k a_k exp(s_k n dt).

#include <algorithm>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "vicsim/correlations.hpp"

namespace testing_support {

using cd = std::complex<double>;

struct Mode {
  cd rate;        // s_k
  cd amplitude;   // a_k
};

inline std::vector<Mode> matrix_pencil(const std::vector<double>& y, double dt, int max_order,
                                       double rank_tol = 1e-9) {
  const int n = static_cast<int>(y.size());
  const int l = n / 2;
  Eigen::MatrixXd h(n - l, l + 1);
  for (int r = 0; r < n - l; ++r)
    for (int c = 0; c <= l; ++c) h(r, c) = y[r + c];

  Eigen::BDCSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int order = 0;
  while (order < std::min<int>(max_order, sv.size()) && sv(order) > rank_tol * sv(0)) ++order;

  const Eigen::MatrixXd v = svd.matrixV().leftCols(order);
  const Eigen::MatrixXd v1 = v.topRows(l);
  const Eigen::MatrixXd v2 = v.bottomRows(l);
  const Eigen::MatrixXd a = v1.completeOrthogonalDecomposition().solve(v2);
  // V1^+ V2 acts on the right; its transpose has the same eigenvalues.
  Eigen::EigenSolver<Eigen::MatrixXd> es(a.transpose());
  const Eigen::VectorXcd z = es.eigenvalues();

  Eigen::MatrixXcd vander(n, order);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < order; ++k) vander(r, k) = std::pow(z(k), r);
  Eigen::VectorXcd rhs(n);
  for (int r = 0; r < n; ++r) rhs(r) = y[r];
  const Eigen::VectorXcd amp = vander.colPivHouseholderQr().solve(rhs);

  std::vector<Mode> modes;
  for (int k = 0; k < order; ++k) modes.push_back({std::log(z(k)) / dt, amp(k)});
  return modes;
}

// Oscillation frequency of the oscillatory mode with the largest amplitude.
inline double dominant_frequency(const std::vector<Mode>& modes, double min_freq = 1e-3) {
  double best_amp = -1, freq = 0;
  for (const auto& m : modes)
    if (std::abs(m.rate.imag()) > min_freq && std::abs(m.amplitude) > best_amp) {
      best_amp = std::abs(m.amplitude);
      freq = std::abs(m.rate.imag());
    }
  return freq;
}

// Mode coefficients of G2(tau) = sum_l c_l exp(lambda_l tau) from the
// eigendecomposition and the regression weights.
struct PredictedMode {
  cd eigenvalue;
  double weight;
};

inline std::vector<PredictedMode> predicted_modes(const vicsim::CorrelationModel<double>& m, bool vic) {
  const auto& d = m.propagator;
  std::vector<PredictedMode> out;
  const Eigen::VectorXcd a_vic = d.inverse_eigenvectors * m.weights_vic;
  const Eigen::VectorXcd a13 = d.inverse_eigenvectors * m.weights_pi13;
  const Eigen::VectorXcd a24 = d.inverse_eigenvectors * m.weights_pi24;
  for (int l = 0; l < d.eigenvalues.size(); ++l) {
    const cd c = vic ? (d.eigenvectors(0, l) + d.eigenvectors(4, l)) * a_vic(l)
                     : d.eigenvectors(0, l) * a13(l) + d.eigenvectors(4, l) * a24(l);
    out.push_back({d.eigenvalues(l), std::abs(c)});
  }
  return out;
}

inline double predicted_dominant_frequency(const std::vector<PredictedMode>& modes, double min_freq = 1e-3) {
  double best = -1, freq = 0;
  for (const auto& m : modes)
    if (std::abs(m.eigenvalue.imag()) > min_freq && m.weight > best) {
      best = m.weight;
      freq = std::abs(m.eigenvalue.imag());
    }
  return freq;
}

}  // namespace testing_support
