#pragma once

#include <complex>
#include <random>

#include "vicsim/generator.hpp"

namespace testing_support {

inline vicsim::DensityMatrix<double> random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  vicsim::DensityMatrix<double> a;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) a(i, k) = {n(rng), n(rng)};
  return (a + a.adjoint()) / 2.0;
}

inline vicsim::SystemParams<double> random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> omega(0.05, 5.0), delta(-3.0, 3.0), phase(-3.14159, 3.14159);
  vicsim::SystemParams<double> p;
  p.rabi = std::polar(omega(rng), phase(rng));
  p.detuning = delta(rng);
  p.vic = std::bernoulli_distribution(0.5)(rng);
  return p;
}

}  // namespace testing_support
