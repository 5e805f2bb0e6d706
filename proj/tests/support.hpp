#pragma once

#include <random>

#include "hypfl/grid.hpp"

namespace hypfl::testing {

inline GridSpec grid1(int n = 64) { return {1, n}; }
inline GridSpec grid2(int n = 16) { return {2, n}; }

/// Complex Gaussian field with the given seed.
inline GridFunction<double> random_field(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  GridFunction<double> f(g);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values(i) = {normal(rng), normal(rng)};
  return f;
}

/// e^{2πi k·x}.
inline GridFunction<double> plane_wave(const GridSpec& g, const Frequency& k) {
  return sample<double>(g, [&](const Point<double>& x) {
    return std::polar(1.0, 2 * kPi * k.cast<double>().dot(x));
  });
}

inline GridFunction<double> plane_wave(const GridSpec& g, int k) {
  Frequency kk = Frequency::Zero(g.dim);
  kk(0) = k;
  return plane_wave(g, kk);
}

inline Frequency freq(int a) { return Frequency::Constant(1, a); }
inline Frequency freq(int a, int b) {
  Frequency k(2);
  k << a, b;
  return k;
}

inline double rel_diff(const GridFunction<double>& a, const GridFunction<double>& b) {
  return (a.values - b.values).abs().maxCoeff() / std::max(1e-300, double(b.values.abs().maxCoeff()));
}

}  // namespace hypfl::testing
