#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "hypfl/fourier.hpp"

namespace hypfl {

namespace cutoff {

// θ(t) = e^{-1/t} for t > 0, else 0.
inline double theta(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

/// Smooth step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = theta(t);
  return a / (a + theta(1.0 - t));
}

/// ψ(ξ) = h(2 - |ξ|): 1 on |ξ| <= 1, 0 on |ξ| >= 2.
inline double psi(double radius) { return smooth_step(2.0 - radius); }

/// φ(ξ) = ψ(ξ) - ψ(2ξ), supported in 1/2 <= |ξ| <= 2.
inline double phi(double radius) { return psi(radius) - psi(2.0 * radius); }

}  // namespace cutoff

/// Dyadic partition of unity {φ_j} sampled on the frequency lattice of `grid`.
///
/// φ_j(ξ) = φ(2^{-j}ξ) for 1 <= j < j_max; the last block is 1 - ψ(2^{1-j_max}ξ)
/// so the lattice corner belongs to it, and φ_0 = 1 - Σ_{j>=1} φ_j.
struct DyadicFamily {
  GridSpec grid;
  int j_max = 0;
  std::vector<RealArray<double>> cutoffs;  // cutoffs[j](spectral index)
  double partition_residual = 0.0;

  int block_count() const { return j_max + 1; }
};

inline double dyadic_cutoff_value(int j, int j_max, double radius) {
  if (j == j_max) return 1.0 - cutoff::psi(std::ldexp(radius, 1 - j_max));
  return cutoff::phi(std::ldexp(radius, -j));
}

/// Builds the family and certifies Σ_j φ_j = 1 to 1e-12 at every lattice point.
inline DyadicFamily build_dyadic_family(const GridSpec& grid) {
  grid.validate();
  DyadicFamily fam;
  fam.grid = grid;
  const double rmax = max_lattice_radius(grid);
  while (std::ldexp(1.0, fam.j_max + 1) < rmax) ++fam.j_max;
  // With j_max = 0 the single block is the whole lattice; never happens for n >= 8.
  const auto size = Eigen::Index(grid.size());
  fam.cutoffs.assign(std::size_t(fam.j_max + 1), RealArray<double>::Zero(size));
  for (Eigen::Index i = 0; i < size; ++i) {
    const double radius = std::sqrt(double(frequency_at(grid, std::size_t(i)).squaredNorm()));
    double tail = 0.0;
    for (int j = 1; j <= fam.j_max; ++j) {
      const double v = dyadic_cutoff_value(j, fam.j_max, radius);
      fam.cutoffs[std::size_t(j)](i) = v;
      tail += v;
    }
    fam.cutoffs[0](i) = 1.0 - tail;
  }
  for (Eigen::Index i = 0; i < size; ++i) {
    double sum = 0.0;
    for (const auto& c : fam.cutoffs) {
      if (c(i) < -1e-15 || c(i) > 1.0 + 1e-15)
        throw PartitionOfUnityFailure("cutoff value outside [0,1] at spectral index " + std::to_string(i));
      sum += c(i);
    }
    fam.partition_residual = std::max(fam.partition_residual, std::abs(sum - 1.0));
  }
  if (fam.partition_residual > 1e-12)
    throw PartitionOfUnityFailure("partition-of-unity residual " + std::to_string(fam.partition_residual));
  return fam;
}

/// Δ_j f = F^{-1}(φ_j F f), on coefficients.
template <typename Scalar>
SpectralFunction<Scalar> dyadic_block(const SpectralFunction<Scalar>& F, int j, const DyadicFamily& fam) {
  require_same_grid(F.grid, fam.grid);
  if (j < 0 || j > fam.j_max)
    throw ValidationError("block index " + std::to_string(j) + " outside [0, " + std::to_string(fam.j_max) + "]");
  SpectralFunction<Scalar> out(F.grid);
  out.coeffs = F.coeffs * fam.cutoffs[std::size_t(j)].template cast<Complex<Scalar>>();
  return out;
}

template <typename Scalar>
GridFunction<Scalar> dyadic_block(const GridFunction<Scalar>& f, int j, const DyadicFamily& fam) {
  return inverse_transform(dyadic_block(forward_transform(f), j, fam));
}

/// All blocks Δ_0 f .. Δ_{j_max} f.
template <typename Scalar>
std::vector<GridFunction<Scalar>> lp_decompose(const GridFunction<Scalar>& f, const DyadicFamily& fam) {
  const auto F = forward_transform(f);
  std::vector<GridFunction<Scalar>> blocks;
  blocks.reserve(std::size_t(fam.block_count()));
  for (int j = 0; j <= fam.j_max; ++j) blocks.push_back(inverse_transform(dyadic_block(F, j, fam)));
  return blocks;
}

/// max ⟨k⟩ / min ⟨k⟩ over the lattice support of φ_j (j >= 1).
inline double block_weight_spread(const DyadicFamily& fam, int j) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  const auto& c = fam.cutoffs[std::size_t(j)];
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c(i) <= 0.0) continue;
    const double w = japanese_bracket(frequency_at(fam.grid, std::size_t(i)));
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }
  return hi > 0.0 ? hi / lo : 1.0;
}

}  // namespace hypfl
