#pragma once

#include <unsupported/Eigen/FFT>

#include <vector>

#include "hypfl/grid.hpp"

namespace hypfl {

namespace detail {

// In-place unscaled transform along every axis. sign < 0 is the forward
// (e^{-2πi k·x}) direction.
template <typename Scalar>
void fft_axes(const GridSpec& g, ComplexArray<Scalar>& data, int sign) {
  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::Unscaled);
  const int n = g.n;
  std::vector<Complex<Scalar>> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
  auto line = [&](std::size_t start, std::size_t stride) {
    for (int i = 0; i < n; ++i) in[std::size_t(i)] = data(Eigen::Index(start + std::size_t(i) * stride));
    if (sign < 0)
      fft.fwd(out.data(), in.data(), n);
    else
      fft.inv(out.data(), in.data(), n);
    for (int i = 0; i < n; ++i) data(Eigen::Index(start + std::size_t(i) * stride)) = out[std::size_t(i)];
  };
  if (g.dim == 1) {
    line(0, 1);
    return;
  }
  for (int r = 0; r < n; ++r) line(std::size_t(r) * std::size_t(n), 1);
  for (int c = 0; c < n; ++c) line(std::size_t(c), std::size_t(n));
}

}  // namespace detail

/// coeffs(k) = n^{-d} Σ_x f(x) e^{-2πik·x}; a single exponential has one unit coefficient.
template <typename Scalar>
SpectralFunction<Scalar> forward_transform(const GridFunction<Scalar>& f) {
  f.validate();
  SpectralFunction<Scalar> out(f.grid);
  out.coeffs = f.values;
  detail::fft_axes(f.grid, out.coeffs, -1);
  out.coeffs /= Scalar(f.grid.size());
  return out;
}

/// f(x) = Σ_k coeffs(k) e^{2πik·x}.
template <typename Scalar>
GridFunction<Scalar> inverse_transform(const SpectralFunction<Scalar>& F) {
  F.grid.validate();
  GridFunction<Scalar> out(F.grid);
  out.values = F.coeffs;
  detail::fft_axes(F.grid, out.values, +1);
  return out;
}

/// Multiplies every coefficient by weight(k).
template <typename Scalar, typename Weight>
SpectralFunction<Scalar> apply_multiplier(SpectralFunction<Scalar> F, Weight&& weight) {
  for (Eigen::Index i = 0; i < F.coeffs.size(); ++i) F.coeffs(i) *= weight(frequency_at(F.grid, std::size_t(i)));
  return F;
}

template <typename Scalar, typename Weight>
GridFunction<Scalar> fourier_multiplier(const GridFunction<Scalar>& f, Weight&& weight) {
  return inverse_transform(apply_multiplier(forward_transform(f), std::forward<Weight>(weight)));
}

/// J_s f: multiplier ⟨k⟩^s with ⟨k⟩ = (1+|k|²)^{1/2} on the integer lattice.
///
/// The weight is the Fourier-Lebesgue weight itself, not the symbol
/// (1+4π²|k|²)^{1/2} of (1-Δ)^{1/2}; the two differ by a factor in [1, 2π]
/// and the lattice choice makes J_s an exact isometry FL^p_{α+s} -> FL^p_α.
template <typename Scalar>
GridFunction<Scalar> bessel_potential(const GridFunction<Scalar>& f, Scalar s) {
  if (s == Scalar(0)) return f;
  return fourier_multiplier(f, [s](const Frequency& k) { return Scalar(std::pow(japanese_bracket(k), double(s))); });
}

}  // namespace hypfl
