#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "hypfl/errors.hpp"

namespace hypfl {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using ComplexArray = Eigen::Array<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// Point of the torus or of frequency space, d <= 2.
template <typename Scalar>
using Point = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, 2, 1>;

using Frequency = Eigen::Matrix<int, Eigen::Dynamic, 1, 0, 2, 1>;

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform periodic lattice on [0,1)^d with n points per axis.
struct GridSpec {
  int dim = 1;
  int n = 8;

  std::size_t size() const { return dim == 1 ? std::size_t(n) : std::size_t(n) * std::size_t(n); }

  bool operator==(const GridSpec&) const = default;

  void validate() const {
    if (dim != 1 && dim != 2)
      throw ValidationError("UnsupportedDimension", "grid dimension must be 1 or 2, got " + std::to_string(dim));
    if (n < 8 || (n & (n - 1)) != 0)
      throw ValidationError("InvalidGridSize", "points per axis must be a power of two >= 8, got " + std::to_string(n));
  }
};

inline bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

/// Integer frequency stored at FFT slot `slot` along one axis.
inline int axis_frequency(int slot, int n) { return slot < n / 2 ? slot : slot - n; }

/// Frequency vector of the linear (row-major) spectral index.
inline Frequency frequency_at(const GridSpec& g, std::size_t index) {
  Frequency k(g.dim);
  if (g.dim == 1) {
    k(0) = axis_frequency(int(index), g.n);
  } else {
    k(0) = axis_frequency(int(index / std::size_t(g.n)), g.n);
    k(1) = axis_frequency(int(index % std::size_t(g.n)), g.n);
  }
  return k;
}

/// Linear spectral index of frequency k (each component reduced mod n).
inline std::size_t index_of(const GridSpec& g, const Frequency& k) {
  auto slot = [&](int c) { return std::size_t(((c % g.n) + g.n) % g.n); };
  if (g.dim == 1) return slot(k(0));
  return slot(k(0)) * std::size_t(g.n) + slot(k(1));
}

/// Lattice point x_i = i/n of the linear (row-major) index.
template <typename Scalar = double>
Point<Scalar> point_at(const GridSpec& g, std::size_t index) {
  Point<Scalar> x(g.dim);
  if (g.dim == 1) {
    x(0) = Scalar(index) / Scalar(g.n);
  } else {
    x(0) = Scalar(index / std::size_t(g.n)) / Scalar(g.n);
    x(1) = Scalar(index % std::size_t(g.n)) / Scalar(g.n);
  }
  return x;
}

template <typename Scalar>
Scalar japanese_bracket(const Point<Scalar>& k) {
  return std::sqrt(Scalar(1) + k.squaredNorm());
}

inline double japanese_bracket(const Frequency& k) {
  return std::sqrt(1.0 + double(k.squaredNorm()));
}

/// Largest lattice |k| on the grid (the corner of [-n/2, n/2)^d).
inline double max_lattice_radius(const GridSpec& g) { return 0.5 * g.n * std::sqrt(double(g.dim)); }

/// Complex field sampled on the lattice, row-major.
template <typename Scalar = double>
struct GridFunction {
  GridSpec grid;
  ComplexArray<Scalar> values;

  GridFunction() = default;
  explicit GridFunction(const GridSpec& g) : grid(g), values(ComplexArray<Scalar>::Zero(Eigen::Index(g.size()))) {}
  GridFunction(const GridSpec& g, ComplexArray<Scalar> v) : grid(g), values(std::move(v)) { validate(); }

  void validate() const {
    grid.validate();
    if (std::size_t(values.size()) != grid.size())
      throw ValidationError("length " + std::to_string(values.size()) + " does not match grid size " +
                            std::to_string(grid.size()));
    if (!values.isFinite().all()) throw ValidationError("grid function has non-finite entries");
  }
};

/// Fourier coefficients, stored in FFT slot order (see frequency_at).
template <typename Scalar = double>
struct SpectralFunction {
  GridSpec grid;
  ComplexArray<Scalar> coeffs;

  SpectralFunction() = default;
  explicit SpectralFunction(const GridSpec& g)
      : grid(g), coeffs(ComplexArray<Scalar>::Zero(Eigen::Index(g.size()))) {}

  Complex<Scalar>& operator[](const Frequency& k) { return coeffs(Eigen::Index(index_of(grid, k))); }
  const Complex<Scalar>& operator[](const Frequency& k) const { return coeffs(Eigen::Index(index_of(grid, k))); }
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b))
    throw GridMismatch("grid mismatch: (d=" + std::to_string(a.dim) + ", n=" + std::to_string(a.n) + ") vs (d=" +
                       std::to_string(b.dim) + ", n=" + std::to_string(b.n) + ")");
}

template <typename Scalar>
GridFunction<Scalar> operator+(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  require_same_grid(a.grid, b.grid);
  return {a.grid, a.values + b.values};
}

template <typename Scalar>
GridFunction<Scalar> operator-(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  require_same_grid(a.grid, b.grid);
  return {a.grid, a.values - b.values};
}

template <typename Scalar>
GridFunction<Scalar> operator*(const Complex<Scalar>& c, const GridFunction<Scalar>& a) {
  return {a.grid, c * a.values};
}

template <typename Scalar>
GridFunction<Scalar> operator*(Scalar c, const GridFunction<Scalar>& a) {
  return {a.grid, c * a.values};
}

/// Samples fn(x) at every lattice point.
template <typename Scalar = double, typename Fn>
GridFunction<Scalar> sample(const GridSpec& g, Fn&& fn) {
  g.validate();
  GridFunction<Scalar> out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out.values(Eigen::Index(i)) = Complex<Scalar>(fn(point_at<Scalar>(g, i)));
  return out;
}

/// Max-norm of the difference; the workhorse of every tolerance check.
template <typename Scalar>
Scalar max_abs_diff(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  require_same_grid(a.grid, b.grid);
  return (a.values - b.values).abs().maxCoeff();
}

}  // namespace hypfl
