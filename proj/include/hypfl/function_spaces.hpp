#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hypfl/littlewood_paley.hpp"

namespace hypfl {

enum class SpaceTag { FourierLebesgue, Besov, TriebelLizorkin };

inline std::string to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::FourierLebesgue:
      return "fl";
    case SpaceTag::Besov:
      return "besov";
    case SpaceTag::TriebelLizorkin:
      return "triebel";
  }
  return "unknown";
}

struct NormResult {
  double value = 0.0;
  SpaceTag space = SpaceTag::FourierLebesgue;
  double p = 2.0, q = 2.0, s = 0.0;  // q unused for FL
  GridSpec grid;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (Σ |a_i|^p)^{1/p}, max for p = ∞. Scaled by the max entry so large weights do not overflow.
template <typename Derived>
double lp_sum(const Eigen::ArrayBase<Derived>& a, double p) {
  if (a.size() == 0) return 0.0;
  const double top = a.abs().maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  return top * std::pow((a.abs() / top).pow(p).sum(), 1.0 / p);
}

/// Riemann-sum L^p over the lattice: (n^{-d} Σ_x |f(x)|^p)^{1/p}.
template <typename Derived>
double lp_mean(const Eigen::ArrayBase<Derived>& a, double p) {
  if (std::isinf(p)) return a.size() == 0 ? 0.0 : double(a.abs().maxCoeff());
  return lp_sum(a, p) * std::pow(double(a.size()), -1.0 / p);
}

inline void require_positive_exponent(double p, const char* name) {
  if (!(p > 0.0)) throw ValidationError(std::string(name) + " must lie in (0, inf]");
}

template <typename Scalar>
double fl_norm(const SpectralFunction<Scalar>& F, double p, double s) {
  require_positive_exponent(p, "p");
  RealArray<double> w(F.coeffs.size());
  for (Eigen::Index i = 0; i < F.coeffs.size(); ++i)
    w(i) = std::abs(F.coeffs(i)) * (s == 0.0 ? 1.0 : std::pow(japanese_bracket(frequency_at(F.grid, std::size_t(i))), s));
  return lp_sum(w, p);
}

/// ‖f‖_{FL^p_s} = (Σ_k ⟨k⟩^{ps}|f̂(k)|^p)^{1/p} with counting measure on the lattice.
template <typename Scalar>
NormResult fl_norm(const GridFunction<Scalar>& f, double p, double s) {
  return {fl_norm(forward_transform(f), p, s), SpaceTag::FourierLebesgue, p, 0.0, s, f.grid};
}

/// ℓ^q over j of 2^{js}‖Δ_j f‖_{L^p}.
template <typename Scalar>
NormResult besov_norm(const GridFunction<Scalar>& f, double p, double q, double s, const DyadicFamily& fam) {
  require_positive_exponent(p, "p");
  require_positive_exponent(q, "q");
  const auto blocks = lp_decompose(f, fam);
  RealArray<double> terms(Eigen::Index(blocks.size()));
  for (std::size_t j = 0; j < blocks.size(); ++j)
    terms(Eigen::Index(j)) = std::pow(2.0, double(j) * s) * lp_mean(blocks[j].values, p);
  return {lp_sum(terms, q), SpaceTag::Besov, p, q, s, f.grid};
}

/// L^p over x of the pointwise ℓ^q over j of 2^{js}|Δ_j f(x)|; p = ∞ is rejected.
template <typename Scalar>
NormResult triebel_norm(const GridFunction<Scalar>& f, double p, double q, double s, const DyadicFamily& fam) {
  require_positive_exponent(p, "p");
  require_positive_exponent(q, "q");
  if (std::isinf(p)) throw ValidationError("Triebel-Lizorkin norm requires p < inf");
  const auto blocks = lp_decompose(f, fam);
  const auto size = Eigen::Index(f.grid.size());
  RealArray<double> pointwise(size);
  RealArray<double> column(Eigen::Index(blocks.size()));
  for (Eigen::Index x = 0; x < size; ++x) {
    for (std::size_t j = 0; j < blocks.size(); ++j)
      column(Eigen::Index(j)) = std::pow(2.0, double(j) * s) * std::abs(blocks[j].values(x));
    pointwise(x) = lp_sum(column, q);
  }
  return {lp_mean(pointwise, p), SpaceTag::TriebelLizorkin, p, q, s, f.grid};
}

/// Spatial L^2 mean; equals fl_norm(f, 2, 0) by Plancherel.
template <typename Scalar>
double l2_norm(const GridFunction<Scalar>& f) {
  return lp_mean(f.values, 2.0);
}

}  // namespace hypfl
