#pragma once

#include <vector>

#include "hypfl/grid.hpp"

namespace hypfl {

/// Σ_terms c · e^{2πi k·x}; coefficients of x-dependent symbols and damping profiles.
template <typename Scalar = double>
struct TrigPoly {
  struct Term {
    Frequency k;
    Complex<Scalar> c;
  };
  std::vector<Term> terms;

  static TrigPoly constant(Complex<Scalar> c, int dim) {
    TrigPoly p;
    p.terms.push_back({Frequency::Zero(dim), c});
    return p;
  }

  bool is_constant() const {
    for (const auto& t : terms)
      if (t.k.squaredNorm() != 0 && t.c != Complex<Scalar>(0)) return false;
    return true;
  }

  Complex<Scalar> operator()(const Point<Scalar>& x) const {
    Complex<Scalar> sum(0);
    for (const auto& t : terms) {
      const Scalar phase = Scalar(2 * kPi) * t.k.template cast<Scalar>().dot(x);
      sum += t.c * std::polar(Scalar(1), phase);
    }
    return sum;
  }

  /// ∇_x, one complex entry per axis.
  Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1, 0, 2, 1> gradient(const Point<Scalar>& x) const {
    Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1, 0, 2, 1> g =
        Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1, 0, 2, 1>::Zero(x.size());
    for (const auto& t : terms) {
      const Scalar phase = Scalar(2 * kPi) * t.k.template cast<Scalar>().dot(x);
      const Complex<Scalar> v = t.c * std::polar(Scalar(1), phase) * Complex<Scalar>(0, Scalar(2 * kPi));
      for (Eigen::Index i = 0; i < x.size(); ++i) g(i) += v * Scalar(t.k(i));
    }
    return g;
  }
};

}  // namespace hypfl
