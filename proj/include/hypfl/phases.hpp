#pragma once

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hypfl/littlewood_paley.hpp"
#include "hypfl/trig_poly.hpp"

namespace hypfl {

template <typename Scalar>
using ComplexVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1, 0, 2, 1>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2>;

/// Complex phase Φ(x, η) of positive type with closed-form derivatives.
///
/// κ (the spatial factorization rank) and τ (the mixing weight of the
/// nondegeneracy determinant) are declared, not derived.
template <typename Scalar = double>
struct PhaseSpec {
  using Value = std::function<Complex<Scalar>(const Point<Scalar>&, const Point<Scalar>&)>;
  using Gradient = std::function<ComplexVector<Scalar>(const Point<Scalar>&, const Point<Scalar>&)>;
  using Hessian = std::function<ComplexMatrix<Scalar>(const Point<Scalar>&, const Point<Scalar>&)>;

  std::string id;
  int dim = 1;
  int kappa = 0;
  Scalar tau = 0;
  bool x_dependent = true;
  Value value;
  Gradient grad_x;
  Gradient grad_eta;
  /// H(i, j) = ∂_{x_i} ∂_{η_j} Φ.
  Hessian mixed_hessian;

  Complex<Scalar> operator()(const Point<Scalar>& x, const Point<Scalar>& eta) const { return value(x, eta); }
};

template <typename Scalar>
using PhasePtr = std::shared_ptr<const PhaseSpec<Scalar>>;

namespace detail {

template <typename Scalar>
Point<Scalar> unit(const Point<Scalar>& eta) {
  const Scalar r = eta.norm();
  return r > Scalar(0) ? Point<Scalar>(eta / r) : Point<Scalar>(Point<Scalar>::Zero(eta.size()));
}

template <typename Scalar>
ComplexMatrix<Scalar> identity_matrix(int dim) {
  return ComplexMatrix<Scalar>::Identity(dim, dim);
}

}  // namespace detail

/// Φ = x·η, κ = 0.
template <typename Scalar = double>
PhasePtr<Scalar> identity_phase(int dim) {
  auto p = std::make_shared<PhaseSpec<Scalar>>();
  p->id = "identity";
  p->dim = dim;
  p->kappa = 0;
  p->x_dependent = false;
  p->value = [](const Point<Scalar>& x, const Point<Scalar>& eta) { return Complex<Scalar>(x.dot(eta)); };
  p->grad_x = [](const Point<Scalar>&, const Point<Scalar>& eta) { return ComplexVector<Scalar>(eta.template cast<Complex<Scalar>>()); };
  p->grad_eta = [](const Point<Scalar>& x, const Point<Scalar>&) { return ComplexVector<Scalar>(x.template cast<Complex<Scalar>>()); };
  p->mixed_hessian = [dim](const Point<Scalar>&, const Point<Scalar>&) { return detail::identity_matrix<Scalar>(dim); };
  return p;
}

/// Φ = (x + ε sin 2πx)·η on T^1, the composition with the diffeomorphism x ↦ x + ε sin 2πx.
template <typename Scalar = double>
PhasePtr<Scalar> torus_diffeo_phase(Scalar epsilon) {
  if (!(std::abs(Scalar(2 * kPi) * epsilon) < Scalar(1)))
    throw ValidationError("torus-diffeo phase requires |2*pi*epsilon| < 1");
  auto p = std::make_shared<PhaseSpec<Scalar>>();
  p->id = "torus-diffeo";
  p->dim = 1;
  p->kappa = 1;
  p->x_dependent = true;
  auto warp = [epsilon](Scalar x) { return x + epsilon * std::sin(Scalar(2 * kPi) * x); };
  auto dwarp = [epsilon](Scalar x) { return Scalar(1) + Scalar(2 * kPi) * epsilon * std::cos(Scalar(2 * kPi) * x); };
  p->value = [warp](const Point<Scalar>& x, const Point<Scalar>& eta) { return Complex<Scalar>(warp(x(0)) * eta(0)); };
  p->grad_x = [dwarp](const Point<Scalar>& x, const Point<Scalar>& eta) {
    ComplexVector<Scalar> g(1);
    g(0) = dwarp(x(0)) * eta(0);
    return g;
  };
  p->grad_eta = [warp](const Point<Scalar>& x, const Point<Scalar>&) {
    ComplexVector<Scalar> g(1);
    g(0) = warp(x(0));
    return g;
  };
  p->mixed_hessian = [dwarp](const Point<Scalar>& x, const Point<Scalar>&) {
    ComplexMatrix<Scalar> h(1, 1);
    h(0, 0) = dwarp(x(0));
    return h;
  };
  return p;
}

/// Φ = x·η + t(c + iγ(x))|η| with γ >= 0. With γ ≡ 0, c = 1 this is the half-wave phase.
template <typename Scalar = double>
PhasePtr<Scalar> dissipative_phase(int dim, Scalar t, Scalar c, TrigPoly<Scalar> gamma, Scalar tau = 0) {
  auto p = std::make_shared<PhaseSpec<Scalar>>();
  p->id = "dissipative";
  p->dim = dim;
  p->kappa = dim;
  p->tau = tau;
  p->x_dependent = !gamma.is_constant();
  auto speed = [t, c, gamma](const Point<Scalar>& x) {
    return Complex<Scalar>(t * c, Scalar(0)) + Complex<Scalar>(0, t) * Complex<Scalar>(gamma(x).real(), 0);
  };
  p->value = [speed](const Point<Scalar>& x, const Point<Scalar>& eta) {
    return Complex<Scalar>(x.dot(eta)) + speed(x) * eta.norm();
  };
  p->grad_x = [t, gamma](const Point<Scalar>& x, const Point<Scalar>& eta) {
    const auto dg = gamma.gradient(x);
    ComplexVector<Scalar> g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = eta(i) + Complex<Scalar>(0, t) * dg(i).real() * eta.norm();
    return g;
  };
  p->grad_eta = [speed](const Point<Scalar>& x, const Point<Scalar>& eta) {
    const Point<Scalar> u = detail::unit(eta);
    ComplexVector<Scalar> g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = x(i) + speed(x) * u(i);
    return g;
  };
  p->mixed_hessian = [t, gamma](const Point<Scalar>& x, const Point<Scalar>& eta) {
    const auto dg = gamma.gradient(x);
    const Point<Scalar> u = detail::unit(eta);
    ComplexMatrix<Scalar> h = detail::identity_matrix<Scalar>(int(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i)
      for (Eigen::Index j = 0; j < x.size(); ++j) h(i, j) += Complex<Scalar>(0, t) * dg(i).real() * u(j);
    return h;
  };
  return p;
}

/// Φ = x·η + t|η|, κ = d.
template <typename Scalar = double>
PhasePtr<Scalar> half_wave_phase(int dim, Scalar t) {
  auto base = dissipative_phase<Scalar>(dim, t, Scalar(1), TrigPoly<Scalar>::constant(0, dim));
  auto p = std::make_shared<PhaseSpec<Scalar>>(*base);
  p->id = "half-wave";
  p->x_dependent = false;
  return p;
}

struct PhaseValidationOptions {
  double delta = 1e-6;
  double imag_tolerance = 1e-12;
  double homogeneity_tolerance = 1e-9;
  double periodicity_tolerance = 1e-9;
};

struct PhaseReport {
  std::string id;
  int samples = 0;
  double min_imag = 0.0;
  double max_homogeneity_residual = 0.0;
  double min_gradient_norm = 0.0;      // min |(∇_xΦ, ∇_ηΦ)| on |η| = 1
  double min_eta_gradient_norm = 0.0;  // min |∇_ηΦ| on |η| = 1, informational
  double min_abs_det = 0.0;            // min |det ∂_x∂_η(Re Φ + τ Im Φ)|
  double max_periodicity_defect = 0.0;
  bool pass = false;
  std::string violation;
};

namespace detail {

template <typename Scalar>
std::vector<Point<Scalar>> sample_points(int dim, int budget) {
  std::vector<Point<Scalar>> xs;
  if (dim == 1) {
    for (int i = 0; i < budget; ++i) xs.push_back(Point<Scalar>::Constant(1, Scalar(i) / Scalar(budget)));
    return xs;
  }
  const int side = std::max(2, int(std::ceil(std::sqrt(double(budget)))));
  for (int a = 0; a < side; ++a)
    for (int b = 0; b < side; ++b) {
      Point<Scalar> x(2);
      x << Scalar(a) / Scalar(side), Scalar(b) / Scalar(side);
      xs.push_back(x);
    }
  return xs;
}

template <typename Scalar>
std::vector<Point<Scalar>> unit_directions(int dim) {
  std::vector<Point<Scalar>> dirs;
  if (dim == 1) {
    dirs.push_back(Point<Scalar>::Constant(1, Scalar(1)));
    dirs.push_back(Point<Scalar>::Constant(1, Scalar(-1)));
    return dirs;
  }
  for (int a = 0; a < 16; ++a) {
    Point<Scalar> e(2);
    const Scalar ang = Scalar(2 * kPi) * Scalar(a) / Scalar(16);
    e << std::cos(ang), std::sin(ang);
    dirs.push_back(e);
  }
  return dirs;
}

}  // namespace detail

/// Samples the positive-type conditions: Im Φ >= 0, degree-one homogeneity,
/// no critical points, nondegenerate mixed Hessian, and lattice periodicity.
template <typename Scalar = double>
PhaseReport validate_phase(const PhaseSpec<Scalar>& phase, int sample_budget,
                           const PhaseValidationOptions& opt = {}) {
  if (sample_budget < 100) throw ValidationError("validate_phase needs a sample budget >= 100");
  PhaseReport rep;
  rep.id = phase.id;
  rep.min_imag = std::numeric_limits<double>::infinity();
  rep.min_gradient_norm = rep.min_eta_gradient_norm = rep.min_abs_det = std::numeric_limits<double>::infinity();

  const auto xs = detail::sample_points<Scalar>(phase.dim, sample_budget);
  const auto dirs = detail::unit_directions<Scalar>(phase.dim);
  const Scalar radii[] = {Scalar(1), Scalar(3.5), Scalar(17)};
  std::vector<Frequency> lattice;
  if (phase.dim == 1) {
    for (int k : {1, -1, 2, 5, -7}) lattice.push_back(Frequency::Constant(1, k));
  } else {
    for (auto [a, b] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, -1}, {-3, 4}}) {
      Frequency k(2);
      k << a, b;
      lattice.push_back(k);
    }
  }

  std::size_t counter = 0;
  for (const auto& x : xs) {
    const auto& dir = dirs[counter++ % dirs.size()];
    for (Scalar r : radii) {
      const Point<Scalar> eta = r * dir;
      const Complex<Scalar> v = phase(x, eta);
      rep.min_imag = std::min(rep.min_imag, double(v.imag()));
      for (Scalar lambda : {Scalar(2), Scalar(4)}) {
        const Complex<Scalar> diff = phase(x, Point<Scalar>(lambda * eta)) - lambda * v;
        double res = 0.0;
        if (std::abs(diff) != Scalar(0))
          res = std::abs(v) > Scalar(0) ? double(std::abs(diff) / (lambda * std::abs(v)))
                                        : std::numeric_limits<double>::infinity();
        rep.max_homogeneity_residual = std::max(rep.max_homogeneity_residual, res);
      }
    }
    const auto gx = phase.grad_x(x, dir);
    const auto ge = phase.grad_eta(x, dir);
    rep.min_eta_gradient_norm = std::min(rep.min_eta_gradient_norm, double(ge.norm()));
    rep.min_gradient_norm = std::min(rep.min_gradient_norm, double(std::sqrt(gx.squaredNorm() + ge.squaredNorm())));
    const auto h = phase.mixed_hessian(x, dir);
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2> mixed = h.real() + phase.tau * h.imag();
    rep.min_abs_det = std::min(rep.min_abs_det, double(std::abs(mixed.determinant())));
    for (const auto& k : lattice) {
      const Point<Scalar> kr = k.template cast<Scalar>();
      for (int axis = 0; axis < phase.dim; ++axis) {
        Point<Scalar> shifted = x;
        shifted(axis) += Scalar(1);
        const Complex<Scalar> jump = phase(shifted, kr) - phase(x, kr);
        const double defect = std::hypot(double(jump.real() - std::round(jump.real())), double(jump.imag()));
        rep.max_periodicity_defect = std::max(rep.max_periodicity_defect, defect);
      }
    }
  }
  rep.samples = int(xs.size());

  auto fail = [&](const std::string& why) {
    if (rep.violation.empty()) rep.violation = why;
  };
  if (rep.min_imag < -opt.imag_tolerance) fail("positive type: Im Phi >= 0 violated");
  if (rep.max_homogeneity_residual > opt.homogeneity_tolerance) fail("homogeneity of degree one violated");
  if (rep.min_gradient_norm < opt.delta) fail("critical point: phase gradient vanishes");
  if (rep.min_abs_det < opt.delta) fail("nondegeneracy: det d_x d_eta (Re Phi + tau Im Phi) vanishes");
  if (rep.max_periodicity_defect > opt.periodicity_tolerance) fail("periodicity: Phi(x+e_i,k)-Phi(x,k) not integral");
  rep.pass = rep.violation.empty();
  return rep;
}

}  // namespace hypfl
