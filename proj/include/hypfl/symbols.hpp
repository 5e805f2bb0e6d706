#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hypfl/grid.hpp"

namespace hypfl {

/// σ(x, η) with a declared order m. η is a real frequency vector so that the
/// symbol can be differentiated in η; on the lattice it is sampled at integers.
template <typename Scalar = double>
struct SymbolSpec {
  using Evaluator = std::function<Complex<Scalar>(const Point<Scalar>& x, const Point<Scalar>& eta)>;

  Evaluator evaluator;
  Scalar order = 0;
  bool x_dependent = false;
  /// Sub-box [lo, hi]^d outside which σ vanishes in x; empty means the full torus.
  Point<Scalar> support_lo, support_hi;

  Complex<Scalar> operator()(const Point<Scalar>& x, const Point<Scalar>& eta) const { return evaluator(x, eta); }
  bool full_support() const { return support_lo.size() == 0; }
};

/// σ ≡ c, order 0.
template <typename Scalar = double>
SymbolSpec<Scalar> constant_symbol(Complex<Scalar> c = Complex<Scalar>(1)) {
  return {[c](const Point<Scalar>&, const Point<Scalar>&) { return c; }, Scalar(0), false, {}, {}};
}

/// σ(x, η) = ⟨η⟩^m.
template <typename Scalar = double>
SymbolSpec<Scalar> bessel_symbol(Scalar m) {
  return {[m](const Point<Scalar>&, const Point<Scalar>& eta) {
            return Complex<Scalar>(std::pow(japanese_bracket(eta), m));
          },
          m, false, {}, {}};
}

/// Constant C_{α,β} of one derivative pair at two lattice radii.
struct SymbolConstant {
  std::vector<int> alpha, beta;  // η- and x-multi-indices
  double base = 0.0;             // sup |D^α_η D^β_x σ|⟨η⟩^{|α|-m} for |η| <= R
  double refined = 0.0;          // same for |η| <= 2R
  bool stable = true;
};

struct SymbolReport {
  int max_order = 0;
  double base_radius = 0.0;
  std::vector<SymbolConstant> constants;
  bool pass = true;
  std::string reason;
};

namespace detail {

// Centered second-order stencils: offsets -2..2 for derivative orders 0..3.
inline const std::array<std::array<double, 5>, 4>& fd_weights() {
  static const std::array<std::array<double, 5>, 4> w{{
      {0.0, 0.0, 1.0, 0.0, 0.0},
      {0.0, -0.5, 0.0, 0.5, 0.0},
      {0.0, 1.0, -2.0, 1.0, 0.0},
      {-0.5, 1.0, 0.0, -1.0, 0.5},
  }};
  return w;
}

inline void multi_indices(int dim, int max_order, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (int(cur.size()) == dim) {
    int total = 0;
    for (int v : cur) total += v;
    if (total <= max_order) out.push_back(cur);
    return;
  }
  for (int a = 0; a <= max_order; ++a) {
    cur.push_back(a);
    multi_indices(dim, max_order, cur, out);
    cur.pop_back();
  }
}

// Mixed finite difference D^α_η D^β_x σ at (x, η) with steps hx, heta.
template <typename Scalar>
Complex<Scalar> mixed_difference(const SymbolSpec<Scalar>& s, const Point<Scalar>& x, const Point<Scalar>& eta,
                                 const std::vector<int>& alpha, const std::vector<int>& beta, double hx,
                                 double heta) {
  const int dim = int(x.size());
  const int coords = 2 * dim;
  std::vector<int> orders(static_cast<std::size_t>(coords));
  for (int i = 0; i < dim; ++i) {
    orders[std::size_t(i)] = beta[std::size_t(i)];
    orders[std::size_t(dim + i)] = alpha[std::size_t(i)];
  }
  const auto& w = fd_weights();
  Complex<Scalar> acc(0);
  std::vector<int> off(std::size_t(coords), -2);
  while (true) {
    double weight = 1.0;
    for (int c = 0; c < coords && weight != 0.0; ++c) weight *= w[std::size_t(orders[std::size_t(c)])][std::size_t(off[std::size_t(c)] + 2)];
    if (weight != 0.0) {
      Point<Scalar> xs = x, es = eta;
      for (int i = 0; i < dim; ++i) {
        xs(i) += Scalar(off[std::size_t(i)] * hx);
        es(i) += Scalar(off[std::size_t(dim + i)] * heta);
      }
      acc += Scalar(weight) * s(xs, es);
    }
    int c = 0;
    while (c < coords && ++off[std::size_t(c)] > 2) off[std::size_t(c++)] = -2;
    if (c == coords) break;
  }
  double scale = 1.0;
  for (int i = 0; i < dim; ++i) scale *= std::pow(hx, beta[std::size_t(i)]) * std::pow(heta, alpha[std::size_t(i)]);
  return acc / Scalar(scale);
}

}  // namespace detail

/// Estimates the (1,0)-symbol constants by finite differences for |α|,|β| <= max_order
/// on frequencies |η| <= R and |η| <= 2R. Passes iff every constant is finite and the
/// refined/base ratio lies in [0.5, 2].
template <typename Scalar = double>
SymbolReport symbol_check(const SymbolSpec<Scalar>& sigma, int dim, int max_order, double base_radius = 16.0) {
  if (max_order < 0 || max_order > 3) throw ValidationError("symbol_check supports derivative orders 0..3");
  if (dim != 1 && dim != 2) throw ValidationError("symbol_check supports d = 1 or 2");
  SymbolReport report;
  report.max_order = max_order;
  report.base_radius = base_radius;

  std::vector<std::vector<int>> indices;
  std::vector<int> cur;
  detail::multi_indices(dim, max_order, cur, indices);

  std::vector<Point<Scalar>> xs;
  const int xcount = dim == 1 ? 16 : 3;
  for (int a = 0; a < xcount; ++a)
    for (int b = 0; b < (dim == 1 ? 1 : xcount); ++b) {
      Point<Scalar> x(dim);
      x(0) = Scalar(a) / Scalar(xcount);
      if (dim == 2) x(1) = Scalar(b) / Scalar(xcount);
      xs.push_back(x);
    }
  auto frequencies = [&](double radius) {
    std::vector<Point<Scalar>> out;
    const int steps = dim == 1 ? int(radius) : 4;
    const double stride = radius / steps;
    for (int a = -steps; a <= steps; ++a)
      for (int b = (dim == 1 ? 0 : -steps); b <= (dim == 1 ? 0 : steps); ++b) {
        Point<Scalar> e(dim);
        e(0) = Scalar(a * stride);
        if (dim == 2) e(1) = Scalar(b * stride);
        if (e.norm() <= radius + 1e-12) out.push_back(e);
      }
    return out;
  };
  auto constant = [&](const std::vector<int>& alpha, const std::vector<int>& beta, double radius) {
    int alpha_total = 0;
    for (int v : alpha) alpha_total += v;
    double sup = 0.0;
    for (const auto& eta : frequencies(radius))
      for (const auto& x : xs) {
        const double bracket = double(japanese_bracket(eta));
        const auto d = detail::mixed_difference(sigma, x, eta, alpha, beta, 1e-2, 0.05 * bracket);
        const double v = std::abs(d) * std::pow(bracket, double(alpha_total) - double(sigma.order));
        sup = std::isfinite(v) ? std::max(sup, v) : std::numeric_limits<double>::infinity();
      }
    return sup;
  };

  double leading = 0.0;
  for (const auto& alpha : indices)
    for (const auto& beta : indices) {
      SymbolConstant c{alpha, beta, constant(alpha, beta, base_radius), constant(alpha, beta, 2 * base_radius), true};
      leading = std::max(leading, c.base);
      report.constants.push_back(std::move(c));
    }
  const double floor = 1e-10 * std::max(1.0, leading);
  for (auto& c : report.constants) {
    if (!std::isfinite(c.base) || !std::isfinite(c.refined)) {
      c.stable = false;
    } else if (c.base > floor || c.refined > floor) {
      const double ratio = c.refined / std::max(c.base, floor);
      c.stable = ratio >= 0.5 && ratio <= 2.0;
    }
    if (!c.stable && report.pass) {
      report.pass = false;
      report.reason = "constant unstable under refinement";
    }
  }
  return report;
}

}  // namespace hypfl
