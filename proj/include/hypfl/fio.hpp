#pragma once

#include <memory>
#include <vector>

#include "hypfl/function_spaces.hpp"
#include "hypfl/parallel.hpp"
#include "hypfl/phases.hpp"
#include "hypfl/predicates.hpp"
#include "hypfl/symbols.hpp"

namespace hypfl {

/// T ∈ I^m: Tf(x) = Σ_k e^{2πiΦ(x,k)} σ(x,k) f̂(k), optionally followed by J_s on the left.
template <typename Scalar = double>
struct FioSpec {
  PhasePtr<Scalar> phase;
  SymbolSpec<Scalar> symbol;
  Scalar order = 0;
  int kappa = 0;
  /// Left Bessel factor applied after the quadrature; bookkeeping only for the phase.
  Scalar left_bessel = 0;
};

template <typename Scalar = double>
FioSpec<Scalar> make_fio(PhasePtr<Scalar> phase, SymbolSpec<Scalar> symbol) {
  FioSpec<Scalar> t;
  t.kappa = phase->kappa;
  t.phase = std::move(phase);
  t.order = symbol.order;
  t.symbol = std::move(symbol);
  return t;
}

struct ApplyOptions {
  bool validate = true;
  int validation_budget = 100;
  PhaseValidationOptions validation;
};

namespace detail {

// e^{2πiΦ} with the real part reduced mod 1 before scaling by 2π.
template <typename Scalar>
Complex<Scalar> unit_exponential(const Complex<Scalar>& phi) {
  const Scalar re = phi.real() - std::floor(phi.real());
  return std::polar(std::exp(Scalar(-2 * kPi) * phi.imag()), Scalar(2 * kPi) * re);
}

}  // namespace detail

/// Direct O(n^{2d}) quadrature. The k = 0 mode bypasses the phase and every other
/// mode carries the excision factor 1 - ψ(2k) (identically 1 on the nonzero lattice).
template <typename Scalar>
GridFunction<Scalar> apply_fio(const FioSpec<Scalar>& T, const GridFunction<Scalar>& f, const ApplyOptions& opt = {}) {
  f.validate();
  if (!T.phase) throw ValidationError("FIO has no phase");
  if (T.phase->dim != f.grid.dim)
    throw GridMismatch("phase dimension " + std::to_string(T.phase->dim) + " does not match grid dimension " +
                       std::to_string(f.grid.dim));
  if (opt.validate) {
    const PhaseReport rep = validate_phase(*T.phase, opt.validation_budget, opt.validation);
    if (!rep.pass) throw PhaseValidationFailed(T.phase->id + ": " + rep.violation);
  }
  const auto F = forward_transform(f);
  const GridSpec& g = f.grid;

  struct Mode {
    Point<Scalar> k;
    Complex<Scalar> coeff;
  };
  std::vector<Mode> modes;  // ascending slot order, zero mode excluded
  Complex<Scalar> zero_coeff(0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex<Scalar> c = F.coeffs(Eigen::Index(i));
    const Frequency k = frequency_at(g, i);
    if (k.squaredNorm() == 0) {
      zero_coeff = c;
      continue;
    }
    if (c == Complex<Scalar>(0)) continue;
    const double excision = 1.0 - cutoff::psi(2.0 * std::sqrt(double(k.squaredNorm())));
    modes.push_back({k.template cast<Scalar>(), c * Scalar(excision)});
  }

  GridFunction<Scalar> out(g);
  const Point<Scalar> origin = Point<Scalar>::Zero(g.dim);
  const PhaseSpec<Scalar>& phase = *T.phase;
  parallel_for(g.size(), [&](std::size_t xi) {
    const Point<Scalar> x = point_at<Scalar>(g, xi);
    Complex<Scalar> acc = T.symbol(x, origin) * zero_coeff;
    for (const auto& m : modes) acc += detail::unit_exponential(phase(x, m.k)) * T.symbol(x, m.k) * m.coeff;
    out.values(Eigen::Index(xi)) = acc;
  });
  if (T.left_bessel != Scalar(0)) return bessel_potential(out, T.left_bessel);
  return out;
}

enum class BesselSide { Left, Right };

/// T J_s (right: symbol times ⟨k⟩^s) or J_s T (left). Order becomes m + s; the phase
/// object is shared, never copied.
template <typename Scalar>
FioSpec<Scalar> compose_with_bessel(const FioSpec<Scalar>& T, Scalar s, BesselSide side) {
  FioSpec<Scalar> out = T;
  out.order = T.order + s;
  if (s == Scalar(0)) return out;
  if (side == BesselSide::Left) {
    out.left_bessel = T.left_bessel + s;
    return out;
  }
  auto inner = T.symbol.evaluator;
  out.symbol.evaluator = [inner, s](const Point<Scalar>& x, const Point<Scalar>& eta) {
    return inner(x, eta) * Scalar(std::pow(japanese_bracket(eta), s));
  };
  out.symbol.order = T.symbol.order + s;
  return out;
}

}  // namespace hypfl
