#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hypfl/function_spaces.hpp"
#include "hypfl/trig_poly.hpp"

namespace hypfl {

using Roots = std::vector<Complex<double>>;

/// p_j(t, x, k) of P = D_t^m + Σ_j p_j D_t^{m-j}.
struct Coefficient {
  std::function<Complex<double>(double t, const Point<double>& x, const Point<double>& k)> eval;
  bool x_dependent = false;
  bool t_dependent = false;

  Complex<double> operator()(double t, const Point<double>& x, const Point<double>& k) const { return eval(t, x, k); }
};

/// a(x)·|ξ|^j at ξ = 2πk, the form used by problem files.
Coefficient trig_coefficient(int j, TrigPoly<double> a);

struct HyperbolicProblemSpec {
  int order = 1;
  std::vector<Coefficient> coefficients;  // p_1 .. p_m
  GridSpec grid;
  double horizon = 1.0;
  std::vector<GridFunction<double>> data;  // f_0 .. f_{m-1}
  int steps_per_unit = 64;
  int kappa = -1;  // declared rank for the κ-variant of α_p; -1 means d
  double gap_delta = 1e-3;
  double imag_tolerance = 1e-9;

  bool x_dependent() const;
  bool autonomous() const;
  int rank() const { return kappa < 0 ? grid.dim : kappa; }
  void validate() const;
};

/// Roots of the monic polynomial τ^m + c_1 τ^{m-1} + … + c_m, sorted by (Re, Im).
Roots polynomial_roots(const std::vector<Complex<double>>& c);

/// Certified characteristic roots at k ≠ 0. Throws RootCollision when the gap is
/// below gap_delta·max(1,|k|) and NegativeImaginary when some Im τ_j < -imag_tolerance.
Roots characteristic_roots(const HyperbolicProblemSpec& spec, double t, const Point<double>& x, const Point<double>& k);

/// First-order symbol τ(t, x, k) for D_t v = τ_op v.
struct FirstOrderSymbol {
  std::function<Complex<double>(double t, const Point<double>& x, const Point<double>& k)> tau;
  bool x_dependent = false;
  bool t_dependent = false;
};

/// Frozen-symbol exponential steps: exact per mode when τ is x-independent and
/// autonomous; one complex-phase FIO step per substep otherwise.
GridFunction<double> first_order_propagate(const FirstOrderSymbol& tau, const GridFunction<double>& f, double t0,
                                           double t1, int steps);

/// Solves Σ_j (iτ_j)^l ĝ_j = f̂_l, l = 0..m-1 (Björck-Pereyra). Roots must be distinct.
std::vector<Complex<double>> vandermonde_solve(const Roots& roots, const std::vector<Complex<double>>& rhs);

struct DataMapResult {
  std::vector<SpectralFunction<double>> g;  // ĝ_1 .. ĝ_m
  bool zero_mode_fallback = false;
};

/// ĝ_j(k) from the certified roots at every lattice mode (x-independent coefficients, t = 0).
/// The k = 0 mode takes ĝ_1 = f̂_0, ĝ_{j>1} = 0.
DataMapResult vandermonde_data_map(const HyperbolicProblemSpec& spec);

struct NormRequest {
  double p = 2.0;
  double alpha = 0.0;
};

enum class AlphaVariant { Dimension, Rank };

struct RegularityOptions {
  AlphaVariant variant = AlphaVariant::Dimension;
  int kappa = -1;  // -1 means d
  double margin = 1e-2;
  double budget = 10.0;
};

struct RegularityReport {
  std::string variant;  // "pp" or "pq"
  double p = 2.0, q = 2.0, alpha = 0.0;
  double alpha_threshold = 0.0;  // α_p or α_pq actually used
  double alpha_p_dimension = 0.0, alpha_p_rank = 0.0;
  double solution_norm = 0.0, data_norm = 0.0, ratio = 0.0;
  bool within_budget = true;
};

/// fl_norm(v, p|q, α) / Σ_l fl_norm(f_l, p, α + α_* - l).
RegularityReport regularity_report(const GridFunction<double>& v, const std::vector<GridFunction<double>>& data,
                                   double p, double alpha, std::optional<double> q = std::nullopt,
                                   const RegularityOptions& opt = {});

struct FactorDiagnostics {
  int index = 0;
  double max_growth = 0.0;  // max |e^{iτ_j t}| per mode, or the L² ratio for x-dependent steps
  double min_imag = 0.0;
};

struct SolveReport {
  double t = 0.0;
  std::string method;
  int steps = 0;
  double min_root_gap = 0.0;
  double min_root_imag = 0.0;
  bool zero_mode_fallback = false;
  std::vector<FactorDiagnostics> factors;
  std::vector<RegularityReport> norms;
};

struct SolveResult {
  GridFunction<double> v;
  SolveReport report;
};

/// v(t) = Σ_j U_j(t) g_j. Remainder of the factorization taken as zero.
SolveResult solve_cauchy(const HyperbolicProblemSpec& spec, double t, const std::vector<NormRequest>& norms = {},
                         const RegularityOptions& opt = {});

/// ∂_t^l v(t): exact per mode for autonomous x-independent coefficients, one-sided
/// third-order differences of step h otherwise.
GridFunction<double> solution_time_derivative(const HyperbolicProblemSpec& spec, double t, int l, double h = 1e-3);

}  // namespace hypfl
