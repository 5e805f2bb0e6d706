#include "hypfl/hyperbolic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypfl/fio.hpp"
#include "hypfl/parallel.hpp"

namespace hypfl {

namespace {

using C = Complex<double>;
const C kI(0.0, 1.0);

struct RootStats {
  double min_gap = std::numeric_limits<double>::infinity();
  double min_imag = std::numeric_limits<double>::infinity();

  void merge(const RootStats& o) {
    min_gap = std::min(min_gap, o.min_gap);
    min_imag = std::min(min_imag, o.min_imag);
  }
};

std::string describe(const Point<double>& k) {
  std::ostringstream os;
  os << "k=(";
  for (Eigen::Index i = 0; i < k.size(); ++i) os << (i ? "," : "") << k(i);
  os << ")";
  return os.str();
}

void certify(const HyperbolicProblemSpec& spec, const Roots& roots, const Point<double>& k, RootStats& stats) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = a + 1; b < roots.size(); ++b) gap = std::min(gap, std::abs(roots[a] - roots[b]));
  double imag = std::numeric_limits<double>::infinity();
  for (const auto& r : roots) imag = std::min(imag, r.imag());
  stats.min_gap = std::min(stats.min_gap, gap);
  stats.min_imag = std::min(stats.min_imag, imag);
  const double floor = spec.gap_delta * std::max(1.0, k.norm());
  if (gap < floor) {
    std::ostringstream os;
    os << "characteristic roots not simple at " << describe(k) << ": gap " << gap << " < " << floor;
    throw RootCollision(os.str());
  }
  if (imag < -spec.imag_tolerance) {
    std::ostringstream os;
    os << "characteristic root with Im tau = " << imag << " < 0 at " << describe(k);
    throw NegativeImaginary(os.str());
  }
}

Roots certified_roots(const HyperbolicProblemSpec& spec, double t, const Point<double>& x, const Point<double>& k,
                      RootStats& stats) {
  std::vector<C> c(std::size_t(spec.order));
  for (int j = 0; j < spec.order; ++j) c[std::size_t(j)] = spec.coefficients[std::size_t(j)](t, x, k);
  Roots roots = polynomial_roots(c);
  certify(spec, roots, k, stats);
  return roots;
}

int step_count(double span, int per_unit) {
  return std::max(1, int(std::ceil(span * double(per_unit) - 1e-9)));
}

// One frozen-phase step: out(x) = F(0) + Σ_{k≠0} e^{2πi(x·k + exponent/(2π))} F(k),
// exponent = Δt·τ(x, k). Summation in ascending slot order for every x.
template <typename Exponent>
GridFunction<double> phase_step(const SpectralFunction<double>& F, Exponent&& exponent) {
  const GridSpec& g = F.grid;
  std::vector<std::size_t> modes;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (i != 0 && F.coeffs(Eigen::Index(i)) != C(0)) modes.push_back(i);
  GridFunction<double> out(g);
  parallel_for(g.size(), [&](std::size_t xi) {
    const Point<double> x = point_at<double>(g, xi);
    C acc = F.coeffs(0);
    for (std::size_t ki : modes) {
      const Point<double> k = frequency_at(g, ki).cast<double>();
      const C phi = C(x.dot(k)) + exponent(xi, x, ki, k) / (2 * kPi);
      acc += detail::unit_exponential(phi) * F.coeffs(Eigen::Index(ki));
    }
    out.values(Eigen::Index(xi)) = acc;
  });
  return out;
}

// Autonomous x-dependent roots on the (x, k) lattice, computed once.
class RootTable {
 public:
  RootTable(const HyperbolicProblemSpec& spec, RootStats& stats) : size_(spec.grid.size()), order_(spec.order) {
    const GridSpec& g = spec.grid;
    roots_.assign(size_ * size_ * std::size_t(order_), C(0));
    std::vector<RootStats> per_x(size_);
    parallel_for(size_, [&](std::size_t xi) {
      const Point<double> x = point_at<double>(g, xi);
      for (std::size_t ki = 1; ki < size_; ++ki) {
        const Roots r = certified_roots(spec, 0.0, x, frequency_at(g, ki).cast<double>(), per_x[xi]);
        std::copy(r.begin(), r.end(), roots_.begin() + std::ptrdiff_t((xi * size_ + ki) * std::size_t(order_)));
      }
    });
    for (const auto& s : per_x) stats.merge(s);
  }

  const C* at(std::size_t xi, std::size_t ki) const { return &roots_[(xi * size_ + ki) * std::size_t(order_)]; }

 private:
  std::size_t size_;
  int order_;
  std::vector<C> roots_;
};

std::vector<SpectralFunction<double>> transform_data(const HyperbolicProblemSpec& spec) {
  std::vector<SpectralFunction<double>> out;
  for (const auto& f : spec.data) out.push_back(forward_transform(f));
  return out;
}

bool zero_mode_drops_data(const std::vector<SpectralFunction<double>>& F) {
  for (std::size_t l = 1; l < F.size(); ++l)
    if (F[l].coeffs(0) != C(0)) return true;
  return false;
}

// Mode-wise solution for x-independent coefficients. `derivative` > 0 returns ∂_t^l v
// (exact only for autonomous coefficients).
GridFunction<double> solve_spectral(const HyperbolicProblemSpec& spec, double t, int derivative, SolveReport* report) {
  const GridSpec& g = spec.grid;
  const auto F = transform_data(spec);
  const std::size_t m = std::size_t(spec.order);
  const Point<double> origin = Point<double>::Zero(g.dim);
  const bool autonomous = spec.autonomous();
  const int steps = autonomous ? 1 : (t > 0 ? step_count(t, spec.steps_per_unit) : 0);

  SpectralFunction<double> out(g);
  std::vector<RootStats> stats(g.size());
  std::vector<std::vector<double>> growth(g.size(), std::vector<double>(m, 0.0));
  parallel_for(g.size(), [&](std::size_t ki) {
    if (ki == 0) {
      out.coeffs(0) = derivative == 0 ? F[0].coeffs(0) : C(0);
      return;
    }
    const Point<double> k = frequency_at(g, ki).cast<double>();
    const Roots roots0 = certified_roots(spec, 0.0, origin, k, stats[ki]);
    std::vector<C> rhs(m);
    for (std::size_t l = 0; l < m; ++l) rhs[l] = F[l].coeffs(Eigen::Index(ki));
    const std::vector<C> gh = vandermonde_solve(roots0, rhs);

    std::vector<C> factor(m);
    std::vector<C> final_roots = roots0;
    if (autonomous) {
      for (std::size_t j = 0; j < m; ++j) factor[j] = std::exp(kI * roots0[j] * t);
    } else {
      std::fill(factor.begin(), factor.end(), C(1));
      const double dt = steps > 0 ? t / steps : 0.0;
      for (int s = 0; s < steps; ++s) {
        const Roots r = certified_roots(spec, (s + 0.5) * dt, origin, k, stats[ki]);
        for (std::size_t j = 0; j < m; ++j) factor[j] *= std::exp(kI * r[j] * dt);
      }
      if (derivative > 0) final_roots = certified_roots(spec, t, origin, k, stats[ki]);
    }
    C acc(0);
    for (std::size_t j = 0; j < m; ++j) {
      growth[ki][j] = std::abs(factor[j]);
      C power(1);
      for (int i = 0; i < derivative; ++i) power *= kI * final_roots[j];
      acc += power * factor[j] * gh[j];
    }
    out.coeffs(Eigen::Index(ki)) = acc;
  });

  if (report) {
    RootStats all;
    for (const auto& s : stats) all.merge(s);
    report->method = autonomous ? "exact-spectral" : "midpoint-exponential";
    report->steps = steps;
    report->min_root_gap = all.min_gap;
    report->min_root_imag = all.min_imag;
    report->zero_mode_fallback = zero_mode_drops_data(F);
    report->factors.clear();
    for (std::size_t j = 0; j < m; ++j) {
      FactorDiagnostics d{int(j) + 1, 0.0, std::numeric_limits<double>::infinity()};
      for (std::size_t ki = 1; ki < g.size(); ++ki) d.max_growth = std::max(d.max_growth, growth[ki][j]);
      d.min_imag = all.min_imag;
      report->factors.push_back(d);
    }
  }
  return inverse_transform(out);
}

// Variable-coefficient path: pseudodifferential data map then frozen-phase steps per factor.
GridFunction<double> solve_variable(const HyperbolicProblemSpec& spec, double t, SolveReport* report) {
  const GridSpec& g = spec.grid;
  const auto F = transform_data(spec);
  const std::size_t m = std::size_t(spec.order);
  const std::size_t size = g.size();
  RootStats stats;
  const RootTable table(spec, stats);

  // g_j(x) = F_0(0)δ_{j1} + Σ_{k≠0} e^{2πik·x} Σ_l B_{jl}(x,k) f̂_l(k).
  std::vector<GridFunction<double>> gj(m, GridFunction<double>(g));
  parallel_for(size, [&](std::size_t xi) {
    const Point<double> x = point_at<double>(g, xi);
    std::vector<C> acc(m, C(0));
    acc[0] = F[0].coeffs(0);
    std::vector<C> rhs(m);
    for (std::size_t ki = 1; ki < size; ++ki) {
      bool any = false;
      for (std::size_t l = 0; l < m; ++l) any |= (rhs[l] = F[l].coeffs(Eigen::Index(ki))) != C(0);
      if (!any) continue;
      const C* r = table.at(xi, ki);
      const std::vector<C> gh = vandermonde_solve(Roots(r, r + m), rhs);
      const C wave = detail::unit_exponential(C(x.dot(frequency_at(g, ki).cast<double>())));
      for (std::size_t j = 0; j < m; ++j) acc[j] += wave * gh[j];
    }
    for (std::size_t j = 0; j < m; ++j) gj[j].values(Eigen::Index(xi)) = acc[j];
  });

  const int steps = t > 0 ? step_count(t, spec.steps_per_unit) : 0;
  const double dt = steps > 0 ? t / steps : 0.0;
  const bool autonomous = spec.autonomous();
  GridFunction<double> v(g);
  std::vector<FactorDiagnostics> factors;
  for (std::size_t j = 0; j < m; ++j) {
    GridFunction<double> u = gj[j];
    for (int s = 0; s < steps; ++s) {
      const double mid = (s + 0.5) * dt;
      u = phase_step(forward_transform(u), [&](std::size_t xi, const Point<double>& x, std::size_t ki,
                                               const Point<double>& k) {
        if (autonomous) return dt * table.at(xi, ki)[j];
        RootStats local;
        return dt * certified_roots(spec, mid, x, k, local)[j];
      });
    }
    const double before = l2_norm(gj[j]);
    factors.push_back({int(j) + 1, before > 0 ? l2_norm(u) / before : 1.0, stats.min_imag});
    v.values += u.values;
  }
  if (report) {
    report->method = "frozen-phase-fio";
    report->steps = steps;
    report->min_root_gap = stats.min_gap;
    report->min_root_imag = stats.min_imag;
    report->zero_mode_fallback = zero_mode_drops_data(F);
    report->factors = factors;
  }
  return v;
}

GridFunction<double> solve_at(const HyperbolicProblemSpec& spec, double t, SolveReport* report) {
  return spec.x_dependent() ? solve_variable(spec, t, report) : solve_spectral(spec, t, 0, report);
}

// Fornberg weights of the order-`deriv` derivative at 0 on the nodes 0, 1, …, count-1.
std::vector<double> difference_weights(int deriv, int count) {
  const auto M = std::size_t(deriv);
  std::vector<std::vector<double>> c(std::size_t(count), std::vector<double>(M + 1, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0, c4 = 0.0;
  for (std::size_t i = 1; i < std::size_t(count); ++i) {
    const std::size_t mn = std::min(i, M);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = double(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = double(i) - double(j);
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) c[i][k] = c1 * (double(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - double(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w;
  for (const auto& row : c) w.push_back(row[M]);
  return w;
}

}  // namespace

Coefficient trig_coefficient(int j, TrigPoly<double> a) {
  const bool xdep = !a.is_constant();
  return {[j, a = std::move(a)](double, const Point<double>& x, const Point<double>& k) {
            return a(x) * std::pow(2 * kPi * k.norm(), double(j));
          },
          xdep, false};
}

bool HyperbolicProblemSpec::x_dependent() const {
  return std::any_of(coefficients.begin(), coefficients.end(), [](const Coefficient& c) { return c.x_dependent; });
}

bool HyperbolicProblemSpec::autonomous() const {
  return std::none_of(coefficients.begin(), coefficients.end(), [](const Coefficient& c) { return c.t_dependent; });
}

void HyperbolicProblemSpec::validate() const {
  grid.validate();
  if (order < 1) throw ValidationError("order m must be >= 1");
  if (int(coefficients.size()) != order)
    throw ValidationError("expected " + std::to_string(order) + " coefficients, got " +
                          std::to_string(coefficients.size()));
  for (const auto& c : coefficients)
    if (!c.eval) throw ValidationError("coefficient without evaluator");
  if (int(data.size()) != order)
    throw ValidationError("expected " + std::to_string(order) + " initial data, got " + std::to_string(data.size()));
  for (const auto& f : data) {
    require_same_grid(f.grid, grid);
    f.validate();
  }
  if (!(horizon > 0)) throw ValidationError("time horizon T must be positive");
  if (steps_per_unit < 1) throw ValidationError("steps_per_unit must be >= 1");
  if (!(gap_delta > 0)) throw ValidationError("gap_delta must be positive");
  if (kappa > grid.dim) throw ValidationError("declared rank exceeds the dimension");
}

Roots polynomial_roots(const std::vector<C>& c) {
  const Eigen::Index m = Eigen::Index(c.size());
  if (m == 0) return {};
  Roots roots;
  if (m == 1) {
    roots.push_back(-c[0]);
    return roots;
  }
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) companion(0, j) = -c[std::size_t(j)];
  for (Eigen::Index i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("EigenFailure", "companion eigenvalues did not converge");
  for (Eigen::Index i = 0; i < m; ++i) roots.push_back(solver.eigenvalues()(i));
  std::sort(roots.begin(), roots.end(), [](const C& a, const C& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return roots;
}

Roots characteristic_roots(const HyperbolicProblemSpec& spec, double t, const Point<double>& x,
                           const Point<double>& k) {
  if (k.norm() == 0) throw ValidationError("characteristic roots are taken at k != 0 only");
  if (int(spec.coefficients.size()) != spec.order) throw ValidationError("coefficient count differs from order");
  RootStats stats;
  return certified_roots(spec, t, x, k, stats);
}

GridFunction<double> first_order_propagate(const FirstOrderSymbol& tau, const GridFunction<double>& f, double t0,
                                           double t1, int steps) {
  f.validate();
  if (t1 < t0) throw ValidationError("first_order_propagate runs forward in time only (t1 >= t0)");
  if (steps < 1) throw ValidationError("steps must be >= 1");
  if (!tau.tau) throw ValidationError("first-order symbol without evaluator");
  const GridSpec& g = f.grid;
  const double dt = (t1 - t0) / steps;
  if (!tau.x_dependent) {
    const Point<double> origin = Point<double>::Zero(g.dim);
    auto F = forward_transform(f);
    for (std::size_t ki = 1; ki < g.size(); ++ki) {
      const Point<double> k = frequency_at(g, ki).cast<double>();
      C factor(1);
      if (!tau.t_dependent) {
        factor = std::exp(kI * (t1 - t0) * tau.tau(t0, origin, k));
      } else {
        for (int s = 0; s < steps; ++s) factor *= std::exp(kI * dt * tau.tau(t0 + (s + 0.5) * dt, origin, k));
      }
      F.coeffs(Eigen::Index(ki)) *= factor;
    }
    return inverse_transform(F);
  }
  GridFunction<double> v = f;
  for (int s = 0; s < steps; ++s) {
    const double mid = t0 + (s + 0.5) * dt;
    v = phase_step(forward_transform(v), [&](std::size_t, const Point<double>& x, std::size_t, const Point<double>& k) {
      return dt * tau.tau(mid, x, k);
    });
  }
  return v;
}

std::vector<C> vandermonde_solve(const Roots& roots, const std::vector<C>& rhs) {
  if (roots.size() != rhs.size()) throw ValidationError("Vandermonde system: roots and data differ in length");
  if (roots.empty()) return {};
  // Björck-Pereyra for V z = b, V(l, j) = x_j^l, x_j = iτ_j.
  const std::ptrdiff_t n = std::ptrdiff_t(roots.size()) - 1;
  std::vector<C> x(roots.size());
  for (std::size_t j = 0; j < roots.size(); ++j) x[j] = kI * roots[j];
  std::vector<C> b = rhs;
  auto at = [&](std::ptrdiff_t i) -> C& { return b[std::size_t(i)]; };
  for (std::ptrdiff_t k = 0; k < n; ++k)
    for (std::ptrdiff_t i = n; i > k; --i) at(i) -= x[std::size_t(k)] * at(i - 1);
  for (std::ptrdiff_t k = n - 1; k >= 0; --k) {
    for (std::ptrdiff_t i = k + 1; i <= n; ++i) {
      const C den = x[std::size_t(i)] - x[std::size_t(i - k - 1)];
      if (den == C(0)) throw RootCollision("Vandermonde matrix is singular: repeated root");
      at(i) /= den;
    }
    for (std::ptrdiff_t i = k; i < n; ++i) at(i) -= at(i + 1);
  }
  return b;
}

DataMapResult vandermonde_data_map(const HyperbolicProblemSpec& spec) {
  spec.validate();
  if (spec.x_dependent()) throw ValidationError("lattice data map requires x-independent coefficients");
  const GridSpec& g = spec.grid;
  const auto F = transform_data(spec);
  const std::size_t m = std::size_t(spec.order);
  DataMapResult res;
  res.g.assign(m, SpectralFunction<double>(g));
  res.g[0].coeffs(0) = F[0].coeffs(0);
  res.zero_mode_fallback = zero_mode_drops_data(F);
  const Point<double> origin = Point<double>::Zero(g.dim);
  parallel_for(g.size(), [&](std::size_t ki) {
    if (ki == 0) return;
    RootStats stats;
    const Roots roots = certified_roots(spec, 0.0, origin, frequency_at(g, ki).cast<double>(), stats);
    std::vector<C> rhs(m);
    for (std::size_t l = 0; l < m; ++l) rhs[l] = F[l].coeffs(Eigen::Index(ki));
    const auto gh = vandermonde_solve(roots, rhs);
    for (std::size_t j = 0; j < m; ++j) res.g[j].coeffs(Eigen::Index(ki)) = gh[j];
  });
  return res;
}

RegularityReport regularity_report(const GridFunction<double>& v, const std::vector<GridFunction<double>>& data,
                                   double p, double alpha, std::optional<double> q, const RegularityOptions& opt) {
  if (!(p >= 1)) throw ValidationError("regularity comparison needs 1 <= p <= inf");
  if (q && !(*q >= 1 && *q < p)) throw ValidationError("pq regularity comparison needs 1 <= q < p");
  if (data.empty()) throw ValidationError("regularity comparison needs initial data");
  const int d = v.grid.dim;
  const int kappa = opt.kappa < 0 ? d : opt.kappa;
  auto dist = [](double e) { return std::abs(1.0 / e - 0.5); };

  RegularityReport rep;
  rep.p = p;
  rep.q = q.value_or(p);
  rep.alpha = alpha;
  rep.alpha_p_dimension = d * dist(p);
  rep.alpha_p_rank = kappa * dist(p);
  const double weight = opt.variant == AlphaVariant::Dimension ? d : kappa;
  if (q) {
    rep.variant = "pq";
    rep.alpha_threshold = weight * dist(*q) + d * (1.0 / *q - 1.0 / p) + opt.margin;
  } else {
    rep.variant = "pp";
    rep.alpha_threshold = weight * dist(p);
  }
  rep.solution_norm = fl_norm(v, rep.q, alpha).value;
  for (std::size_t l = 0; l < data.size(); ++l)
    rep.data_norm += fl_norm(data[l], p, alpha + rep.alpha_threshold - double(l)).value;
  if (rep.data_norm > 0)
    rep.ratio = rep.solution_norm / rep.data_norm;
  else
    rep.ratio = rep.solution_norm > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  rep.within_budget = rep.ratio <= opt.budget;
  return rep;
}

SolveResult solve_cauchy(const HyperbolicProblemSpec& spec, double t, const std::vector<NormRequest>& norms,
                         const RegularityOptions& opt) {
  spec.validate();
  if (!(t >= 0 && t <= spec.horizon))
    throw ValidationError("time " + std::to_string(t) + " outside [0, T] with T = " + std::to_string(spec.horizon));
  for (const auto& r : norms)
    if (!(r.p >= 1)) throw ValidationError("norm request p = " + std::to_string(r.p) + " below 1");
  SolveResult res{GridFunction<double>(spec.grid), {}};
  res.report.t = t;
  res.v = solve_at(spec, t, &res.report);
  RegularityOptions o = opt;
  if (o.kappa < 0) o.kappa = spec.rank();
  for (const auto& r : norms) res.report.norms.push_back(regularity_report(res.v, spec.data, r.p, r.alpha, {}, o));
  return res;
}

GridFunction<double> solution_time_derivative(const HyperbolicProblemSpec& spec, double t, int l, double h) {
  spec.validate();
  if (l < 0) throw ValidationError("derivative order must be >= 0");
  if (t < 0) throw ValidationError("time must be >= 0");
  if (!spec.x_dependent() && spec.autonomous()) return solve_spectral(spec, t, l, nullptr);
  if (l == 0) return solve_at(spec, t, nullptr);
  if (!(h > 0)) throw ValidationError("difference step must be positive");
  // One-sided stencil on t, t+h, …, t+(l+2)h: third order in h.
  const auto w = difference_weights(l, l + 3);
  GridFunction<double> acc(spec.grid);
  for (int i = 0; i < l + 3; ++i) acc.values += w[std::size_t(i)] * solve_at(spec, t + i * h, nullptr).values;
  acc.values /= std::pow(h, double(l));
  return acc;
}

}  // namespace hypfl
