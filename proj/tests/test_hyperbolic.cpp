#include "doctest.h"
#include "hypfl/hyperbolic.hpp"
#include "hyperbolic_oracles.hpp"
#include "support.hpp"

#include <Eigen/LU>

using namespace hypfl;
using namespace hypfl::testing;

TEST_CASE("characteristic roots") {
  HyperbolicProblemSpec wave;
  wave.order = 2;
  wave.coefficients = {raw([](const Point<double>&) { return C(0); }),
                       raw([](const Point<double>& k) { return C(-k.squaredNorm()); })};
  const auto r = characteristic_roots(wave, 0, Point<double>::Zero(1), Point<double>::Constant(1, 3));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - C(-3)) < 1e-14);
  CHECK(std::abs(r[1] - C(3)) < 1e-14);

  HyperbolicProblemSpec first;
  first.order = 1;
  first.coefficients = {raw([](const Point<double>& k) { return -C(0.5, 0.25) * k.norm(); })};
  const auto s = characteristic_roots(first, 0, Point<double>::Zero(1), Point<double>::Constant(1, 4));
  CHECK(std::abs(s[0] - C(2, 1)) < 1e-15);

  HyperbolicProblemSpec collide = wave;
  collide.coefficients = {raw([](const Point<double>& k) { return C(-2 * k.norm()); }),
                          raw([](const Point<double>& k) { return C(k.squaredNorm()); })};
  CHECK_THROWS_AS(characteristic_roots(collide, 0, Point<double>::Zero(1), Point<double>::Constant(1, 2)),
                  RootCollision);

  HyperbolicProblemSpec sinking = first;
  sinking.coefficients = {raw([](const Point<double>& k) { return C(0, 1) * k.norm(); })};
  CHECK_THROWS_AS(characteristic_roots(sinking, 0, Point<double>::Zero(1), Point<double>::Constant(1, 1)),
                  NegativeImaginary);
  CHECK_THROWS_AS(characteristic_roots(first, 0, Point<double>::Zero(1), Point<double>::Zero(1)), ValidationError);
}

TEST_CASE("cubic roots are sorted and certified") {
  const std::vector<C> speeds{C(1.5, 0.2), C(-1, 0), C(0.5, 0.1)};
  HyperbolicProblemSpec s;
  s.order = 3;
  s.coefficients = from_speeds(speeds);
  const auto r = characteristic_roots(s, 0, Point<double>::Zero(1), Point<double>::Constant(1, 2));
  const double xi = 4 * kPi;
  CHECK(std::abs(r[0] - speeds[1] * xi) < 1e-12);
  CHECK(std::abs(r[1] - speeds[2] * xi) < 1e-12);
  CHECK(std::abs(r[2] - speeds[0] * xi) < 1e-12);
}

TEST_CASE("first-order propagation") {
  const auto g = grid1(32);
  const auto f = plane_wave(g, 3);
  const FirstOrderSymbol half_wave{[](double, const Point<double>&, const Point<double>& k) { return C(k.norm()); }};
  const double t = 0.8;
  CHECK(max_abs_diff(first_order_propagate(half_wave, f, 0, t, 1), std::polar(1.0, 3 * t) * f) < 1e-13);

  const FirstOrderSymbol damped{[](double, const Point<double>&, const Point<double>& k) { return C(0, k.norm()); }};
  const auto h = mean_free(random_field(g, 4));
  double prev = fl_norm(h, 2, 0).value;
  for (double s : {0.1, 0.2, 0.4}) {
    const auto out = first_order_propagate(damped, h, 0, s, 3);
    const auto Fh = forward_transform(h), Fo = forward_transform(out);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double kn = std::abs(double(frequency_at(g, i)(0)));
      CHECK(std::abs(Fo.coeffs(Eigen::Index(i)) - std::exp(-s * kn) * Fh.coeffs(Eigen::Index(i))) < 1e-14);
    }
    const double now = fl_norm(out, 2, 0).value;
    CHECK(now < prev);
    prev = now;
  }

  const FirstOrderSymbol zero{[](double, const Point<double>&, const Point<double>&) { return C(0); }};
  CHECK(max_abs_diff(first_order_propagate(zero, h, 0.3, 2.0, 7), h) < 1e-14);
  CHECK_THROWS_AS(first_order_propagate(zero, h, 1.0, 0.5, 1), ValidationError);
  CHECK_THROWS_AS(first_order_propagate(zero, h, 0.0, 0.5, 0), ValidationError);
}

TEST_CASE("frozen-phase steps agree with the exact path for x-independent symbols") {
  const auto g = grid1(64);
  const auto f = random_field(g, 8);
  auto tau = [](double, const Point<double>&, const Point<double>& k) { return C(0.7, 0.05) * 2.0 * kPi * k.norm(); };
  const auto exact = first_order_propagate({tau, false, false}, f, 0, 0.3, 1);
  const auto stepped = first_order_propagate({tau, true, false}, f, 0, 0.3, 5);
  CHECK(rel_diff(stepped, exact) < 1e-10);
}

TEST_CASE("x-dependent propagation converges under step halving") {
  const auto g = grid1(64);
  const auto f = sample<double>(g, [](const Point<double>& x) { return std::polar(1.0, 2 * kPi * 4 * x(0)); });
  auto speed = [](const Point<double>& x) { return C(1 + 0.2 * std::cos(2 * kPi * x(0)), 0.0); };
  const FirstOrderSymbol tau{[&](double, const Point<double>& x, const Point<double>& k) {
                               return speed(x) * 2.0 * kPi * k.norm();
                             },
                             true, false};
  const auto reference = first_order_propagate(tau, f, 0, 0.25, 64);
  std::vector<double> errors;
  for (int steps : {4, 8, 16}) errors.push_back(max_abs_diff(first_order_propagate(tau, f, 0, 0.25, steps), reference));
  CHECK(errors[1] < 0.7 * errors[0]);
  CHECK(errors[2] < 0.7 * errors[1]);
}

TEST_CASE("Vandermonde solve") {
  SUBCASE("m = 2 by hand") {
    const double k = 3.0;
    const C f0(0.4, -1.0), f1(2.0, 0.5);
    const auto g = vandermonde_solve({C(-k), C(k)}, {f0, f1});
    const C ik(0, k);
    CHECK(std::abs(g[1] - (f0 + f1 / ik) / 2.0) < 1e-15);
    CHECK(std::abs(g[0] - (f0 - f1 / ik) / 2.0) < 1e-15);
  }
  SUBCASE("m = 1") { CHECK(vandermonde_solve({C(2, 1)}, {C(5, -3)})[0] == C(5, -3)); }
  SUBCASE("round trip and LU oracle") {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> normal;
    for (std::size_t m = 1; m <= 3; ++m)
      for (int trial = 0; trial < 50; ++trial) {
        Roots roots(m);
        std::vector<C> c(m), f(m, C(0));
        for (auto& r : roots) r = C(10 * normal(rng), std::abs(normal(rng)));
        for (auto& v : c) v = C(normal(rng), normal(rng));
        Eigen::MatrixXcd M(m, m);
        Eigen::VectorXcd cv(m);
        for (std::size_t l = 0; l < m; ++l) {
          cv(Eigen::Index(l)) = c[l];
          for (std::size_t j = 0; j < m; ++j) {
            M(Eigen::Index(l), Eigen::Index(j)) = std::pow(C(0, 1) * roots[j], double(l));
            f[l] += M(Eigen::Index(l), Eigen::Index(j)) * c[j];
          }
        }
        const auto back = vandermonde_solve(roots, f);
        Eigen::VectorXcd fv(m);
        for (std::size_t l = 0; l < m; ++l) fv(Eigen::Index(l)) = f[l];
        const Eigen::VectorXcd lu = M.partialPivLu().solve(fv);
        for (std::size_t j = 0; j < m; ++j) {
          CHECK(std::abs(back[j] - c[j]) < 1e-9 * std::max(1.0, std::abs(c[j])));
          CHECK(std::abs(back[j] - lu(Eigen::Index(j))) < 1e-9 * std::max(1.0, std::abs(lu(Eigen::Index(j)))));
        }
      }
  }
  CHECK_THROWS_AS(vandermonde_solve({C(1), C(1)}, {C(1), C(0)}), RootCollision);
}

TEST_CASE("lattice data map round trip") {
  for (std::size_t m = 1; m <= 3; ++m) {
    const std::vector<C> all{C(-1, 0.1), C(0.5, 0.3), C(1.25, 0)};
    const std::vector<C> speeds(all.begin(), all.begin() + std::ptrdiff_t(m));
    const auto g = grid1(32);
    // Synthesize f_l = Σ_j (iτ_j)^l c_j mode by mode, c random.
    std::vector<SpectralFunction<double>> c(m, SpectralFunction<double>(g)), f(m, SpectralFunction<double>(g));
    std::mt19937_64 rng(m);
    std::normal_distribution<double> normal;
    HyperbolicProblemSpec s = problem(g, from_speeds(speeds), {});
    for (std::size_t ki = 1; ki < g.size(); ++ki) {
      const Point<double> k = frequency_at(g, ki).cast<double>();
      const auto roots = characteristic_roots(s, 0, Point<double>::Zero(1), k);
      for (std::size_t j = 0; j < m; ++j) c[j].coeffs(Eigen::Index(ki)) = C(normal(rng), normal(rng));
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t j = 0; j < m; ++j)
          f[l].coeffs(Eigen::Index(ki)) += std::pow(C(0, 1) * roots[j], double(l)) * c[j].coeffs(Eigen::Index(ki));
    }
    for (const auto& F : f) s.data.push_back(inverse_transform(F));
    const auto res = vandermonde_data_map(s);
    for (std::size_t j = 0; j < m; ++j) {
      const auto back = forward_transform(inverse_transform(res.g[j]));
      const double scale = c[j].coeffs.abs().maxCoeff();
      CHECK((res.g[j].coeffs - c[j].coeffs).abs().maxCoeff() < 1e-9 * scale);
      CHECK((back.coeffs - c[j].coeffs).abs().maxCoeff() < 1e-9 * scale);
    }
  }
}

TEST_CASE("wave equation closed form") {
  const auto g = grid1(64);
  const auto cosine = sample<double>(g, [](const Point<double>& x) { return C(std::cos(2 * kPi * x(0))); });
  const auto spec = problem(g, {constant_coefficient(1, 0), constant_coefficient(2, -1)}, {cosine, GridFunction<double>(g)});
  for (double t : {0.0, 0.13, 0.5, 1.7}) {
    const auto res = solve_cauchy(spec, t);
    CHECK(max_abs_diff(res.v, std::cos(2 * kPi * t) * cosine) < 1e-9);
    CHECK(res.report.method == "exact-spectral");
  }

  // General mean-free data: v̂ = f̂_0 cos ωt + f̂_1 sin(ωt)/ω, ω = 2π|k|.
  const auto f0 = mean_free(random_field(g, 1)), f1 = mean_free(random_field(g, 2));
  const auto general = problem(g, {constant_coefficient(1, 0), constant_coefficient(2, -1)}, {f0, f1});
  const double t = 0.77;
  const auto F0 = forward_transform(f0), F1 = forward_transform(f1);
  SpectralFunction<double> expect(g);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double w = 2 * kPi * std::abs(double(frequency_at(g, i)(0)));
    expect.coeffs(Eigen::Index(i)) =
        F0.coeffs(Eigen::Index(i)) * std::cos(w * t) + F1.coeffs(Eigen::Index(i)) * std::sin(w * t) / w;
  }
  CHECK(max_abs_diff(solve_cauchy(general, t).v, inverse_transform(expect)) < 1e-9);
}

TEST_CASE("per-mode ODE oracle for m <= 3") {
  const auto g = grid1(16);
  const std::vector<std::vector<C>> cases{
      {C(0.5, 0.2)},
      {C(-1, 0), C(1, 0.1)},
      {C(-1, 0.05), C(0.5, 0.0), C(1.5, 0.2)},
  };
  const double t = 0.6;
  for (const auto& speeds : cases) {
    std::vector<GridFunction<double>> data;
    for (std::size_t l = 0; l < speeds.size(); ++l) data.push_back(mean_free(random_field(g, 10 + l)));
    const auto spec = problem(g, from_speeds(speeds), data);
    const auto V = forward_transform(solve_cauchy(spec, t).v);
    std::vector<SpectralFunction<double>> F;
    for (const auto& f : data) F.push_back(forward_transform(f));
    for (std::size_t ki = 1; ki < g.size(); ++ki) {
      const Point<double> k = frequency_at(g, ki).cast<double>();
      std::vector<C> p, init;
      for (const auto& c : spec.coefficients) p.push_back(c(0, Point<double>::Zero(1), k));
      for (const auto& f : F) init.push_back(f.coeffs(Eigen::Index(ki)));
      const auto y = ode_mode(p, init, t);
      INFO("m=" << speeds.size() << " k=" << k(0));
      CHECK(std::abs(y[0] - V.coeffs(Eigen::Index(ki))) < 1e-8);
    }
  }
}

TEST_CASE("wave energy is conserved per mode") {
  const auto g = grid1(64);
  const auto spec = problem(g, {constant_coefficient(1, 0), constant_coefficient(2, -1)},
                            {mean_free(random_field(g, 5)), mean_free(random_field(g, 6))});
  auto energy = [&](double t) {
    const auto v = forward_transform(solve_cauchy(spec, t).v);
    const auto dv = forward_transform(solution_time_derivative(spec, t, 1));
    std::vector<double> e(g.size(), 0.0);
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double w = 2 * kPi * std::abs(double(frequency_at(g, i)(0)));
      e[i] = std::norm(v.coeffs(Eigen::Index(i))) + std::norm(dv.coeffs(Eigen::Index(i))) / (w * w);
    }
    return e;
  };
  const auto e0 = energy(0);
  for (double t : {0.1, 0.45, 1.3}) {
    const auto et = energy(t);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(et[i] - e0[i]) < 1e-9 * std::max(1.0, e0[i]));
  }
}

TEST_CASE("dissipative runs have non-increasing FL norms") {
  for (const GridSpec g : {grid1(64), grid2(16)}) {
    const auto spec = problem(g, from_speeds({C(1, 0.3)}, g.dim), {random_field(g, 3)});
    const auto two = problem(g, from_speeds({C(-1, 0.2), C(1, 0.1)}, g.dim),
                             {random_field(g, 4), random_field(g, 5)});
    for (double p : {1.0, 2.0, kInf})
      for (double alpha : {0.0, 1.0}) {
        double prev = fl_norm(spec.data[0], p, alpha).value;
        for (int i = 1; i <= 10; ++i) {
          const double now = fl_norm(solve_cauchy(spec, 0.1 * i).v, p, alpha).value;
          CHECK(now <= prev * (1 + 1e-12));
          prev = now;
        }
      }
    // Each factor contracts for m = 2.
    for (int i = 1; i <= 10; ++i)
      for (const auto& f : solve_cauchy(two, 0.1 * i).report.factors) CHECK(f.max_growth <= 1.0 + 1e-12);
  }
}

TEST_CASE("semigroup property") {
  const auto g = grid1(32);
  const auto spec = problem(g, from_speeds({C(-1, 0.1), C(0.5, 0), C(1, 0.2)}),
                            {mean_free(random_field(g, 1)), mean_free(random_field(g, 2)),
                             mean_free(random_field(g, 3))});
  const double t = 0.3, s = 0.45;
  auto later = spec;
  later.data.clear();
  for (int l = 0; l < 3; ++l) later.data.push_back(solution_time_derivative(spec, t, l));
  CHECK(max_abs_diff(solve_cauchy(later, s).v, solve_cauchy(spec, t + s).v) < 1e-8);
}

TEST_CASE("Cauchy data are reproduced at t = 0") {
  const auto g = grid1(32);
  std::vector<GridFunction<double>> data{mean_free(random_field(g, 1)), mean_free(random_field(g, 2)),
                                         mean_free(random_field(g, 3))};
  const auto spec = problem(g, from_speeds({C(-1, 0.1), C(0.5, 0), C(1, 0.2)}), data);
  CHECK(max_abs_diff(solve_cauchy(spec, 0).v, data[0]) < 1e-12);
  for (int l = 0; l < 3; ++l) CHECK(max_abs_diff(solution_time_derivative(spec, 0, l), data[std::size_t(l)]) < 1e-8 * std::pow(2 * kPi * 16, l));
}

TEST_CASE("zero mode fallback is flagged") {
  const auto g = grid1(16);
  GridFunction<double> one(g);
  one.values.setConstant(1.0);
  const auto spec = problem(g, {constant_coefficient(1, 0), constant_coefficient(2, -1)}, {one, one});
  const auto res = solve_cauchy(spec, 0.5);
  CHECK(res.report.zero_mode_fallback);
  CHECK(max_abs_diff(res.v, one) < 1e-14);
  const auto clean = problem(g, {constant_coefficient(1, 0), constant_coefficient(2, -1)}, {one, GridFunction<double>(g)});
  CHECK_FALSE(solve_cauchy(clean, 0.5).report.zero_mode_fallback);
}

TEST_CASE("variable coefficients") {
  const auto g = grid1(64);
  TrigPoly<double> speed = TrigPoly<double>::constant(C(-1, -0.05), 1);
  speed.terms.push_back({Frequency::Constant(1, 1), C(-0.1, 0.025)});
  speed.terms.push_back({Frequency::Constant(1, -1), C(-0.1, 0.025)});
  const auto f = sample<double>(g, [](const Point<double>& x) { return std::polar(1.0, 2 * kPi * 5 * x(0)); });
  auto spec = problem(g, {trig_coefficient(1, speed)}, {f}, 1.0);
  spec.steps_per_unit = 32;
  CHECK(spec.x_dependent());
  const auto zero = solve_cauchy(spec, 0);
  CHECK(max_abs_diff(zero.v, f) < 1e-12);
  const auto res = solve_cauchy(spec, 0.5, {{2.0, 0.0}});
  CHECK(res.report.method == "frozen-phase-fio");
  CHECK(res.report.min_root_imag >= 0.0);
  CHECK(res.report.norms.size() == 1);
  CHECK(std::isfinite(res.report.norms[0].ratio));

  // A constant coefficient routed through the variable path matches the exact path.
  auto flat = problem(g, from_speeds({C(-1, 0.2), C(1, 0.1)}), {mean_free(random_field(g, 1)), mean_free(random_field(g, 2))}, 1.0);
  const auto exact = solve_cauchy(flat, 0.4).v;
  for (auto& c : flat.coefficients) c.x_dependent = true;
  CHECK(rel_diff(solve_cauchy(flat, 0.4).v, exact) < 1e-9);
  // Time derivative by differences at t = 0 reproduces f_1 to O(h).
  const auto d1 = solution_time_derivative(flat, 0, 1, 1e-4);
  CHECK(rel_diff(d1, flat.data[1]) < 1e-2);
}

TEST_CASE("regularity report") {
  const auto g1 = grid1(32);
  const auto f = random_field(g1, 1);
  CHECK(regularity_report(f, {f}, 1.0, 0.0).alpha_threshold == doctest::Approx(0.5));
  const auto g2 = grid2(16);
  const auto h = random_field(g2, 2);
  const auto pq = regularity_report(h, {h}, 2.0, 0.0, 1.0);
  CHECK(pq.variant == "pq");
  CHECK(pq.alpha_threshold == doctest::Approx(2.0 + 1e-2));
  CHECK(pq.alpha_threshold > 2.0);
  const auto f1 = random_field(g1, 3);
  const auto rep = regularity_report(f, {f, f1}, 2.0, 0.5);
  CHECK(rep.alpha_threshold == 0.0);
  CHECK(rep.ratio == doctest::Approx(fl_norm(f, 2, 0.5).value / (fl_norm(f, 2, 0.5).value + fl_norm(f1, 2, -0.5).value)));
  RegularityOptions rank;
  rank.variant = AlphaVariant::Rank;
  rank.kappa = 1;
  const auto rr = regularity_report(h, {h}, 1.0, 0.0, {}, rank);
  CHECK(rr.alpha_threshold == doctest::Approx(0.5));
  CHECK(rr.alpha_p_dimension == doctest::Approx(1.0));
  CHECK_THROWS_AS(regularity_report(f, {f}, 0.5, 0.0), ValidationError);
  CHECK_THROWS_AS(regularity_report(f, {f}, 2.0, 0.0, 2.0), ValidationError);
}

TEST_CASE("solve_cauchy input checks") {
  const auto g = grid1(16);
  const auto spec = problem(g, {constant_coefficient(1, -1)}, {random_field(g, 1)}, 1.0);
  CHECK_THROWS_AS(solve_cauchy(spec, 1.5), ValidationError);
  CHECK_THROWS_AS(solve_cauchy(spec, -0.1), ValidationError);
  CHECK_THROWS_AS(solve_cauchy(spec, 0.5, {{0.5, 0.0}}), ValidationError);
  auto broken = spec;
  broken.data.clear();
  CHECK_THROWS_AS(solve_cauchy(broken, 0.5), ValidationError);
  const auto collide = problem(g, {constant_coefficient(1, -2), constant_coefficient(2, 1)},
                               {random_field(g, 1), random_field(g, 2)});
  CHECK_THROWS_AS(solve_cauchy(collide, 0.5), RootCollision);
}
