#include <cmath>

#include "doctest.h"
#include "embedding_fixtures.hpp"
#include "hypfl/phases.hpp"
#include "hypfl/predicates.hpp"
#include "hypfl/probe.hpp"
#include "support.hpp"

using namespace hypfl;
using namespace hypfl::testing;
using C = Complex<double>;

namespace {

FioSpec<double> plain(PhasePtr<double> phase, double m = 0) { return make_fio(std::move(phase), bessel_symbol<double>(m)); }

const ScanFit& fit_at(const ScanReport& r, double parameter) {
  for (const auto& f : r.fits)
    if (std::abs(f.parameter - parameter) < 1e-12) return f;
  throw std::runtime_error("no fit at parameter");
}

HyperbolicProblemSpec damped_transport() {
  TrigPoly<double> a = TrigPoly<double>::constant(C(-1, -0.002), 1);
  a.terms.push_back({freq(1), C(-0.1, 0.001)});
  a.terms.push_back({freq(-1), C(-0.1, 0.001)});
  HyperbolicProblemSpec s;
  s.coefficients = {trig_coefficient(1, a)};
  s.grid = {1, 256};
  s.data = {GridFunction<double>(s.grid)};
  return s;
}

}  // namespace

TEST_CASE("families are deterministic and band-limited") {
  for (auto kind : {FamilyKind::SingleMode, FamilyKind::DyadicBump, FamilyKind::Lacunary, FamilyKind::Rademacher}) {
    const auto fam = default_family(kind, 1, 11);
    for (int N : fam.ladder) {
      const auto a = family_members(fam, N), b = family_members(fam, N);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i].values == b[i].values).all());
      for (const auto& f : a) {
        const auto F = forward_transform(f);
        for (std::size_t i = 0; i < F.grid.size(); ++i)
          if (std::abs(F.coeffs(Eigen::Index(i))) > 1e-12) CHECK(4 * frequency_at(F.grid, i).cwiseAbs().maxCoeff() <= 256);
      }
    }
  }
  const auto knapp = default_family(FamilyKind::Knapp, 2);
  CHECK(family_members(knapp, 16).size() == 1);

  auto r1 = default_family(FamilyKind::Rademacher, 1, 1), r2 = default_family(FamilyKind::Rademacher, 1, 2);
  CHECK(family_members(r1, 16).size() == 4);
  CHECK(!(family_members(r1, 16)[0].values == family_members(r2, 16)[0].values).all());
  CHECK(!(family_members(r1, 16)[0].values == family_members(r1, 16)[1].values).all());

  CHECK(parse_family("rademacher-random") == FamilyKind::Rademacher);
  CHECK_THROWS_AS(parse_family("gauss"), ValidationError);
}

TEST_CASE("headroom and dimension checks") {
  auto fam = default_family(FamilyKind::SingleMode, 1);
  CHECK_NOTHROW(family_members(fam, 64));
  CHECK_THROWS_AS(family_members(fam, 65), NyquistHeadroom);
  fam.kind = FamilyKind::Knapp;
  CHECK_THROWS_AS(family_members(fam, 8), ValidationError);
  CHECK_THROWS_AS(threshold_scan(torus_diffeo_phase<double>(0.1), 1, {0.0}, default_family(FamilyKind::SingleMode, 2)),
                  GridMismatch);
}

TEST_CASE("log-log fit and verdicts") {
  const std::vector<double> x{8, 16, 32, 64};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * std::sqrt(v));
  const auto f = fit_log_log(x, y);
  CHECK(f.slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK(classify(f, {}) == Verdict::Growth);
  CHECK(classify({0.05, 0, 0}, {}) == Verdict::Bounded);
  CHECK(classify({0.06, 0, 0}, {}) == Verdict::Inconclusive);
  CHECK(classify({-1, 0, 0.1}, {}) == Verdict::Inconclusive);
  CHECK(fit_log_log(x, {1, 2, 0, 4}).residual == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(fit_log_log({1}, {1}), ValidationError);
}

TEST_CASE("operator norm estimates") {
  const auto g = default_family(FamilyKind::DyadicBump, 1);
  CHECK(estimate_operator_norm(plain(identity_phase<double>(1)), 2, 2, g).value == doctest::Approx(1).epsilon(1e-10));
  for (auto kind : {FamilyKind::SingleMode, FamilyKind::Lacunary, FamilyKind::Rademacher})
    for (double p : {1.0, 2.0, kInf}) {
      const auto e = estimate_operator_norm(plain(half_wave_phase<double>(1, 0.3)), p, p, default_family(kind, 1, 5));
      CHECK(std::abs(e.value - 1) < 1e-10);
    }

  const auto lac = default_family(FamilyKind::Lacunary, 1);
  const auto T = plain(torus_diffeo_phase<double>(0.1));
  double prev = 1.0;
  for (int N : lac.ladder) {
    const double v = estimate_operator_norm(T, 1, 1, lac, N).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("threshold scans") {
  const auto fam = default_family(FamilyKind::SingleMode, 1);
  const auto id = threshold_scan(identity_phase<double>(1), 1, {-1.0, -0.5, 0.0}, fam);
  for (const auto& f : id.fits) {
    CHECK(f.verdict == Verdict::Bounded);
    if (f.parameter < 0) CHECK(f.expected == Verdict::Bounded);
  }
  CHECK(!fit_at(id, 0.0).expected);  // threshold-exact for κ = 0
  CHECK(id.rows.size() == 12);

  CHECK(fit_at(threshold_scan(torus_diffeo_phase<double>(0.1), 2, {0.0}, fam), 0).verdict == Verdict::Bounded);

  const auto r = threshold_scan(torus_diffeo_phase<double>(0.1), 1, {-0.7, -0.5, -0.4, -0.3}, fam);
  CHECK(fit_at(r, -0.3).verdict == Verdict::Growth);
  CHECK(fit_at(r, -0.7).verdict == Verdict::Bounded);
  CHECK(!fit_at(r, -0.4).expected);  // exactly threshold + 0.1: recorded only
  CHECK(!fit_at(r, -0.5).expected);
  CHECK(fit_at(r, -0.3).fit.slope == doctest::Approx(0.2).epsilon(0.5));
  CHECK(r.all_expected_met());
}

TEST_CASE("embedding sweeps on the regression list") {
  for (const auto& fx : embedding_fixtures()) {
    const auto pred = fx.space == EmbeddingSpace::Besov ? besov_embeds_fl(fx.tuple) : triebel_embeds_fl(fx.tuple);
    REQUIRE(pred.holds == fx.holds);
    const auto r = embedding_ratio_sweep(fx.space, fx.tuple, default_family(FamilyKind::DyadicBump, fx.tuple.d));
    const auto& f = r.fits.front();
    CAPTURE(f.label);
    CHECK(f.fit.residual < 0.1);
    REQUIRE(f.expected);
    CHECK(f.verdict == *f.expected);
    CHECK(f.verdict == (fx.holds ? Verdict::Bounded : Verdict::Growth));
  }
}

TEST_CASE("embedding sweep corner cases") {
  // One nonzero block: the ratio is the same constant at every scale.
  const auto sm = default_family(FamilyKind::SingleMode, 1);
  const auto r = embedding_ratio_sweep(EmbeddingSpace::Besov, tuple(1, 1, 1, 0, 1), sm);
  for (const auto& row : r.rows) CHECK(row.ratio == doctest::Approx(r.rows.front().ratio).epsilon(1e-10));
  CHECK(r.fits.front().verdict == Verdict::Bounded);

  const auto lac = embedding_ratio_sweep(EmbeddingSpace::Besov, tuple(2, 2, 2, 0, 1), default_family(FamilyKind::Lacunary, 1));
  CHECK(lac.fits.front().verdict == Verdict::Bounded);

  // p > 2 fails at the gate only.
  const auto gate = embedding_ratio_sweep(EmbeddingSpace::Besov, tuple(4, 2, 2, 1, 1), default_family(FamilyKind::DyadicBump, 1));
  CHECK(!gate.fits.front().expected);
  CHECK(!gate.fits.front().note.empty());
}

TEST_CASE("regularity sweep, damped variable transport") {
  const auto s = damped_transport();
  for (auto kind : {FamilyKind::SingleMode, FamilyKind::DyadicBump}) {
    const auto r = regularity_sweep(s, 0.5, 2, 0, default_family(kind, 1));
    for (const auto& row : r.rows) CHECK(row.ratio <= 10);
    CHECK(r.fits.front().fit.residual < 0.1);
    CHECK(r.fits.front().verdict == Verdict::Bounded);
  }
}

TEST_CASE("reports are reproducible") {
  const auto fam = default_family(FamilyKind::Rademacher, 1, 42);
  const auto T = plain(torus_diffeo_phase<double>(0.1), -0.5);
  const auto a = opnorm_scan(T, 1, 1, fam), b = opnorm_scan(T, 1, 1, fam);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].ratio == b.rows[i].ratio);
  CHECK(a.fits.front().fit.slope == b.fits.front().fit.slope);
  CHECK(a.seed == 42);
}
