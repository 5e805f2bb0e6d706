#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypfl/fio.hpp"
#include "hypfl/hyperbolic.hpp"

namespace hypfl {

enum class FamilyKind { SingleMode, DyadicBump, Lacunary, Knapp, Rademacher };

std::string to_string(FamilyKind k);
FamilyKind parse_family(const std::string& id);

/// Deterministic probe functions at frequency scales N (the ladder).
struct TestFamily {
  FamilyKind kind = FamilyKind::SingleMode;
  GridSpec grid{1, 256};
  std::vector<int> ladder{8, 16, 32, 64};
  std::uint64_t seed = 0;
  int draws = 4;  // members per scale for the random family
};

/// Ladder 2^3..2^6 on n = 256 in d = 1, 2^2..2^4 on n = 64 in d = 2.
TestFamily default_family(FamilyKind kind, int dim, std::uint64_t seed = 0);

/// Members at scale N. Throws NyquistHeadroom when some member has max_i |k_i| > n/4.
std::vector<GridFunction<double>> family_members(const TestFamily& fam, int scale);

enum class Verdict { Bounded, Growth, Inconclusive };
std::string to_string(Verdict v);

/// Slope classification of ln(ratio) against ln(scale).
struct VerdictRule {
  double bounded_max_slope = 0.05;
  double growth_min_slope = 0.08;
  double max_residual = 0.1;
};

struct LogFit {
  double slope = 0.0, intercept = 0.0, residual = 0.0;
};

/// Least squares on (ln x, ln y); residual is the RMS deviation in log scale.
LogFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);
Verdict classify(const LogFit& fit, const VerdictRule& rule);

struct ScanRow {
  std::string label;
  double parameter = 0.0;
  int scale = 0;
  double ratio = 0.0;
};

struct ScanFit {
  std::string label;
  double parameter = 0.0;
  LogFit fit;
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Verdict> expected;  // absent: recorded only
  std::string note;
};

struct ScanReport {
  std::string kind;  // threshold, embedding, opnorm, regularity
  std::string family;
  std::vector<int> ladder;
  std::uint64_t seed = 0;
  VerdictRule rule;
  std::vector<ScanRow> rows;
  std::vector<ScanFit> fits;

  bool all_expected_met() const;
};

struct OpNormEstimate {
  double value = 0.0;  // lower bound on the true norm
  int scale = 0;
  int member = 0;
};

/// max over members of fl_norm(Tf, q, 0) / fl_norm(f, p, 0), at one scale or over the ladder.
OpNormEstimate estimate_operator_norm(const FioSpec<double>& T, double p, double q, const TestFamily& fam, int scale);
OpNormEstimate estimate_operator_norm(const FioSpec<double>& T, double p, double q, const TestFamily& fam);

/// Operator-norm ladder for σ = ⟨k⟩^m, m over m_grid, p = q. Expected verdicts:
/// bounded for m < threshold, growth for m > threshold + 0.1; m = threshold is recorded only.
ScanReport threshold_scan(const PhasePtr<double>& phase, double p, const std::vector<double>& m_grid,
                          const TestFamily& fam, const VerdictRule& rule = {});

/// Opnorm ladder of one operator, p -> q.
ScanReport opnorm_scan(const FioSpec<double>& T, double p, double q, const TestFamily& fam,
                       const VerdictRule& rule = {});

enum class EmbeddingSpace { Besov, Triebel };

/// fl_norm(f, r, 0) / space_norm(f, p, q, s) along the ladder. Expected bounded when the
/// predicate holds, growth when it fails by a smoothness deficit >= 0.1.
ScanReport embedding_ratio_sweep(EmbeddingSpace which, const IndexTuple& t, const TestFamily& fam,
                                 const VerdictRule& rule = {});

/// Regularity ratio of solve_cauchy(spec with f_0 = member, other data 0) at time t along the
/// ladder. Expected bounded.
ScanReport regularity_sweep(const HyperbolicProblemSpec& spec, double t, double p, double alpha,
                            const TestFamily& fam, const RegularityOptions& opt = {},
                            const VerdictRule& rule = {});

}  // namespace hypfl
