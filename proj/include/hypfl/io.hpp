#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypfl/function_spaces.hpp"
#include "hypfl/hyperbolic.hpp"
#include "hypfl/phases.hpp"
#include "hypfl/predicates.hpp"
#include "hypfl/probe.hpp"
#include "hypfl/symbols.hpp"

namespace hypfl {

// Insertion-ordered, so dumps are stable byte for byte.
using Json = nlohmann::ordered_json;

// GFN1: "GFN1", u32 d, d x u32 n, n^d pairs of f64 (re, im); all little-endian, row-major.
std::string encode_gfn(const GridFunction<double>& f);
GridFunction<double> decode_gfn(const std::string& bytes);
GridFunction<double> read_gfn(const std::filesystem::path& path);
void write_gfn(const std::filesystem::path& path, const GridFunction<double>& f);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Two-space indent plus trailing newline.
std::string dump(const Json& j);

/// Throws ValidationError naming the first key of `obj` not in `allowed`.
void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& context);

/// Exponents as JSON: numbers, or the string "inf".
Json exponent_json(double p);
double exponent_from_json(const Json& j);
double parse_exponent(const std::string& text);

/// Named tolerance sets behind --tolerance-profile.
struct TolerancePolicy {
  std::string name = "default";
  double gap_delta = 1e-3;
  double imag_tolerance = 1e-9;
  double alpha_margin = 1e-2;
  double steps_factor = 1.0;  // multiplies steps_per_unit
  VerdictRule rule;
};

TolerancePolicy tolerance_profile(const std::string& name);
Json to_json(const TolerancePolicy& t);

/// Resolved invocation, embedded in every report.
struct RunConfig {
  std::string command;
  Json params = Json::object();
  std::vector<std::string> inputs, outputs;
  std::uint64_t seed = 0;
  std::string tolerance_profile = "default";
};

Json to_json(const RunConfig& c);

/// [{"k": [k1, ...], "c": [re, im] | re}, ...]; k may be a bare integer when d = 1.
TrigPoly<double> trig_poly_from_json(const Json& j, int dim);
Json to_json(const TrigPoly<double>& p);

/// Catalogue phase from its id and parameters (d, epsilon, t, c, gamma, tau as applicable).
PhasePtr<double> phase_from_json(const std::string& id, const Json& params, int default_dim);

/// {"kind": "bessel", "order": m} or {"kind": "constant", "value": c}.
SymbolSpec<double> symbol_from_json(const Json& j);

/// Problem file; data_files resolve against base_dir.
HyperbolicProblemSpec problem_from_json(const Json& j, const std::filesystem::path& base_dir);
HyperbolicProblemSpec read_problem(const std::filesystem::path& path);

Json to_json(const GridSpec& g);
Json to_json(const NormResult& r);
Json to_json(const PredicateResult& r);
Json to_json(const PhaseReport& r);
Json to_json(const RegularityReport& r);
Json to_json(const SolveReport& r);
Json to_json(const ScanReport& r);

/// label,parameter,scale,ratio
std::string scan_csv(const ScanReport& r);

}  // namespace hypfl
