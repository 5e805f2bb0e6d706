#include "hypfl/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace hypfl {

namespace {

constexpr char kMagic[4] = {'G', 'F', 'N', '1'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(char((v >> (8 * b)) & 0xffu));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int b = 0; b < 8; ++b) out.push_back(char((bits >> (8 * b)) & 0xffu));
}

std::uint64_t get_le(const std::string& in, std::size_t pos, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v |= std::uint64_t(static_cast<unsigned char>(in[pos + std::size_t(b)])) << (8 * b);
  return v;
}

double get_f64(const std::string& in, std::size_t pos) {
  const std::uint64_t bits = get_le(in, pos, 8);
  double v;
  std::memcpy(&v, &bits, sizeof v);
  return v;
}

Complex<double> complex_from_json(const Json& j, const std::string& context) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ValidationError(context + ": expected a number or [re, im]");
}

Json complex_json(Complex<double> c) { return Json::array({c.real(), c.imag()}); }

template <typename T>
T get_as(const Json& obj, const std::string& key, const std::string& context) {
  if (!obj.contains(key)) throw ValidationError(context + ": missing key '" + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(context + ": key '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_or(const Json& obj, const std::string& key, T fallback, const std::string& context) {
  return obj.contains(key) ? get_as<T>(obj, key, context) : fallback;
}

Json parse_json(const std::string& text, const std::string& context) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(context + ": " + e.what());
  }
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string encode_gfn(const GridFunction<double>& f) {
  f.grid.validate();
  std::string out(kMagic, 4);
  out.reserve(8 + 4 * std::size_t(f.grid.dim) + 16 * f.grid.size());
  put_u32(out, std::uint32_t(f.grid.dim));
  for (int i = 0; i < f.grid.dim; ++i) put_u32(out, std::uint32_t(f.grid.n));
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    put_f64(out, f.values(i).real());
    put_f64(out, f.values(i).imag());
  }
  return out;
}

GridFunction<double> decode_gfn(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) throw BadMagic("missing GFN1 magic bytes");
  if (bytes.size() < 8) throw TruncatedPayload("header ends before the dimension field");
  const std::uint64_t d = get_le(bytes, 4, 4);
  if (d != 1 && d != 2) throw UnsupportedDimension("GFN1 dimension " + std::to_string(d) + " is not 1 or 2");
  const std::size_t header = 8 + 4 * std::size_t(d);
  if (bytes.size() < header) throw TruncatedPayload("header ends before the axis sizes");
  const std::uint64_t n = get_le(bytes, 8, 4);
  for (std::size_t i = 1; i < d; ++i)
    if (get_le(bytes, 8 + 4 * i, 4) != n) throw InvalidGridSize("axis sizes differ; only cubic grids are supported");
  if (n < 8 || !is_power_of_two(std::int64_t(n)))
    throw InvalidGridSize("axis size " + std::to_string(n) + " is not a power of two >= 8");
  const GridSpec g{int(d), int(n)};
  const std::size_t expected = header + 16 * g.size();
  if (bytes.size() < expected)
    throw TruncatedPayload("expected " + std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  if (bytes.size() > expected)
    throw TrailingData("expected " + std::to_string(expected) + " bytes, got " + std::to_string(bytes.size()));
  GridFunction<double> f(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    f.values(Eigen::Index(i)) = {get_f64(bytes, header + 16 * i), get_f64(bytes, header + 16 * i + 8)};
  return f;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("FileNotFound", "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("FileNotWritable", "cannot write " + path.string());
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw ValidationError("FileNotWritable", "short write to " + path.string());
}

GridFunction<double> read_gfn(const std::filesystem::path& path) {
  try {
    return decode_gfn(read_text(path));
  } catch (const Error& e) {
    throw ValidationError(e.name(), path.string() + ": " + e.what());
  }
}

void write_gfn(const std::filesystem::path& path, const GridFunction<double>& f) { write_text(path, encode_gfn(f)); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& context) {
  if (!obj.is_object()) throw ValidationError(context + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ValidationError("UnknownKey", context + ": unknown key '" + key + "'");
  }
}

Json exponent_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return kInf;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (...) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ValidationError("cannot parse exponent '" + text + "'");
  return v;
}

double exponent_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_exponent(j.get<std::string>());
  throw ValidationError("exponent must be a number or \"inf\"");
}

TolerancePolicy tolerance_profile(const std::string& name) {
  TolerancePolicy t;
  if (name == "default") return t;
  if (name == "strict") {
    t.name = "strict";
    t.gap_delta = 1e-2;
    t.imag_tolerance = 1e-12;
    t.alpha_margin = 1e-3;
    t.steps_factor = 2.0;
    t.rule.max_residual = 0.05;
    return t;
  }
  throw ValidationError("unknown tolerance profile '" + name + "' (strict|default)");
}

Json to_json(const TolerancePolicy& t) {
  return Json{{"name", t.name},
              {"gap_delta", t.gap_delta},
              {"imag_tolerance", t.imag_tolerance},
              {"alpha_margin", t.alpha_margin},
              {"steps_factor", t.steps_factor},
              {"verdict_rule",
               {{"bounded_max_slope", t.rule.bounded_max_slope},
                {"growth_min_slope", t.rule.growth_min_slope},
                {"max_residual", t.rule.max_residual}}}};
}

Json to_json(const RunConfig& c) {
  return Json{{"command", c.command}, {"params", c.params},         {"inputs", c.inputs},
              {"outputs", c.outputs}, {"seed", c.seed},             {"tolerance_profile", c.tolerance_profile}};
}

TrigPoly<double> trig_poly_from_json(const Json& j, int dim) {
  const std::string ctx = "trigonometric polynomial";
  if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number()))
    return TrigPoly<double>::constant(complex_from_json(j, ctx), dim);
  if (!j.is_array()) throw ValidationError(ctx + ": expected a list of {k, c} terms");
  TrigPoly<double> p;
  for (const auto& term : j) {
    require_keys(term, {"k", "c"}, ctx + " term");
    Frequency k = Frequency::Zero(dim);
    const Json& kj = term.contains("k") ? term.at("k") : Json(0);
    if (kj.is_number_integer() && dim == 1) {
      k(0) = kj.get<int>();
    } else if (kj.is_array() && int(kj.size()) == dim) {
      for (int i = 0; i < dim; ++i) {
        if (!kj[std::size_t(i)].is_number_integer()) throw ValidationError(ctx + ": k must be integers");
        k(i) = kj[std::size_t(i)].get<int>();
      }
    } else {
      throw ValidationError(ctx + ": k must have " + std::to_string(dim) + " integer entries");
    }
    if (!term.contains("c")) throw ValidationError(ctx + ": term without 'c'");
    p.terms.push_back({k, complex_from_json(term.at("c"), ctx)});
  }
  return p;
}

Json to_json(const TrigPoly<double>& p) {
  Json out = Json::array();
  for (const auto& t : p.terms) {
    Json k = Json::array();
    for (Eigen::Index i = 0; i < t.k.size(); ++i) k.push_back(t.k(i));
    out.push_back({{"k", k}, {"c", complex_json(t.c)}});
  }
  return out;
}

PhasePtr<double> phase_from_json(const std::string& id, const Json& params, int default_dim) {
  const Json p = params.is_null() ? Json::object() : params;
  const std::string ctx = "phase '" + id + "'";
  const int d = get_or<int>(p, "d", default_dim, ctx);
  if (d != 1 && d != 2) throw ValidationError("UnsupportedDimension", ctx + ": d must be 1 or 2");
  if (id == "identity") {
    require_keys(p, {"d"}, ctx);
    return identity_phase<double>(d);
  }
  if (id == "torus-diffeo") {
    require_keys(p, {"d", "epsilon"}, ctx);
    if (d != 1) throw ValidationError(ctx + ": defined for d = 1 only");
    const double eps = get_as<double>(p, "epsilon", ctx);
    if (!(std::abs(2 * kPi * eps) < 1)) throw ValidationError(ctx + ": requires |2 pi epsilon| < 1");
    return torus_diffeo_phase<double>(eps);
  }
  if (id == "half-wave") {
    require_keys(p, {"d", "t"}, ctx);
    return half_wave_phase<double>(d, get_as<double>(p, "t", ctx));
  }
  if (id == "dissipative") {
    require_keys(p, {"d", "t", "c", "gamma", "tau"}, ctx);
    const double t = get_as<double>(p, "t", ctx);
    if (t < 0) throw ValidationError(ctx + ": t must be >= 0");
    const TrigPoly<double> gamma = p.contains("gamma") ? trig_poly_from_json(p.at("gamma"), d)
                                                       : TrigPoly<double>::constant(0.0, d);
    return dissipative_phase<double>(d, t, get_or<double>(p, "c", 1.0, ctx), gamma, get_or<double>(p, "tau", 0.0, ctx));
  }
  throw ValidationError("unknown catalogue phase '" + id + "' (identity|torus-diffeo|half-wave|dissipative)");
}

SymbolSpec<double> symbol_from_json(const Json& j) {
  const std::string ctx = "symbol";
  const std::string kind = get_as<std::string>(j, "kind", ctx);
  if (kind == "bessel") {
    require_keys(j, {"kind", "order"}, ctx);
    return bessel_symbol<double>(get_as<double>(j, "order", ctx));
  }
  if (kind == "constant") {
    require_keys(j, {"kind", "value"}, ctx);
    return constant_symbol<double>(j.contains("value") ? complex_from_json(j.at("value"), ctx) : Complex<double>(1));
  }
  throw ValidationError("unknown symbol kind '" + kind + "' (bessel|constant)");
}

HyperbolicProblemSpec problem_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const std::string ctx = "problem";
  require_keys(j, {"order", "coefficients", "grid", "T", "data_files", "steps_per_unit", "kappa", "gap_delta",
                   "imag_tolerance"},
               ctx);
  HyperbolicProblemSpec s;
  s.order = get_as<int>(j, "order", ctx);
  if (s.order < 1) throw ValidationError(ctx + ": order must be >= 1");
  const Json grid = get_as<Json>(j, "grid", ctx);
  require_keys(grid, {"d", "n"}, "problem grid");
  s.grid = {get_as<int>(grid, "d", "problem grid"), get_as<int>(grid, "n", "problem grid")};
  s.grid.validate();
  s.horizon = get_as<double>(j, "T", ctx);
  s.steps_per_unit = get_or<int>(j, "steps_per_unit", s.steps_per_unit, ctx);
  s.kappa = get_or<int>(j, "kappa", s.kappa, ctx);
  s.gap_delta = get_or<double>(j, "gap_delta", s.gap_delta, ctx);
  s.imag_tolerance = get_or<double>(j, "imag_tolerance", s.imag_tolerance, ctx);

  const Json coeffs = get_as<Json>(j, "coefficients", ctx);
  if (!coeffs.is_array()) throw ValidationError(ctx + ": coefficients must be a list");
  std::vector<std::optional<Coefficient>> slots(std::size_t(s.order));
  for (const auto& c : coeffs) {
    const std::string cctx = "coefficient";
    require_keys(c, {"j", "kind", "data"}, cctx);
    const int idx = get_as<int>(c, "j", cctx);
    if (idx < 1 || idx > s.order) throw ValidationError(cctx + ": j must lie in 1.." + std::to_string(s.order));
    if (slots[std::size_t(idx - 1)]) throw ValidationError(cctx + ": j = " + std::to_string(idx) + " given twice");
    const std::string kind = get_as<std::string>(c, "kind", cctx);
    if (!c.contains("data")) throw ValidationError(cctx + ": missing key 'data'");
    TrigPoly<double> a;
    if (kind == "const") {
      a = TrigPoly<double>::constant(complex_from_json(c.at("data"), cctx), s.grid.dim);
    } else if (kind == "trigpoly") {
      a = trig_poly_from_json(c.at("data"), s.grid.dim);
    } else {
      throw ValidationError(cctx + ": kind must be const or trigpoly");
    }
    slots[std::size_t(idx - 1)] = trig_coefficient(idx, std::move(a));
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ValidationError(ctx + ": coefficient j = " + std::to_string(i + 1) + " missing");
    s.coefficients.push_back(*slots[i]);
  }

  const Json files = get_as<Json>(j, "data_files", ctx);
  if (!files.is_array() || int(files.size()) != s.order)
    throw ValidationError(ctx + ": data_files must list " + std::to_string(s.order) + " files");
  for (const auto& f : files) {
    if (!f.is_string()) throw ValidationError(ctx + ": data file names must be strings");
    std::filesystem::path path(f.get<std::string>());
    if (path.is_relative()) path = base_dir / path;
    s.data.push_back(read_gfn(path));
  }
  s.validate();
  return s;
}

HyperbolicProblemSpec read_problem(const std::filesystem::path& path) {
  return problem_from_json(parse_json(read_text(path), path.string()), path.parent_path());
}

Json to_json(const GridSpec& g) { return Json{{"d", g.dim}, {"n", g.n}}; }

Json to_json(const NormResult& r) {
  Json j{{"space", to_string(r.space)}, {"p", exponent_json(r.p)}};
  if (r.space != SpaceTag::FourierLebesgue) j["q"] = exponent_json(r.q);
  j["s"] = r.s;
  j["grid"] = to_json(r.grid);
  j["value"] = nullable(r.value);
  return j;
}

Json to_json(const PredicateResult& r) {
  return Json{{"holds", r.holds}, {"decided_by", r.decided_by}, {"clauses", r.clauses}};
}

Json to_json(const PhaseReport& r) {
  return Json{{"id", r.id},
              {"samples", r.samples},
              {"min_imag", r.min_imag},
              {"max_homogeneity_residual", r.max_homogeneity_residual},
              {"min_gradient_norm", r.min_gradient_norm},
              {"min_eta_gradient_norm", r.min_eta_gradient_norm},
              {"min_abs_det", r.min_abs_det},
              {"max_periodicity_defect", r.max_periodicity_defect},
              {"pass", r.pass},
              {"violation", r.violation}};
}

Json to_json(const RegularityReport& r) {
  return Json{{"variant", r.variant},
              {"p", exponent_json(r.p)},
              {"q", exponent_json(r.q)},
              {"alpha", r.alpha},
              {"alpha_threshold", r.alpha_threshold},
              {"alpha_p_dimension", r.alpha_p_dimension},
              {"alpha_p_rank", r.alpha_p_rank},
              {"solution_norm", nullable(r.solution_norm)},
              {"data_norm", nullable(r.data_norm)},
              {"ratio", nullable(r.ratio)},
              {"within_budget", r.within_budget}};
}

Json to_json(const SolveReport& r) {
  Json factors = Json::array();
  for (const auto& f : r.factors)
    factors.push_back({{"index", f.index}, {"max_growth", f.max_growth}, {"min_imag", f.min_imag}});
  Json norms = Json::array();
  for (const auto& n : r.norms) norms.push_back(to_json(n));
  return Json{{"t", r.t},
              {"method", r.method},
              {"steps", r.steps},
              {"min_root_gap", nullable(r.min_root_gap)},
              {"min_root_imag", nullable(r.min_root_imag)},
              {"zero_mode_fallback", r.zero_mode_fallback},
              {"factors", factors},
              {"norms", norms},
              {"alpha_note",
               "alpha_p_dimension uses d|1/p-1/2|, alpha_p_rank uses kappa|1/p-1/2|; the two statements of the "
               "regularity threshold differ and alpha_threshold follows the selected variant"}};
}

Json to_json(const ScanReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"label", row.label}, {"parameter", row.parameter}, {"scale", row.scale}, {"ratio", row.ratio}});
  Json fits = Json::array();
  for (const auto& f : r.fits) {
    Json j{{"label", f.label},
           {"parameter", f.parameter},
           {"slope", f.fit.slope},
           {"intercept", f.fit.intercept},
           {"residual", nullable(f.fit.residual)},
           {"verdict", to_string(f.verdict)},
           {"expected", f.expected ? Json(to_string(*f.expected)) : Json(nullptr)}};
    if (!f.note.empty()) j["note"] = f.note;
    fits.push_back(j);
  }
  Json j{{"kind", r.kind},
         {"family", r.family},
         {"ladder", r.ladder},
         {"seed", r.seed},
         {"rule",
          {{"bounded_max_slope", r.rule.bounded_max_slope},
           {"growth_min_slope", r.rule.growth_min_slope},
           {"max_residual", r.rule.max_residual}}},
         {"rows", rows},
         {"fits", fits},
         {"all_expected_met", r.all_expected_met()}};
  if (r.kind == "opnorm" || r.kind == "threshold")
    j["ratio_meaning"] = "max over unit-normalized family members; a lower bound on the operator norm";
  return j;
}

std::string scan_csv(const ScanReport& r) {
  auto shortest = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  std::string out = "label,parameter,scale,ratio\n";
  for (const auto& row : r.rows)
    out += '"' + row.label + "\"," + shortest(row.parameter) + ',' + std::to_string(row.scale) + ',' +
           shortest(row.ratio) + '\n';
  return out;
}

}  // namespace hypfl
