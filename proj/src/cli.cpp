#include "hypfl/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <sstream>

#include "hypfl/io.hpp"
#include "hypfl/littlewood_paley.hpp"

namespace hypfl {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) {
    try {
      out.push_back(parse_exponent(s));
    } catch (const ValidationError&) {
      throw ValidationError("cannot parse " + what + " entry '" + s + "'");
    }
  }
  if (out.empty()) throw ValidationError(what + " is empty");
  return out;
}

std::vector<int> parse_ladder(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_list(text, "ladder")) {
    if (v < 1 || v != std::floor(v)) throw ValidationError("ladder scales must be positive integers");
    out.push_back(int(v));
  }
  if (out.size() < 2) throw ValidationError("ladder needs at least two scales");
  return out;
}

// "1:0.5,2:0,inf:1"
std::vector<NormRequest> parse_norms(const std::string& text) {
  std::vector<NormRequest> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ValidationError("norm request '" + item + "' is not p:alpha");
    out.push_back({parse_exponent(parts[0]), parse_exponent(parts[1])});
  }
  return out;
}

Json load_json_file(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

Rational rational_arg(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse --" + name + " '" + text + "'");
  }
}

ExtendedIndex index_arg(const std::string& text, const std::string& name) {
  try {
    return ExtendedIndex::parse(text);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse --" + name + " '" + text + "'");
  }
}

void emit(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << dump(j);
  else
    write_text(path, dump(j));
}

Json with_config(const RunConfig& cfg, const std::string& key, Json body) {
  return Json{{"config", to_json(cfg)}, {key, std::move(body)}};
}

struct Globals {
  std::string tolerance = "default";
};

// Family options shared by the probe subcommands.
struct FamilyArgs {
  std::string family = "single-mode";
  std::string ladder;
  int n = 0;
  int draws = 4;
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--family", family, "single-mode|dyadic-bump|lacunary|knapp|rademacher");
    app->add_option("--ladder", ladder, "comma-separated scales");
    app->add_option("--n", n, "grid points per axis");
    app->add_option("--draws", draws, "members per scale (rademacher)");
    app->add_option("--seed", seed);
  }

  TestFamily resolve(int dim) const {
    TestFamily fam = default_family(parse_family(family), dim, seed);
    if (n > 0) fam.grid.n = n;
    if (!ladder.empty()) fam.ladder = parse_ladder(ladder);
    if (draws < 1) throw ValidationError("--draws must be >= 1");
    fam.draws = draws;
    fam.grid.validate();
    return fam;
  }

  void record(Json& params, const TestFamily& fam) const {
    params["family"] = to_string(fam.kind);
    params["grid"] = to_json(fam.grid);
    params["ladder"] = fam.ladder;
    if (fam.kind == FamilyKind::Rademacher) params["draws"] = fam.draws;
  }
};

void write_scan(const ScanReport& rep, const RunConfig& cfg, const std::string& report, const std::string& csv,
                std::ostream& out) {
  if (!csv.empty()) write_text(csv, scan_csv(rep));
  emit(with_config(cfg, "report", to_json(rep)), report, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hypfl: Fourier-Lebesgue analysis of Fourier integral operators and hyperbolic problems"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tolerance-profile", g.tolerance, "strict|default")->check(CLI::IsMember({"strict", "default"}));

  std::function<void()> action;
  auto with_profile = [&](RunConfig& cfg) {
    cfg.tolerance_profile = g.tolerance;
    return tolerance_profile(g.tolerance);
  };

  // gen
  auto* gen = app.add_subcommand("gen", "write a test-family member as .gfn");
  std::string gen_kind = "single-mode", gen_out;
  int gen_k = 1, gen_n = 64, gen_d = 1, gen_draw = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind)->required();
  gen->add_option("--k", gen_k, "frequency scale N")->required();
  gen->add_option("--n", gen_n);
  gen->add_option("--d", gen_d);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--draw", gen_draw, "member index (rademacher)");
  gen->add_option("--out", gen_out)->required();
  gen->callback([&] {
    action = [&] {
      RunConfig cfg{"gen", {}, {}, {gen_out}, gen_seed, g.tolerance};
      TestFamily fam;
      fam.kind = parse_family(gen_kind);
      fam.grid = {gen_d, gen_n};
      fam.seed = gen_seed;
      fam.draws = gen_draw + 1;
      if (gen_draw < 0) throw ValidationError("--draw must be >= 0");
      const auto members = family_members(fam, gen_k);
      if (std::size_t(gen_draw) >= members.size())
        throw ValidationError("--draw " + std::to_string(gen_draw) + " exceeds the family size " +
                              std::to_string(members.size()));
      write_gfn(gen_out, members[std::size_t(gen_draw)]);
      cfg.params = {{"kind", to_string(fam.kind)}, {"k", gen_k}, {"grid", to_json(fam.grid)}, {"draw", gen_draw}};
      out << dump(with_config(cfg, "result", {{"written", gen_out}}));
    };
  });

  // norm
  auto* norm = app.add_subcommand("norm", "FL, Besov or Triebel-Lizorkin norm of a .gfn field");
  std::string norm_space = "fl", norm_p = "2", norm_q = "2", norm_input;
  double norm_s = 0;
  norm->add_option("--space", norm_space)->check(CLI::IsMember({"fl", "besov", "triebel"}));
  norm->add_option("--p", norm_p);
  norm->add_option("--q", norm_q);
  norm->add_option("--s", norm_s);
  norm->add_option("--input", norm_input)->required();
  norm->callback([&] {
    action = [&] {
      RunConfig cfg{"norm", {}, {norm_input}, {}, 0, g.tolerance};
      const auto f = read_gfn(norm_input);
      const double p = parse_exponent(norm_p), q = parse_exponent(norm_q);
      NormResult r;
      if (norm_space == "fl") {
        r = fl_norm(f, p, norm_s);
      } else {
        const auto fam = build_dyadic_family(f.grid);
        r = norm_space == "besov" ? besov_norm(f, p, q, norm_s, fam) : triebel_norm(f, p, q, norm_s, fam);
      }
      cfg.params = {{"space", norm_space}, {"p", exponent_json(p)}, {"s", norm_s}};
      if (norm_space != "fl") cfg.params["q"] = exponent_json(q);
      out << dump(with_config(cfg, "result", to_json(r)));
    };
  });

  // lp
  auto* lp = app.add_subcommand("lp", "Littlewood-Paley blocks of a .gfn field");
  std::string lp_input, lp_dir;
  lp->add_option("--input", lp_input)->required();
  lp->add_option("--out-dir", lp_dir)->required();
  lp->callback([&] {
    action = [&] {
      RunConfig cfg{"lp", Json::object(), {lp_input}, {lp_dir}, 0, g.tolerance};
      const auto f = read_gfn(lp_input);
      const auto fam = build_dyadic_family(f.grid);
      const auto blocks = lp_decompose(f, fam);
      fs::create_directories(lp_dir);
      Json list = Json::array();
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        const std::string name = "block_" + std::to_string(j) + ".gfn";
        write_gfn(fs::path(lp_dir) / name, blocks[j]);
        const double mass = l2_norm(blocks[j]);
        list.push_back({{"j", int(j)}, {"file", name}, {"l2_mass", mass * mass}});
      }
      const Json manifest = with_config(cfg, "result", {{"grid", to_json(f.grid)}, {"j_max", fam.j_max}, {"blocks", list}});
      write_text(fs::path(lp_dir) / "manifest.json", dump(manifest));
      out << dump(manifest);
    };
  });

  // fio
  auto* fio = app.add_subcommand("fio", "apply a catalogue FIO to a .gfn field");
  std::string fio_phase, fio_params, fio_symbol, fio_input, fio_out, fio_report;
  double fio_order = 0;
  fio->add_option("--phase", fio_phase)->required();
  fio->add_option("--params", fio_params, "phase parameter JSON file");
  auto* order_opt = fio->add_option("--symbol-order", fio_order, "sigma = <k>^M");
  fio->add_option("--symbol", fio_symbol, "symbol JSON file")->excludes(order_opt);
  fio->add_option("--input", fio_input)->required();
  fio->add_option("--out", fio_out)->required();
  fio->add_option("--report", fio_report);
  fio->callback([&] {
    action = [&] {
      RunConfig cfg{"fio", {}, {fio_input}, {fio_out}, 0, g.tolerance};
      const auto f = read_gfn(fio_input);
      const Json params = fio_params.empty() ? Json::object() : load_json_file(fio_params);
      if (!fio_params.empty()) cfg.inputs.push_back(fio_params);
      const auto phase = phase_from_json(fio_phase, params, f.grid.dim);
      Json symbol_json{{"kind", "bessel"}, {"order", fio_order}};
      if (!fio_symbol.empty()) {
        symbol_json = load_json_file(fio_symbol);
        cfg.inputs.push_back(fio_symbol);
      }
      const auto T = make_fio(phase, symbol_from_json(symbol_json));
      const PhaseReport pr = validate_phase(*phase, 400, {});
      if (!pr.pass) throw PhaseValidationFailed(phase->id + ": " + pr.violation);
      const auto v = apply_fio(T, f);
      write_gfn(fio_out, v);
      cfg.params = {{"phase", fio_phase}, {"phase_params", params}, {"symbol", symbol_json}};
      if (!fio_report.empty()) cfg.outputs.push_back(fio_report);
      const Json body{{"phase_report", to_json(pr)},
                      {"order", T.order},
                      {"kappa", T.kappa},
                      {"input_fl1", fl_norm(f, 1, 0).value},
                      {"output_fl1", fl_norm(v, 1, 0).value},
                      {"input_fl2", fl_norm(f, 2, 0).value},
                      {"output_fl2", fl_norm(v, 2, 0).value}};
      emit(with_config(cfg, "result", body), fio_report, out);
    };
  });

  // predicate
  auto* pred = app.add_subcommand("predicate", "evaluate an embedding or boundedness predicate");
  std::string pr_which, pr_p = "2", pr_q = "2", pr_r = "2", pr_s = "0", pr_m = "0";
  int pr_d = 1, pr_kappa = -1;
  pred->add_option("--which", pr_which)->required()->check(CLI::IsMember({"b24", "t25", "main2", "main3"}));
  pred->add_option("--p", pr_p);
  pred->add_option("--q", pr_q);
  pred->add_option("--r", pr_r);
  pred->add_option("--s", pr_s);
  pred->add_option("--d", pr_d);
  pred->add_option("--m", pr_m);
  pred->add_option("--kappa", pr_kappa);
  pred->callback([&] {
    action = [&] {
      IndexTuple t;
      t.p = index_arg(pr_p, "p");
      t.q = index_arg(pr_q, "q");
      t.r = index_arg(pr_r, "r");
      t.s = rational_arg(pr_s, "s");
      t.d = pr_d;
      t.validate();
      RunConfig cfg{"predicate", {}, {}, {}, 0, g.tolerance};
      cfg.params = {{"which", pr_which}, {"p", t.p.str()}, {"q", t.q.str()}, {"r", t.r.str()},
                    {"s", to_string(t.s)}, {"d", t.d}};
      PredicateResult r;
      if (pr_which == "b24") {
        r = besov_embeds_fl(t);
      } else if (pr_which == "t25") {
        r = triebel_embeds_fl(t);
      } else {
        const int kappa = pr_kappa < 0 ? t.d : pr_kappa;
        if (kappa > t.d) throw ValidationError("--kappa must lie in 0..d");
        const Rational m = rational_arg(pr_m, "m");
        cfg.params["m"] = to_string(m);
        cfg.params["kappa"] = kappa;
        r = pr_which == "main2" ? fio_besov_to_fl_admissible(t, m, kappa) : fio_triebel_to_fl_admissible(t, m, kappa);
      }
      Json body = to_json(r);
      body["critical_smoothness"] = to_string(critical_smoothness(t));
      out << dump(with_config(cfg, "result", body));
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "solve a hyperbolic Cauchy problem");
  std::string sv_config, sv_out, sv_report, sv_norms, sv_variant = "dimension";
  double sv_t = 0;
  solve->add_option("--config", sv_config)->required();
  solve->add_option("--t", sv_t)->required();
  solve->add_option("--out", sv_out);
  solve->add_option("--report", sv_report);
  solve->add_option("--norms", sv_norms, "p:alpha,... e.g. 1:0.5,2:0,inf:1");
  solve->add_option("--alpha-variant", sv_variant)->check(CLI::IsMember({"dimension", "rank"}));
  solve->callback([&] {
    action = [&] {
      RunConfig cfg{"solve", {}, {sv_config}, {}, 0, g.tolerance};
      const TolerancePolicy tol = with_profile(cfg);
      HyperbolicProblemSpec spec = read_problem(sv_config);
      spec.gap_delta = std::max(spec.gap_delta, tol.gap_delta);
      spec.imag_tolerance = std::min(spec.imag_tolerance, tol.imag_tolerance);
      spec.steps_per_unit = int(std::lround(spec.steps_per_unit * tol.steps_factor));
      RegularityOptions opt;
      opt.variant = sv_variant == "rank" ? AlphaVariant::Rank : AlphaVariant::Dimension;
      opt.kappa = spec.kappa;
      opt.margin = tol.alpha_margin;
      const auto norms = sv_norms.empty() ? std::vector<NormRequest>{} : parse_norms(sv_norms);
      const auto res = solve_cauchy(spec, sv_t, norms, opt);
      if (!sv_out.empty()) {
        write_gfn(sv_out, res.v);
        cfg.outputs.push_back(sv_out);
      }
      if (!sv_report.empty()) cfg.outputs.push_back(sv_report);
      Json req = Json::array();
      for (const auto& n : norms) req.push_back({{"p", exponent_json(n.p)}, {"alpha", n.alpha}});
      cfg.params = {{"t", sv_t},
                    {"norms", req},
                    {"alpha_variant", sv_variant},
                    {"gap_delta", spec.gap_delta},
                    {"imag_tolerance", spec.imag_tolerance},
                    {"steps_per_unit", spec.steps_per_unit}};
      emit(with_config(cfg, "report", to_json(res.report)), sv_report, out);
    };
  });

  // probe
  auto* probe = app.add_subcommand("probe", "empirical scans");
  probe->require_subcommand(1);

  auto* thr = probe->add_subcommand("threshold", "operator-norm growth across symbol orders");
  FamilyArgs thr_fam;
  std::string thr_phase, thr_params, thr_p = "1", thr_m, thr_csv, thr_report;
  thr->add_option("--phase", thr_phase)->required();
  thr->add_option("--params", thr_params);
  thr->add_option("--p", thr_p);
  thr->add_option("--m-grid", thr_m, "comma-separated orders")->required();
  thr->add_option("--csv", thr_csv);
  thr->add_option("--report", thr_report);
  thr_fam.add(thr);
  thr->callback([&] {
    action = [&] {
      RunConfig cfg{"probe threshold", {}, {}, {}, thr_fam.seed, g.tolerance};
      const TolerancePolicy tol = with_profile(cfg);
      const Json params = thr_params.empty() ? Json::object() : load_json_file(thr_params);
      if (!thr_params.empty()) cfg.inputs.push_back(thr_params);
      const int dim = params.contains("d") && params["d"].is_number_integer() ? params["d"].get<int>() : 1;
      const auto phase = phase_from_json(thr_phase, params, dim);
      const TestFamily fam = thr_fam.resolve(phase->dim);
      const double p = parse_exponent(thr_p);
      const auto m_grid = parse_list(thr_m, "m-grid");
      cfg.params = {{"phase", thr_phase}, {"phase_params", params}, {"p", exponent_json(p)}, {"m_grid", m_grid}};
      thr_fam.record(cfg.params, fam);
      for (const auto* path : {&thr_csv, &thr_report})
        if (!path->empty()) cfg.outputs.push_back(*path);
      write_scan(threshold_scan(phase, p, m_grid, fam, tol.rule), cfg, thr_report, thr_csv, out);
    };
  });

  auto* emb = probe->add_subcommand("embedding", "FL^r / space-norm ratio across scales");
  FamilyArgs emb_fam;
  emb_fam.family = "dyadic-bump";
  std::string emb_space = "besov", emb_p = "2", emb_q = "2", emb_r = "2", emb_s = "0", emb_csv, emb_report;
  int emb_d = 1;
  emb->add_option("--space", emb_space)->check(CLI::IsMember({"besov", "triebel"}));
  emb->add_option("--p", emb_p);
  emb->add_option("--q", emb_q);
  emb->add_option("--r", emb_r);
  emb->add_option("--s", emb_s);
  emb->add_option("--d", emb_d);
  emb->add_option("--csv", emb_csv);
  emb->add_option("--report", emb_report);
  emb_fam.add(emb);
  emb->callback([&] {
    action = [&] {
      RunConfig cfg{"probe embedding", {}, {}, {}, emb_fam.seed, g.tolerance};
      const TolerancePolicy tol = with_profile(cfg);
      IndexTuple t;
      t.p = index_arg(emb_p, "p");
      t.q = index_arg(emb_q, "q");
      t.r = index_arg(emb_r, "r");
      t.s = rational_arg(emb_s, "s");
      t.d = emb_d;
      t.validate();
      const TestFamily fam = emb_fam.resolve(emb_d);
      cfg.params = {{"space", emb_space}, {"p", t.p.str()}, {"q", t.q.str()},
                    {"r", t.r.str()},     {"s", to_string(t.s)}, {"d", t.d}};
      emb_fam.record(cfg.params, fam);
      for (const auto* path : {&emb_csv, &emb_report})
        if (!path->empty()) cfg.outputs.push_back(*path);
      const auto which = emb_space == "besov" ? EmbeddingSpace::Besov : EmbeddingSpace::Triebel;
      write_scan(embedding_ratio_sweep(which, t, fam, tol.rule), cfg, emb_report, emb_csv, out);
    };
  });

  auto* opn = probe->add_subcommand("opnorm", "operator-norm lower bounds along the ladder");
  FamilyArgs opn_fam;
  std::string opn_phase, opn_params, opn_p = "2", opn_q = "2", opn_csv, opn_report;
  double opn_order = 0;
  opn->add_option("--phase", opn_phase)->required();
  opn->add_option("--params", opn_params);
  opn->add_option("--symbol-order", opn_order);
  opn->add_option("--p", opn_p);
  opn->add_option("--q", opn_q);
  opn->add_option("--csv", opn_csv);
  opn->add_option("--report", opn_report);
  opn_fam.add(opn);
  opn->callback([&] {
    action = [&] {
      RunConfig cfg{"probe opnorm", {}, {}, {}, opn_fam.seed, g.tolerance};
      const TolerancePolicy tol = with_profile(cfg);
      const Json params = opn_params.empty() ? Json::object() : load_json_file(opn_params);
      if (!opn_params.empty()) cfg.inputs.push_back(opn_params);
      const int dim = params.contains("d") && params["d"].is_number_integer() ? params["d"].get<int>() : 1;
      const auto phase = phase_from_json(opn_phase, params, dim);
      const TestFamily fam = opn_fam.resolve(phase->dim);
      const double p = parse_exponent(opn_p), q = parse_exponent(opn_q);
      cfg.params = {{"phase", opn_phase}, {"phase_params", params}, {"symbol_order", opn_order},
                    {"p", exponent_json(p)}, {"q", exponent_json(q)}};
      opn_fam.record(cfg.params, fam);
      for (const auto* path : {&opn_csv, &opn_report})
        if (!path->empty()) cfg.outputs.push_back(*path);
      const auto T = make_fio(phase, bessel_symbol<double>(opn_order));
      write_scan(opnorm_scan(T, p, q, fam, tol.rule), cfg, opn_report, opn_csv, out);
    };
  });

  auto fail = [&](int code, const std::string& name, const std::string& message) {
    err << Json{{"error", name}, {"message", message}, {"exit_code", code}}.dump() << "\n";
    return code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail(2, "UsageError", e.what());
  } catch (const Error& e) {
    return fail(dynamic_cast<const NumericalError*>(&e) ? 1 : 2, e.name(), e.what());
  }
  if (!action) return fail(2, "UsageError", "no subcommand given");

  try {
    action();
  } catch (const NumericalError& e) {
    return fail(1, e.name(), e.what());
  } catch (const Error& e) {
    return fail(2, e.name(), e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(2, "FileError", e.what());
  } catch (const std::exception& e) {
    return fail(1, "InternalError", e.what());
  }
  return 0;
}

}  // namespace hypfl
