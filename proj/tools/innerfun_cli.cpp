#include <CLI11.hpp>

#include "innerfun/io.hpp"
#include "innerfun/zoo.hpp"

using namespace innerfun;

namespace {

InnerFunction load_inner(const std::string& zeros_path, const std::string& measure_path) {
  InnerFunction f;
  if (!zeros_path.empty()) {
    Json j = Json::parse(read_file(zeros_path), nullptr, true);
    f.blaschke = to_disc(zeroset_from_json(j));
  }
  if (!measure_path.empty()) {
    Json j = Json::parse(read_file(measure_path), nullptr, true);
    f.singular = measure_from_json(j);
  }
  return f;
}

std::vector<std::string> existing(std::initializer_list<std::string> paths) {
  std::vector<std::string> out;
  for (const auto& p : paths)
    if (!p.empty()) out.push_back(p);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"inner function diagnostics: generators, eta curves, sublevel sets, entropy"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "zero set or boundary set from a generator spec");
  std::string gen_spec, gen_out;
  gen->add_option("--spec", gen_spec, "generator spec JSON file")->required();
  gen->add_option("--out", gen_out, "output JSON file")->required();

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "full diagnostics report plus eta curve CSV");
  std::string d_zeros, d_measure, d_report, d_csv;
  ClassifyConfig ccfg;
  bool d_skip_narrow = false;
  diag->add_option("--zeros", d_zeros, "zero set JSON file");
  diag->add_option("--measure", d_measure, "singular measure JSON file");
  diag->add_option("--report", d_report, "output report JSON")->required();
  diag->add_option("--eta-csv", d_csv, "output eta curve CSV")->required();
  diag->add_option("--mesh", ccfg.eta.mesh, "hyperbolic probe step");
  diag->add_option("--r-max", ccfg.eta.r_max, "outer radius of the probed region");
  diag->add_option("--t", ccfg.eta.t_values, "t grid for the eta curve");
  diag->add_option("--workers", ccfg.eta.workers, "probe-grid worker threads");
  diag->add_flag("--skip-narrowness", d_skip_narrow, "skip the narrowness probes");

  // eta
  auto* eta = app.add_subcommand("eta", "eta curve CSV only");
  std::string e_zeros, e_measure, e_out;
  EtaConfig ecfg;
  eta->add_option("--zeros", e_zeros, "zero set JSON file");
  eta->add_option("--measure", e_measure, "singular measure JSON file");
  eta->add_option("--out", e_out, "output CSV")->required();
  eta->add_option("--t", ecfg.t_values, "t values in (0,1)")->required();
  eta->add_option("--mesh", ecfg.mesh, "hyperbolic probe step");
  eta->add_option("--r-max", ecfg.r_max, "outer radius of the probed region");
  eta->add_option("--workers", ecfg.workers, "probe-grid worker threads");

  // sublevel
  auto* sub = app.add_subcommand("sublevel", "polar grid samples of |Theta| with set membership");
  std::string s_zeros, s_measure, s_out;
  double s_eps = 0.5, s_rmax = 1.0 - 0x1p-8;
  long s_nr = 64, s_na = 256;
  sub->add_option("--zeros", s_zeros, "zero set JSON file");
  sub->add_option("--measure", s_measure, "singular measure JSON file");
  sub->add_option("--eps", s_eps, "membership threshold |Theta| < 1 - eps")->required();
  sub->add_option("--n-radial", s_nr, "radial grid count");
  sub->add_option("--n-angular", s_na, "angular grid count");
  sub->add_option("--r-max", s_rmax, "outer radius of the grid");
  sub->add_option("--out", s_out, "output CSV")->required();

  // entropy
  auto* ent = app.add_subcommand("entropy", "entropy integral and Whitney family summary");
  std::string n_boundary, n_out;
  long n_maxlevel = 10;
  bool n_dump = false;
  ent->add_option("--boundary", n_boundary, "boundary set JSON file")->required();
  ent->add_option("--max-level", n_maxlevel, "dyadic scan depth (>= 2)");
  ent->add_option("--out", n_out, "output JSON")->required();
  ent->add_flag("--dump-arcs", n_dump, "include the full G/F arc lists");

  // sipify
  auto* sip = app.add_subcommand("sipify", "Blaschke companions B1, B2 for a singular measure");
  std::string p_measure, p_boundary, p_b1, p_b2;
  long p_maxlevel = 8;
  sip->add_option("--measure", p_measure, "singular measure JSON file")->required();
  sip->add_option("--boundary", p_boundary, "boundary set JSON file")->required();
  sip->add_option("--max-level", p_maxlevel, "dyadic scan depth (>= 2)");
  sip->add_option("--out-b1", p_b1, "output zero set JSON for B1")->required();
  sip->add_option("--out-b2", p_b2, "output zero set JSON for B2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 2;
  }

  if (*gen) {
    Json spec = Json::parse(read_file(gen_spec), nullptr, true);
    auto result = run_generator_spec(spec);
    const Json prov = make_provenance("generate", Json{{"spec", spec}}, existing({gen_spec}));
    Json out;
    if (std::holds_alternative<ZeroSet>(result)) {
      ZeroSet& zs = std::get<ZeroSet>(result);
      zs.metadata()["provenance"] = prov;
      out = zeroset_to_json(zs);
    } else {
      out = boundary_to_json(std::get<BoundarySet>(result));
      out["provenance"] = prov;
    }
    write_file(gen_out, out.dump(2) + "\n");
    return 0;
  }

  if (*diag) {
    if (d_zeros.empty() && d_measure.empty())
      throw input_error("diagnose: need --zeros and/or --measure");
    InnerFunction f = load_inner(d_zeros, d_measure);
    ccfg.run_narrowness = !d_skip_narrow;
    Report rep = classify(f, ccfg);
    Json cfg_json = {{"mesh", ccfg.eta.mesh},
                     {"r_max", ccfg.eta.r_max},
                     {"t", ccfg.eta.t_values},
                     {"narrowness", ccfg.run_narrowness},
                     {"cn_threshold", ccfg.cn_threshold},
                     {"cn_stable_pct", ccfg.cn_stable_pct},
                     {"cn_divergent_pct", ccfg.cn_divergent_pct},
                     {"sip_tol", ccfg.sip_tol},
                     {"sip_against", ccfg.sip_against}};
    const Json prov = make_provenance("diagnose", cfg_json, existing({d_zeros, d_measure}));
    bool any_probe = false;
    for (const auto& s : rep.eta.samples)
      if (s.estimate) any_probe = true;
    Json rj = report_to_json(rep);
    rj["degenerate_probe_region"] = !any_probe;
    rj["provenance"] = prov;
    write_file(d_report, rj.dump(2) + "\n");
    write_file(d_csv, eta_curve_to_csv(rep.eta, prov));
    return any_probe ? 0 : 3;
  }

  if (*eta) {
    if (e_zeros.empty() && e_measure.empty())
      throw input_error("eta: need --zeros and/or --measure");
    InnerFunction f = load_inner(e_zeros, e_measure);
    EtaCurve curve = eta_curve(f, ecfg);
    Json cfg_json = {{"mesh", ecfg.mesh},
                     {"r_max", ecfg.r_max},
                     {"t", ecfg.t_values}};
    const Json prov = make_provenance("eta", cfg_json, existing({e_zeros, e_measure}));
    write_file(e_out, eta_curve_to_csv(curve, prov));
    bool any_probe = false;
    for (const auto& s : curve.samples)
      if (s.estimate) any_probe = true;
    return any_probe ? 0 : 3;
  }

  if (*sub) {
    if (!(s_eps > 0.0) || !(s_eps < 1.0)) throw input_error("sublevel: --eps must lie in (0, 1)");
    if (s_nr < 0 || s_na < 0) throw input_error("sublevel: grid counts must be >= 0");
    if (!(s_rmax > 0.0) || s_rmax >= 1.0)
      throw input_error("sublevel: --r-max must lie in (0, 1)");
    InnerFunction f = load_inner(s_zeros, s_measure);
    std::vector<SublevelRow> rows;
    for (long i = 0; i < s_nr; ++i) {
      const double r = (i + 0.5) * s_rmax / static_cast<double>(s_nr);
      for (long j = 0; j < s_na; ++j) {
        const double th = kTwoPi * static_cast<double>(j) / static_cast<double>(s_na);
        const DiscPoint z(r * std::cos(th), r * std::sin(th));
        const EvalResult res = eval_inner(f, z);
        const double mod = std::abs(res.value);
        rows.push_back({z.re(), z.im(), mod, mod < 1.0 - s_eps});
      }
    }
    Json cfg_json = {{"eps", s_eps}, {"n_radial", s_nr}, {"n_angular", s_na}, {"r_max", s_rmax}};
    const Json prov = make_provenance("sublevel", cfg_json, existing({s_zeros, s_measure}));
    write_file(s_out, sublevel_to_csv(rows, prov));
    return 0;
  }

  if (*ent) {
    if (n_maxlevel < 2 || n_maxlevel > 24)
      throw input_error("entropy: --max-level must lie in [2, 24]");
    BoundarySet e = boundary_from_json(Json::parse(read_file(n_boundary), nullptr, true));
    WhitneyFamilies fam = whitney_scan(e, static_cast<int>(n_maxlevel));
    Json out;
    out["entropy_integral"] = entropy_integral(e);
    out["positive_measure"] = e.positive_measure();
    out["total_measure_turns"] = e.total_measure_turns();
    Json wj;
    wj["max_level"] = fam.max_level;
    wj["g_count"] = fam.g.size();
    wj["f_count"] = fam.f.size();
    wj["residual_count"] = fam.residual.size();
    wj["g_entropy_sum_turns"] = fam.g_entropy_sum_turns;
    wj["f_length_sum_turns"] = fam.f_length_sum_turns;
    if (n_dump) {
      auto dump_arcs = [](const std::vector<DyadicArc>& arcs) {
        Json a = Json::array();
        for (const auto& d : arcs) a.push_back(Json::array({d.level, d.index}));
        return a;
      };
      wj["g_arcs"] = dump_arcs(fam.g);
      wj["f_arcs"] = dump_arcs(fam.f);
      wj["residual_arcs"] = dump_arcs(fam.residual);
    }
    out["whitney"] = std::move(wj);
    out["provenance"] = make_provenance(
        "entropy", Json{{"max_level", n_maxlevel}, {"dump_arcs", n_dump}}, existing({n_boundary}));
    write_file(n_out, out.dump(2) + "\n");
    return 0;
  }

  if (*sip) {
    if (p_maxlevel < 2 || p_maxlevel > 16)
      throw input_error("sipify: --max-level must lie in [2, 16]");
    SingularMeasure mu = measure_from_json(Json::parse(read_file(p_measure), nullptr, true));
    BoundarySet e = boundary_from_json(Json::parse(read_file(p_boundary), nullptr, true));
    Sipification s = build_sipification(mu, e, static_cast<int>(p_maxlevel));
    const Json prov = make_provenance("sipify", Json{{"max_level", p_maxlevel}},
                                      existing({p_measure, p_boundary}));
    s.b1.metadata()["provenance"] = prov;
    s.b2.metadata()["provenance"] = prov;
    write_file(p_b1, zeroset_to_json(s.b1).dump(2) + "\n");
    write_file(p_b2, zeroset_to_json(s.b2).dump(2) + "\n");
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
