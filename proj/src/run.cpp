#include "holoschwarz/run.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holoschwarz/criterion.hpp"
#include "holoschwarz/errors.hpp"
#include "holoschwarz/fixtures.hpp"
#include "holoschwarz/oracle.hpp"

namespace holoschwarz {

namespace {

class Summary {
 public:
  Summary() { os_.precision(17); }
  template <class T>
  Summary& kv(const std::string& key, const T& value) {
    os_ << key << '=' << value << '\n';
    return *this;
  }
  Summary& kv(const std::string& key, cplx z) {
    os_ << key << '=' << z.real() << ',' << z.imag() << '\n';
    return *this;
  }
  Summary& kv(const std::string& key, bool b) {
    os_ << key << '=' << (b ? "true" : "false") << '\n';
    return *this;
  }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
};

std::ofstream open_artifact(const RunConfig& cfg, const std::string& name, RunReport& rep) {
  std::filesystem::create_directories(cfg.output_dir);
  const std::string path = (std::filesystem::path(cfg.output_dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  rep.artifacts.push_back(path);
  return out;
}

void run_check_criterion(const RunConfig& cfg, Summary& s, RunReport& rep) {
  const HoloCurve curve = build_curve(cfg.curve);
  const NehariFunction p = build_nehari(cfg.nehari);
  const CriterionReport r = scan(curve, p, cfg.grid);
  s.kv("curve", curve.label()).kv("weight", p.label());
  s.kv("verdict", to_string(r.verdict))
      .kv("min_margin", r.min_margin)
      .kv("argmin", r.argmin)
      .kv("equality_locus_size", r.equality_locus.size())
      .kv("points", r.points.size())
      .kv("tol_eq", r.tol_eq);
  if (!cfg.output_dir.empty()) {
    auto out = open_artifact(cfg, "scan.csv", rep);
    write_scan_csv(out, r);
  }
  rep.exit_code = r.verdict == Verdict::Fails ? exit_code::kCriterionFails : exit_code::kPass;
}

void run_extremal_profile(const RunConfig& cfg, Summary& s, RunReport& rep) {
  const NehariFunction p = build_nehari(cfg.nehari);
  const NehariValidation v = validate_nehari(p);
  s.kv("weight", p.label()).kv("valid", v.valid()).kv("validation", v.message).kv("zero_count", v.zero_count);
  if (!v.valid()) {
    rep.exit_code = exit_code::kCriterionFails;
    return;
  }
  ProfileOptions opt;
  opt.eps = cfg.profile_eps;
  const ExtremalProfile prof = extremal_profile(p, opt);
  s.kv("extremality_margin", extremality_margin(p))
      .kv("lambda", prof.lambda())
      .kv("mu", prof.mu())
      .kv("alpha", prof.alpha())
      .kv("x_max", prof.x_max())
      .kv("phi_at_x_max", prof.nodes().back().Phi)
      .kv("psi_at_x_max", prof.nodes().back().Psi)
      .kv("phi_divergent", prof.phi_divergent())
      .kv("truncated", prof.truncated())
      .kv("nodes", prof.nodes().size());
  if (!cfg.output_dir.empty()) {
    auto out = open_artifact(cfg, "profile.csv", rep);
    write_profile_csv(out, prof);
  }
}

void run_covering(const RunConfig& cfg, Summary& s, RunReport& rep) {
  const HoloCurve curve = build_curve(cfg.curve);
  const NehariFunction p = build_nehari(cfg.nehari);
  const ExtremalProfile prof = extremal_profile(p);
  GeodesicOptions g;
  g.resolution = cfg.covering_resolution;
  const CoveringProfile cp = covering_profile(curve, prof, cfg.covering_radii, g);
  s.kv("curve", curve.label()).kv("weight", p.label()).kv("phi2_at_0", cp.phi2_at_0);
  bool ok = true;
  for (std::size_t i = 0; i < cp.radii.size(); ++i) {
    const std::string tag = "r[" + std::to_string(i) + "]";
    const bool hit = cp.measured[i] >= cp.bound[i] - cfg.covering_tolerance;
    ok = ok && hit;
    s.kv(tag + ".r", cp.radii[i]).kv(tag + ".bound", cp.bound[i]).kv(tag + ".measured", cp.measured[i]);
    s.kv(tag + ".consistent", hit);
  }
  s.kv("consistent", ok);
  if (!cfg.output_dir.empty()) {
    auto out = open_artifact(cfg, "covering.csv", rep);
    out.precision(17);
    out << "r,bound,measured\n";
    for (std::size_t i = 0; i < cp.radii.size(); ++i)
      out << cp.radii[i] << ',' << cp.bound[i] << ',' << cp.measured[i] << '\n';
  }
  rep.exit_code = ok ? exit_code::kPass : exit_code::kCriterionFails;
}

void run_verify_identities(const RunConfig& cfg, Summary& s, RunReport& rep) {
  std::vector<HoloCurve> curves;
  if (cfg.curve.explicit_kind) {
    curves.push_back(build_curve(cfg.curve));
  } else {
    for (const auto& nc : builtin_curves()) curves.push_back(nc.curve);
  }
  const std::vector<PlaneCurve> paths{PlaneCurve::diameter(0.0), PlaneCurve::circle_arc(0.0, 0.3),
                                      PlaneCurve::circle_arc(0.0, 0.6)};
  IdentitySuiteOptions opt;
  opt.points_per_curve = cfg.suite_points;
  IdentitySuiteReport r = identity_suite(curves, paths, cfg.seed, opt);
  for (auto& id : r.identities) {
    if (id.name == "second_form" && cfg.tol_second_form) id.tolerance = *cfg.tol_second_form;
    if (id.name == "lemma2" && cfg.tol_lemma2) id.tolerance = *cfg.tol_lemma2;
    if (id.name == "precomposition" && cfg.tol_precomposition) id.tolerance = *cfg.tol_precomposition;
    if (id.name == "s1_range_mobius" && cfg.tol_s1_range_mobius) id.tolerance = *cfg.tol_s1_range_mobius;
  }
  s.kv("curves", curves.size()).kv("paths", paths.size());
  for (const auto& id : r.identities) {
    s.kv(id.name + ".worst", id.worst)
        .kv(id.name + ".tolerance", id.tolerance)
        .kv(id.name + ".checks", id.checks)
        .kv(id.name + ".location", id.location)
        .kv(id.name + ".pass", id.pass());
  }
  s.kv("pass", r.pass());
  rep.exit_code = r.pass() ? exit_code::kPass : exit_code::kIdentityFailure;
}

void run_injectivity(const RunConfig& cfg, Summary& s, RunReport& rep) {
  const HoloCurve curve = build_curve(cfg.curve);
  InjectivityOptions opt;
  opt.r_min = cfg.injectivity_r_min;
  const InjectivityReport r = injectivity_scan(curve, cfg.injectivity_samples, cfg.injectivity_delta, cfg.seed, opt);
  s.kv("curve", curve.label())
      .kv("samples", r.samples)
      .kv("delta", r.delta)
      .kv("min_distance", r.min_distance)
      .kv("z1", r.min_z1)
      .kv("z2", r.min_z2)
      .kv("verdict", r.collision ? "collision" : "no-collision-found");
  rep.exit_code = r.collision ? exit_code::kCollision : exit_code::kPass;
}

void run_reproduce_example(const RunConfig& cfg, Summary& s, RunReport& rep) {
  if (cfg.example == 1) {
    Example1Params params;
    if (cfg.example_c > 0.0) params.c = cfg.example_c;
    std::ostringstream table;
    write_example1_table(table, params);
    const HoloCurve curve = example1_curve(params);
    double worst = 0.0;
    for (int k = 0; k <= 40; ++k) {
      const double x = -0.99 + 1.98 * k / 40;
      worst = std::max(worst, std::abs(criterion_lhs(eval_curve(curve, cplx(x, 0.0))) - kPi * kPi / 2.0));
    }
    s.kv("example", 1).kv("c", params.c).kv("max_deviation_from_pi2_over_2", worst);
    if (!cfg.output_dir.empty()) {
      auto out = open_artifact(cfg, "example1.csv", rep);
      out << table.str();
    }
    rep.exit_code = worst <= 1e-6 * kPi * kPi ? exit_code::kPass : exit_code::kCriterionFails;
  } else {
    Example2Params params;
    if (cfg.example_c > 0.0) params.c = cfg.example_c;
    const SlackHistogram h = example2_slack_histogram(params);
    s.kv("example", 2).kv("c", params.c).kv("min_slack", h.min_slack).kv("argmin", h.argmin);
    for (std::size_t b = 0; b < h.bins.size(); ++b)
      s.kv("bin[" + std::to_string(b) + "]", std::to_string(h.bins[b]));
    if (!cfg.output_dir.empty()) {
      auto out = open_artifact(cfg, "example2_slack.csv", rep);
      out.precision(17);
      out << "lo,hi,count\n";
      for (std::size_t b = 0; b < h.bins.size(); ++b) out << h.edges[b] << ',' << h.edges[b + 1] << ',' << h.bins[b] << '\n';
    }
    rep.exit_code = h.min_slack >= -1e-12 ? exit_code::kPass : exit_code::kCriterionFails;
  }
}

void run_boundary(const RunConfig& cfg, Summary& s, RunReport& rep) {
  const NormalizedCurve nc = normalize(build_curve(cfg.curve));
  const NehariFunction p = build_nehari(cfg.nehari);
  const ExtremalProfile prof = extremal_profile(p);
  BoundaryOptions opt;
  opt.rays = cfg.boundary_rays;
  opt.s_points = cfg.boundary_s_points;
  const BoundaryDiagnostics d = boundary_diagnostics(nc.curve, prof, cfg.grid, opt);
  const BoundaryTrace t = boundary_trace(nc.curve, cfg.boundary_eps, cfg.boundary_samples);
  s.kv("curve", nc.curve.label()).kv("weight", p.label());
  s.kv("critical_points", d.critical_points.size());
  for (std::size_t i = 0; i < d.critical_points.size(); ++i)
    s.kv("critical[" + std::to_string(i) + "]", d.critical_points[i].z);
  s.kv("worst_omega2", d.worst_omega2).kv("worst_theta", d.worst_theta).kv("worst_s", d.worst_s);
  s.kv("fit", d.fit.message).kv("fit_a", d.fit.a).kv("fit_b", d.fit.b).kv("fit_r0", d.fit.r0);
  s.kv("lambda", d.lambda).kv("holder_exponent", d.holder_exponent).kv("logarithmic_regime", d.logarithmic_regime);
  s.kv("trace_radius", t.radius).kv("trace_min_distance", t.min_distance).kv("trace_z1", t.z1).kv("trace_z2", t.z2);
  if (!cfg.output_dir.empty()) {
    auto out = open_artifact(cfg, "boundary_w.csv", rep);
    out.precision(17);
    out << "re_z,im_z,w\n";
    for (std::size_t i = 0; i < d.grid.size(); ++i) out << d.grid[i].real() << ',' << d.grid[i].imag() << ',' << d.w[i] << '\n';
  }
  rep.exit_code = d.worst_omega2 >= -1e-6 ? exit_code::kPass : exit_code::kCriterionFails;
}

}  // namespace

RunReport run(const RunConfig& config) {
  RunReport rep;
  Summary s;
  s.kv("command", to_string(config.command)).kv("seed", config.seed);
  try {
    switch (config.command) {
      case Command::CheckCriterion: run_check_criterion(config, s, rep); break;
      case Command::ExtremalProfile: run_extremal_profile(config, s, rep); break;
      case Command::Covering: run_covering(config, s, rep); break;
      case Command::VerifyIdentities: run_verify_identities(config, s, rep); break;
      case Command::Injectivity: run_injectivity(config, s, rep); break;
      case Command::ReproduceExample: run_reproduce_example(config, s, rep); break;
      case Command::Boundary: run_boundary(config, s, rep); break;
    }
  } catch (const NumericalError& e) {
    s.kv("error", std::string("numerical: ") + e.what());
    rep.exit_code = exit_code::kNumericalFailure;
  } catch (const DomainError& e) {
    s.kv("error", std::string("domain: ") + e.what());
    rep.exit_code = exit_code::kConfigError;
  }
  s.kv("exit_code", rep.exit_code);
  rep.summary = s.str();
  return rep;
}

}  // namespace holoschwarz
