// One line per acceptance criterion; exit status 1 when any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "holoschwarz/ahlfors.hpp"
#include "holoschwarz/config.hpp"
#include "holoschwarz/criterion.hpp"
#include "holoschwarz/fixtures.hpp"
#include "holoschwarz/nehari.hpp"
#include "holoschwarz/oracle.hpp"
#include "holoschwarz/run.hpp"
#include "holoschwarz/schwarzian.hpp"

using namespace holoschwarz;

namespace {

const double kQuarterPi2 = kPi * kPi / 4.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome example1_equality() {
  const auto t0 = std::chrono::steady_clock::now();
  const CriterionReport r = scan(example1_curve({1700.0}), NehariFunction::constant(), GridSpec{200, 64, 0.999, 0});
  double worst = 0.0;
  for (const auto& p : r.points) worst = std::max(worst, std::abs(p.margin));
  const double secs = seconds_since(t0);
  return {worst <= 1e-6 && secs < 5.0, fmt("max |margin| %.3g over %.0f points, %.2f s", worst, r.points.size(), secs)};
}

Outcome classical_reduction() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0), rad(0.0, 0.95), ang(0.0, 2 * kPi);
  auto rc = [&] { return cplx(u(rng), u(rng)); };
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    ComponentFn fn;
    switch (k % 3) {
      case 0: {
        // pole kept outside the closed unit disk
        const cplx cc = 0.4 * rc();
        fn = component::Mobius{1.0 + 0.3 * rc(), rc(), cc, 1.0};
        break;
      }
      case 1: fn = component::Exponential{1.0 + 0.5 * rc(), 2.0 * rc()}; break;
      default: {
        std::vector<cplx> co{rc(), 1.0 + 0.2 * rc()};
        for (int j = 0; j < 4; ++j) co.push_back(0.15 * rc());
        fn = component::Polynomial{co};
      }
    }
    const cplx z = std::polar(rad(rng), ang(rng));
    const Jet3 j = eval_component(fn, z);
    if (std::abs(j.d1) < 1e-3) continue;
    const cplx s = conformal_data(eval_curve(HoloCurve::from_components({fn}), z)).schwarzian;
    worst = std::max(worst, std::abs(s - classical_schwarzian(j)) / (1.0 + std::abs(s)));
  }
  return {worst <= 1e-12, fmt("worst relative deviation %.3g over 1000 cases", worst)};
}

Outcome second_form_identity() {
  double worst_fd = 0.0, worst_cf = 0.0;
  std::uint64_t seed = 31;
  for (const auto& c : {example1_curve(), example2_curve()}) {
    for (cplx z : disk_samples(500, seed++, 0.0, 0.95)) {
      const ConformalData d = conformal_data(eval_curve(c, z));
      const double half_k = 0.5 * std::abs(d.curvature);
      const SecondFormEstimate e = second_form_sq_fd(c, z);
      worst_fd = std::max(worst_fd, std::abs(e.value - half_k) / e.scale);
      worst_cf = std::max(worst_cf, std::abs(d.second_form_sq - half_k) / std::max(half_k, 1e-300));
    }
  }
  return {worst_fd <= 1e-6 && worst_cf <= 1e-12,
          fmt("finite differences %.3g (relative to operand size), closed form %.3g (relative)", worst_fd, worst_cf)};
}

std::vector<PlaneCurve> standard_paths() {
  return {PlaneCurve::diameter(0.0), PlaneCurve::diameter(0.9), PlaneCurve::circle_arc(0.0, 0.3),
          PlaneCurve::circle_arc(0.0, 0.6)};
}

Outcome three_route_s1() {
  double worst = 0.0;
  for (const auto& nc : builtin_curves())
    for (const auto& path : standard_paths()) {
      const auto [lo, hi] = path_parameter_range(path, 0.9);
      for (int k = 0; k < 16; ++k) {
        const double t = lo + (hi - lo) * (k + 0.5) / 16;
        const double direct = s1_of_composed_curve(nc.curve, path, t);
        const double scale = 1.0 + std::abs(direct);
        worst = std::max(worst, std::abs(lemma2_rhs(nc.curve, path, t) - direct) / scale);
        worst = std::max(worst, std::abs(s1_chuaqui_gevirtz(nc.curve, path, t) - direct) / scale);
      }
    }
  return {worst <= 1e-5, fmt("worst relative deviation %.3g", worst)};
}

Outcome disconjugacy_calibration() {
  const auto t0 = std::chrono::steady_clock::now();
  const int n0 = disconjugacy_count(NehariFunction::constant());
  const int n1 = disconjugacy_count(NehariFunction::constant(1.05 * kQuarterPi2));
  const double m0 = extremality_margin(NehariFunction::constant());
  const double m1 = extremality_margin(NehariFunction::inverse_square());
  const double secs = seconds_since(t0);
  const bool ok = n0 == 0 && n1 >= 1 && std::abs(m0 - 1) <= 1e-3 && std::abs(m1 - 1) <= 1e-3 && secs < 10.0;
  return {ok, fmt("zeros %.0f and %.0f, margins %.7f and %.7f", n0, n1, m0, m1) + fmt(", %.2f s", secs)};
}

Outcome profile_closed_forms() {
  const ExtremalProfile inv = extremal_profile(NehariFunction::inverse_square());
  const ExtremalProfile con = extremal_profile(NehariFunction::constant());
  const double e_phi = std::abs(inv.at(0.5).Phi - 0.5 * std::log(3.0));
  const double e_psi = std::abs(con.at(0.99).Psi - 2 / kPi * std::tanh(0.99 * kPi / 2));
  double e_a = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const ProfilePoint pt = inv.at(0.1 * k);
    e_a = std::max(e_a, std::abs(pt.A - pt.p));
  }
  return {e_phi <= 1e-8 && e_psi <= 1e-6 && e_a <= 1e-8,
          fmt("Phi(0.5) off by %.3g, Psi(0.99) off by %.3g, max |A - p| %.3g", e_phi, e_psi, e_a)};
}

Outcome covering_consistency() {
  const ExtremalProfile prof = extremal_profile(NehariFunction::constant());
  const std::vector<double> radii{0.3, 0.5, 0.7, 0.9};
  double worst = 1e300, slowest = 0.0;
  for (const auto& c : {HoloCurve::identity(), example1_curve()}) {
    const auto t0 = std::chrono::steady_clock::now();
    const CoveringProfile cp = covering_profile(c, prof, radii, GeodesicOptions{200, true, 1e-3});
    slowest = std::max(slowest, seconds_since(t0));
    for (std::size_t i = 0; i < radii.size(); ++i) worst = std::min(worst, cp.measured[i] - cp.bound[i]);
  }
  return {worst >= -2e-3 && slowest < 30.0,
          fmt("min(measured - bound) %.3g, slowest curve %.2f s", worst, slowest)};
}

Outcome radial_margin() {
  const ExtremalProfile con = extremal_profile(NehariFunction::constant());
  const ExtremalProfile inv = extremal_profile(NehariFunction::inverse_square());
  const HoloCurve e1 = normalize(example1_curve()).curve;
  const HoloCurve e2 = normalize(example2_curve()).curve;
  double worst = 1e300;
  for (cplx z : disk_samples(1000, 41, 1e-3, 0.99)) {
    worst = std::min(worst, lemma4_margin(e1, con, z));
    worst = std::min(worst, lemma4_margin(e2, inv, z));
  }
  return {worst >= -1e-8, fmt("minimum margin %.3g over 1000 points per curve", worst)};
}

Outcome radial_convexity() {
  const BoundaryOptions opts{32, 100, 0.5};
  const BoundaryDiagnostics d1 = boundary_diagnostics(normalize(example1_curve()).curve,
                                                      extremal_profile(NehariFunction::constant()), GridSpec{}, opts);
  const BoundaryDiagnostics d2 = boundary_diagnostics(
      normalize(example2_curve()).curve, extremal_profile(NehariFunction::inverse_square()), GridSpec{}, opts);
  const double worst = std::min(d1.worst_omega2, d2.worst_omega2);
  return {worst >= -1e-6, fmt("smallest omega'' %.3g (example 1) and %.3g (example 2)", d1.worst_omega2,
                              d2.worst_omega2)};
}

Outcome small_c_constants() {
  const auto samples = lemma7_strip_samples(10000, 0);
  double amin = 1e300, amax = 0, bmin = 1e300, bmax = 0, cmin = 1e300, cmax = 0, slack = 1e300;
  bool witness = false;
  std::string consts;
  for (double c : {0.01, 0.05, 0.1}) {
    const Lemma7Report r = lemma7_check({c}, samples);
    witness = witness || r.witness.has_value();
    slack = std::min({slack, r.slack_A, r.slack_B, r.slack_C});
    amin = std::min(amin, r.A), amax = std::max(amax, r.A);
    bmin = std::min(bmin, r.B), bmax = std::max(bmax, r.B);
    cmin = std::min(cmin, r.C), cmax = std::max(cmax, r.C);
    consts += fmt(" c=%.2f: %.3f/%.3f/%.3f", c, r.A, r.B, r.C);
  }
  const double spread = std::max({amax / amin, bmax / bmin, cmax / cmin});
  return {!witness && slack >= 0.0 && amin > 0 && bmin > 0 && cmin > 0 && spread <= 2.0,
          "A/B/C" + consts + fmt(", spread %.3f, min slack %.3g", spread, slack)};
}

Outcome chain_rules() {
  std::vector<HoloCurve> curves;
  for (const auto& nc : builtin_curves()) curves.push_back(nc.curve);
  const IdentitySuiteReport r = identity_suite(curves, standard_paths(), 0);
  double pre = -1, mob = -1;
  for (const auto& id : r.identities) {
    if (id.name == "precomposition") pre = id.worst;
    if (id.name == "s1_range_mobius") mob = id.worst;
  }
  return {pre >= 0 && mob >= 0 && pre <= 1e-8 && mob <= 1e-4,
          fmt("precomposition %.3g, range Mobius %.3g", pre, mob)};
}

Outcome injectivity_witness() {
  const InjectivityReport a = injectivity_scan(example1_curve(), 10000, 0.05, 0);
  const InjectivityReport b = injectivity_scan(example2_curve(), 10000, 0.05, 0);
  const RunConfig cfg = parse_config(
      "run.command = injectivity\ncurve.kind = polynomial\ncurve.coeffs = 0,0,1\ninjectivity.r_min = 0.1\n");
  const int code = run(cfg).exit_code;
  return {!a.collision && !b.collision && code == exit_code::kCollision,
          fmt("min image distance %.3g and %.3g, z^2 annulus exit code %.0f", a.min_distance, b.min_distance, code)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"example1-equality", example1_equality},
      {"classical-reduction", classical_reduction},
      {"second-form-identity", second_form_identity},
      {"three-route-s1", three_route_s1},
      {"disconjugacy-calibration", disconjugacy_calibration},
      {"profile-closed-forms", profile_closed_forms},
      {"covering-consistency", covering_consistency},
      {"radial-margin", radial_margin},
      {"radial-convexity", radial_convexity},
      {"small-c-constants", small_c_constants},
      {"chain-rules", chain_rules},
      {"injectivity-witness", injectivity_witness},
  };
  int failed = 0, index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %-26s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
