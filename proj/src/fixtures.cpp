#include "holoschwarz/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/oracle.hpp"
#include "holoschwarz/schwarzian.hpp"

namespace holoschwarz {

namespace {
constexpr cplx kI{0.0, 1.0};
}

void Example1Params::validate() const {
  if (!(c >= example1_min_c())) {
    std::ostringstream os;
    os.precision(17);
    os << "example1: c = " << c << " is below e^{2 pi} sqrt(5 + 2 sqrt 6) = " << example1_min_c();
    throw DomainError(os.str());
  }
}

void Example2Params::validate() const {
  if (!(c > 0.0 && c < example2_max_c())) throw DomainError("example2: c must lie in (0, 4/pi)");
}

HoloCurve example1_curve(const Example1Params& params) {
  params.validate();
  return HoloCurve::example1(params.c);
}

HoloCurve example2_curve(const Example2Params& params) {
  params.validate();
  return HoloCurve::example2(params.c);
}

double example1_conformal_factor_sq(double c, double x) {
  return kPi * kPi * (c * c * std::exp(2.0 * kPi * x) + std::exp(-2.0 * kPi * x));
}

double example1_sigma_x(double c, double x) {
  const double s = c * c * std::exp(4.0 * kPi * x);
  return kPi * (s - 1.0) / (s + 1.0);
}

double example1_sigma_xx(double c, double x) {
  const double s = c * c * std::exp(4.0 * kPi * x);
  return 8.0 * kPi * kPi / (s + 2.0 + 1.0 / s);
}

double example1_abs_schwarzian(double c, double x) {
  const double sx = example1_sigma_x(c, x);
  return 0.5 * (sx * sx - example1_sigma_xx(c, x));
}

double example1_curvature_term(double c, double x) { return 0.75 * example1_sigma_xx(c, x); }

cplx example2_f(double c, cplx z) {
  const cplx phi = std::atanh(z);
  return (c * phi + kI) / (c * phi - kI);
}

cplx example2_df(double c, cplx z) {
  const cplx phi = std::atanh(z);
  const cplx d = c * phi - kI;
  return -2.0 * kI * c / ((1.0 - z * z) * d * d);
}

double example2_conformal_factor_sq(double c, cplx z) {
  const double f2 = std::norm(example2_f(c, z));
  return std::norm(example2_df(c, z)) * (1.0 + 1.0 / (f2 * f2));
}

cplx example2_schwarzian(double c, cplx z) {
  const cplx f = example2_f(c, z);
  const cplx df = example2_df(c, z);
  const double f2 = std::norm(f);
  const cplx u = std::conj(f) * df;
  const cplx w = 1.0 - z * z;
  return 2.0 / (w * w) + 6.0 * u * u / ((1.0 + f2 * f2) * (1.0 + f2 * f2));
}

double example2_scaled_curvature(double c, cplx z) {
  const cplx f = example2_f(c, z);
  const double f2 = std::norm(f);
  return 8.0 * std::norm(f * example2_df(c, z)) / ((1.0 + f2 * f2) * (1.0 + f2 * f2));
}

cplx example2_zeta(double c, cplx Phi) {
  const cplx a = 1.0 + c * c * Phi * Phi;
  const double m = std::norm(c * Phi - kI), p = std::norm(c * Phi + kI);
  const double den = m * m + p * p;
  return 12.0 * c * c * a * a / (den * den);
}

double example2_reduced_criterion(const Example2Params& params, cplx z) {
  params.validate();
  if (!(std::abs(z) < 1.0)) throw DomainError("reduced criterion needs |z| < 1");
  const cplx zeta = example2_zeta(params.c, std::atanh(z));
  const double lhs = std::abs(1.0 - zeta) + std::abs(zeta);
  const double r2 = std::norm(z);
  const double rhs = std::norm(1.0 - z * z) / ((1.0 - r2) * (1.0 - r2));
  return rhs - lhs;
}

std::vector<cplx> lemma7_strip_samples(std::size_t count, std::uint64_t seed) {
  // reuse the disk recurrence for its (u, v) pairs: a point at radius sqrt(u), angle 2 pi v
  const auto pts = disk_samples(count, seed, 0.0, 1.0 - 1e-12);
  std::vector<cplx> out;
  out.reserve(count);
  for (std::size_t k = 0; k < pts.size(); k += 2) {
    const double u = std::norm(pts[k]);
    double v = std::arg(pts[k]) / (2.0 * kPi);
    if (v < 0.0) v += 1.0;
    const cplx phi(std::sinh(-8.0 + 16.0 * u), (kPi / 4.0) * (2.0 * v - 1.0));
    out.push_back(phi);
    if (out.size() < count) out.push_back(-phi);
  }
  return out;
}

std::vector<cplx> lemma7_disk_samples(std::size_t count, std::uint64_t seed, double r_max) {
  const auto pts = disk_samples(count, seed, 0.0, r_max);
  std::vector<cplx> out;
  out.reserve(pts.size());
  for (const cplx& z : pts) out.push_back(std::atanh(z));
  return out;
}

Lemma7Report lemma7_check(const Example2Params& params, const std::vector<cplx>& phi_samples) {
  const double c = params.c;
  if (!(c > 0.0 && c <= 0.2)) throw DomainError("lemma 7 check needs 0 < c <= 0.2");
  Lemma7Report rep;
  rep.c = c;
  rep.samples = phi_samples.size();
  const double c3 = c * c * c, c4 = c3 * c;

  struct Row {
    double lhs1, lhs2, lhs3, base, im;
    cplx phi;
  };
  std::vector<Row> rows;
  rows.reserve(phi_samples.size());
  for (const cplx& phi : phi_samples) {
    const cplx zeta = example2_zeta(c, phi);
    rows.push_back({std::abs(1.0 - zeta.real()), std::abs(zeta.imag()), std::abs(1.0 - zeta), 1.0 - std::abs(zeta),
                    std::abs(phi.imag()), phi});
  }

  constexpr double kFlat = 1e-14;  // rounding allowance on the real locus
  for (const Row& r : rows) {
    if (r.im > 0.0) {
      rep.A = std::max(rep.A, (r.lhs1 - r.base) / (c4 * r.im * r.im));
      rep.B = std::max(rep.B, r.lhs2 / (c3 * r.im));
      rep.C = std::max(rep.C, (r.lhs3 - r.base) / (c4 * r.im * r.im));
    } else if (r.lhs1 - r.base > kFlat || r.lhs2 > kFlat || r.lhs3 - r.base > kFlat) {
      if (!rep.witness) rep.witness = r.phi;
    }
  }

  rep.slack_A = rep.slack_B = rep.slack_C = std::numeric_limits<double>::infinity();
  for (const Row& r : rows) {
    rep.slack_A = std::min(rep.slack_A, r.base + rep.A * c4 * r.im * r.im - r.lhs1);
    rep.slack_B = std::min(rep.slack_B, rep.B * c3 * r.im - r.lhs2);
    rep.slack_C = std::min(rep.slack_C, r.base + rep.C * c4 * r.im * r.im - r.lhs3);
  }
  if (rep.witness) {
    std::ostringstream os;
    os.precision(17);
    os << "estimate fails on the real locus at Phi = " << rep.witness->real() << "+" << rep.witness->imag() << "i";
    rep.message = os.str();
  } else {
    rep.message = "fitted";
  }
  return rep;
}

double lemma7_expansion_deviation(double c, cplx Phi) {
  const cplx a = 1.0 + c * c * Phi * Phi;
  const cplx lhs = 2.0 * kI * std::imag(a * a);
  const cplx pb = std::conj(Phi);
  const cplx rhs = std::pow(c, 4) * (std::pow(Phi, 4) - std::pow(pb, 4)) + 2.0 * c * c * (Phi * Phi - pb * pb);
  return std::abs(lhs - rhs);
}

std::vector<NamedCurve> builtin_curves() {
  using namespace component;
  std::vector<NamedCurve> out;
  out.push_back({"identity", HoloCurve::identity()});
  out.push_back({"mobius", HoloCurve::from_components({Mobius{1.0, 0.2, 0.3, 1.0}}, "mobius")});
  out.push_back({"exponential", HoloCurve::from_components({Exponential{1.0, 1.0}}, "exp")});
  out.push_back({"polynomial", HoloCurve::polynomial({{0.0, 1.0, 0.2}, {0.0, 0.0, 0.0, 0.3}}, "polynomial")});
  out.push_back({"planar", HoloCurve::polynomial({{0.0, 1.0, 0.2}, {1.0, 2.0, 0.4}}, "planar")});
  out.push_back({"example1", example1_curve()});
  out.push_back({"example2", example2_curve()});
  return out;
}

void write_example1_table(std::ostream& out, const Example1Params& params, int points) {
  const HoloCurve curve = example1_curve(params);
  if (points < 2) throw DomainError("example table needs at least two points");
  const auto old = out.precision(17);
  out << "x,abs_schwarzian,curv_term,sum\n";
  for (int k = 0; k < points; ++k) {
    const double x = -0.99 + 1.98 * k / (points - 1);
    const ConformalData d = conformal_data(eval_curve(curve, cplx(x, 0.0)));
    const double s = std::abs(d.schwarzian), t = d.curvature_term();
    out << x << ',' << s << ',' << t << ',' << s + t << '\n';
  }
  out.precision(old);
}

SlackHistogram example2_slack_histogram(const Example2Params& params, int n_r, int n_theta, double r_max, int bins) {
  params.validate();
  if (n_r < 1 || n_theta < 1 || bins < 1) throw DomainError("histogram sizes must be positive");
  std::vector<double> slack;
  std::vector<cplx> zs;
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_theta; ++j) {
      const cplx z = std::polar(r_max * (i + 1) / n_r, 2.0 * kPi * j / n_theta);
      zs.push_back(z);
      slack.push_back(example2_reduced_criterion(params, z));
    }
  SlackHistogram h;
  const auto [lo_it, hi_it] = std::minmax_element(slack.begin(), slack.end());
  h.min_slack = *lo_it;
  h.argmin = zs[static_cast<std::size_t>(lo_it - slack.begin())];
  const double lo = *lo_it, hi = std::max(*hi_it, lo + 1e-300);
  for (int b = 0; b <= bins; ++b) h.edges.push_back(lo + (hi - lo) * b / bins);
  h.bins.assign(bins, 0);
  for (double s : slack) {
    int b = static_cast<int>((s - lo) / (hi - lo) * bins);
    h.bins[std::clamp(b, 0, bins - 1)]++;
  }
  return h;
}

}  // namespace holoschwarz
