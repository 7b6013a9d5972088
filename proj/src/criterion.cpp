#include "holoschwarz/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/parallel.hpp"

namespace holoschwarz {

void GridSpec::validate() const {
  if (n_r < 8 || n_theta < 8) throw DomainError("grid counts must be at least 8");
  if (!(r_max > 0.0) || r_max > 1.0 - 1e-6) throw DomainError("grid r_max must lie in (0, 1 - 1e-6]");
  if (refine_levels < 0) throw DomainError("grid refine_levels must be nonnegative");
}

std::vector<cplx> GridSpec::points() const {
  validate();
  std::vector<cplx> pts;
  pts.reserve(static_cast<std::size_t>(n_r) * n_theta + 1);
  pts.emplace_back(0.0, 0.0);
  for (int i = 0; i < n_r; ++i) {
    const double r = r_max * (i + 1) / n_r;
    for (int j = 0; j < n_theta; ++j) pts.push_back(std::polar(r, 2.0 * kPi * j / n_theta));
  }
  return pts;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::HoldsWithEquality: return "holds-with-equality";
  }
  return "unknown";
}

namespace {

CriterionPoint evaluate_point(const HoloCurve& curve, const NehariFunction& p, cplx z) {
  const ConformalData d = conformal_data(eval_curve(curve, z));
  CriterionPoint pt;
  pt.z = z;
  pt.abs_schwarzian = std::abs(d.schwarzian);
  pt.curvature_term = d.curvature_term();
  pt.bound = 2.0 * p(std::abs(z));
  pt.margin = pt.bound - pt.abs_schwarzian - pt.curvature_term;
  return pt;
}

std::vector<CriterionPoint> evaluate_all(const HoloCurve& curve, const NehariFunction& p,
                                         const std::vector<cplx>& zs, int workers) {
  std::vector<CriterionPoint> out(zs.size());
  parallel_for(zs.size(), workers, [&](std::size_t i) { out[i] = evaluate_point(curve, p, zs[i]); });
  return out;
}

std::size_t argmin_index(const std::vector<CriterionPoint>& pts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].margin < pts[best].margin) best = i;
  return best;
}

}  // namespace

CriterionReport scan(const HoloCurve& curve, const NehariFunction& p, const GridSpec& grid, int workers) {
  CriterionReport rep;
  rep.points = evaluate_all(curve, p, grid.points(), workers);

  double dr = grid.r_max / grid.n_r;
  double dt = 2.0 * kPi / grid.n_theta;
  for (int level = 0; level < grid.refine_levels; ++level) {
    dr *= 0.5;
    dt *= 0.5;
    const cplx c = rep.points[argmin_index(rep.points)].z;
    const double rc = std::abs(c);
    const double tc = std::arg(c);
    std::vector<cplx> extra;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b) {
        if (a == 0 && b == 0) continue;
        const double r = rc + a * dr;
        if (!(r > 0.0) || r > grid.r_max) continue;
        extra.push_back(std::polar(r, tc + b * dt));
      }
    auto more = evaluate_all(curve, p, extra, workers);
    rep.points.insert(rep.points.end(), more.begin(), more.end());
  }

  rep.tol_eq = 1e-6 * std::max(1.0, 2.0 * p(0.0));
  const std::size_t k = argmin_index(rep.points);
  rep.min_margin = rep.points[k].margin;
  rep.argmin = rep.points[k].z;
  for (std::size_t i = 0; i < rep.points.size(); ++i)
    if (std::abs(rep.points[i].margin) <= rep.tol_eq) rep.equality_locus.push_back(i);
  if (rep.min_margin < -rep.tol_eq)
    rep.verdict = Verdict::Fails;
  else if (std::abs(rep.min_margin) <= rep.tol_eq)
    rep.verdict = Verdict::HoldsWithEquality;
  else
    rep.verdict = Verdict::Holds;
  return rep;
}

void write_scan_csv(std::ostream& out, const CriterionReport& report) {
  const auto old = out.precision(17);
  out << "re_z,im_z,abs_schwarzian,curv_term,bound,margin\n";
  for (const auto& pt : report.points)
    out << pt.z.real() << ',' << pt.z.imag() << ',' << pt.abs_schwarzian << ',' << pt.curvature_term << ','
        << pt.bound << ',' << pt.margin << '\n';
  out.precision(old);
}

void write_scan_summary(std::ostream& out, const CriterionReport& report) {
  const auto old = out.precision(17);
  out << "verdict=" << to_string(report.verdict) << '\n'
      << "min_margin=" << report.min_margin << '\n'
      << "argmin=" << report.argmin.real() << ',' << report.argmin.imag() << '\n'
      << "equality_locus_size=" << report.equality_locus.size() << '\n'
      << "points=" << report.points.size() << '\n'
      << "tol_eq=" << report.tol_eq << '\n';
  out.precision(old);
}

NormalizedCurve normalize(const HoloCurve& curve) {
  const auto jets = curve.jets(cplx(0.0, 0.0));
  double q = 0.0, q2 = 0.0;
  for (const auto& j : jets) {
    q += std::norm(j.d1);
    q2 += std::norm(j.d2);
  }
  if (!(q > 0.0)) throw DomainError("normalize: tangent vanishes at the origin");
  const double t = std::sqrt(q);
  NormalizedCurve out{t == 1.0 ? curve : curve.scaled(1.0 / t), t, std::sqrt(q2) / t};
  return out;
}

double covering_bound(const ExtremalProfile& profile, double phi2, double r) {
  if (!(phi2 >= 0.0)) throw DomainError("covering bound: |phi''(0)| must be nonnegative");
  if (!profile.p_nondecreasing())
    throw DomainError("covering bound not applicable: p is not nondecreasing on [0, 1)");
  const double psi = profile.at(r).Psi;
  return 2.0 * psi / (2.0 + phi2 * psi);
}

// ---------------------------------------------------------------------------
// mesh geodesic

namespace {

double conformal_factor(const HoloCurve& curve, cplx z) {
  double q = 0.0;
  for (const auto& j : curve.jets(z)) q += std::norm(j.d1);
  return std::sqrt(q);
}

// Gauss-Legendre, 4 nodes on [0, 1]
constexpr double kGLx[4] = {0.06943184420297371, 0.33000947820757187, 0.66999052179242813, 0.93056815579702629};
constexpr double kGLw[4] = {0.17392742256872693, 0.32607257743127307, 0.32607257743127307, 0.17392742256872693};

double radial_segment(const HoloCurve& curve, cplx from, double r) {
  const double r0 = std::abs(from);
  if (r <= r0) return 0.0;
  const cplx dir = r0 > 0.0 ? from / r0 : cplx(1.0, 0.0);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) sum += kGLw[k] * conformal_factor(curve, dir * (r0 + kGLx[k] * (r - r0)));
  return sum * (r - r0);
}

double mesh_distance(const HoloCurve& curve, double r, int res) {
  if (res % 2) ++res;
  const double h0 = 2.0 * r / res;
  const double R = std::min(r + 2.0 * h0, 1.0 - 1e-9);
  const double h = 2.0 * R / res;
  const int n = res + 1;
  const int c = res / 2;
  auto node = [&](int i, int j) { return cplx(h * (i - c), h * (j - c)); };
  auto inside = [&](int i, int j) { return i >= 0 && j >= 0 && i < n && j < n && std::abs(node(i, j)) < R; };

  // e^sigma on the half-step lattice, which holds every edge midpoint
  const int m = 2 * res + 1;
  std::vector<double> half(static_cast<std::size_t>(m) * m, -1.0);
  auto factor_at = [&](int hi, int hj) {
    double& v = half[static_cast<std::size_t>(hi) * m + hj];
    if (v < 0.0) v = conformal_factor(curve, cplx(0.5 * h * (hi - res), 0.5 * h * (hj - res)));
    return v;
  };

  static constexpr int kOff[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},   {1, -1},  {-1, 1},  {-1, -1},
                                      {1, 2},  {2, 1},  {-1, 2}, {-2, 1}, {1, -2},  {2, -1},  {-1, -2}, {-2, -1}};
  std::vector<double> dist(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<std::size_t>(c) * n + c] = 0.0;
  heap.emplace(0.0, c * n + c);
  while (!heap.empty()) {
    const auto [d, id] = heap.top();
    heap.pop();
    if (d > dist[id]) continue;
    const int i = id / n, j = id % n;
    for (const auto& o : kOff) {
      const int a = i + o[0], b = j + o[1];
      if (!inside(a, b)) continue;
      const double len = h * std::hypot(o[0], o[1]);
      const double w = len * factor_at(i + a, j + b);
      const double nd = d + w;
      if (nd < dist[static_cast<std::size_t>(a) * n + b]) {
        dist[static_cast<std::size_t>(a) * n + b] = nd;
        heap.emplace(nd, a * n + b);
      }
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx z = node(i, j);
      const double az = std::abs(z);
      if (az > r || r - az > 2.0 * h) continue;
      const double d = dist[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(d)) continue;
      best = std::min(best, d + radial_segment(curve, z, r));
    }
  if (!std::isfinite(best)) best = radial_segment(curve, cplx(0.0, 0.0), r);
  return best;
}

}  // namespace

double intrinsic_min_distance(const HoloCurve& curve, double r, const GeodesicOptions& options) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("geodesic radius must lie in (0, 1)");
  if (options.resolution < 16) throw DomainError("geodesic resolution must be at least 16");
  const double fine = mesh_distance(curve, r, options.resolution);
  if (options.refinement_check) {
    const double coarse = mesh_distance(curve, r, options.resolution / 2);
    if (fine > coarse + options.refinement_tolerance * std::max(1.0, coarse))
      throw NumericalError("mesh too coarse: refinement increased the distance estimate");
  }
  return fine;
}

CoveringProfile covering_profile(const HoloCurve& curve, const ExtremalProfile& profile,
                                 const std::vector<double>& radii, const GeodesicOptions& options) {
  const NormalizedCurve nc = normalize(curve);
  CoveringProfile out;
  out.radii = radii;
  out.phi2_at_0 = nc.phi2_at_0;
  for (double r : radii) {
    out.bound.push_back(covering_bound(profile, nc.phi2_at_0, r));
    out.measured.push_back(intrinsic_min_distance(nc.curve, r, options));
  }
  return out;
}

double lemma4_margin(const HoloCurve& curve, const ExtremalProfile& profile, cplx z) {
  const double r = std::abs(z);
  if (r == 0.0) throw DomainError("lemma 4 margin needs z != 0; use the radial limit");
  const ConformalData d = conformal_data(eval_curve(curve, z));
  const ProfilePoint pt = profile.at(r);
  const cplx zeta = z / r;
  return (pt.A + pt.p) - std::abs(zeta * zeta * d.schwarzian + pt.A - pt.p) - d.curvature_term();
}

// ---------------------------------------------------------------------------
// boundary

double boundary_weight(const HoloCurve& curve, const ExtremalProfile& profile, cplx z) {
  const ProfilePoint pt = profile.at(std::abs(z));
  return std::sqrt(pt.PhiP / conformal_factor(curve, z));
}

cplx boundary_weight_log_gradient(const HoloCurve& curve, const ExtremalProfile& profile, cplx z) {
  const double r = std::abs(z);
  const ConformalData d = conformal_data(eval_curve(curve, z));
  const cplx radial = r > 0.0 ? profile.at(r).log_derivative * (z / r) : cplx(0.0, 0.0);
  return 0.5 * radial - 0.5 * std::conj(d.P / d.Q);
}

double radial_omega_second(const HoloCurve& curve, const ExtremalProfile& profile, double theta, double s,
                           double h) {
  if (!(h > 0.0) || s - 2.0 * h < 0.0) throw DomainError("omega stencil leaves s >= 0");
  const cplx dir = std::polar(1.0, theta);
  double f[5];
  for (int k = 0; k < 5; ++k) {
    const double r = profile.inverse_phi(s + (k - 2) * h);
    f[k] = boundary_weight(curve, profile, r * dir);
  }
  return (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
}

namespace {

// Newton on grad log w with a finite-difference Jacobian.
std::optional<cplx> polish_critical(const HoloCurve& curve, const ExtremalProfile& profile, cplx z, double r_max) {
  for (int iter = 0; iter < 50; ++iter) {
    const cplx g = boundary_weight_log_gradient(curve, profile, z);
    if (std::abs(g) < 1e-12) return z;
    const double e = 1e-7;
    const cplx gx = (boundary_weight_log_gradient(curve, profile, z + e) - boundary_weight_log_gradient(curve, profile, z - e)) / (2 * e);
    const cplx gy = (boundary_weight_log_gradient(curve, profile, z + cplx(0, e)) -
                     boundary_weight_log_gradient(curve, profile, z - cplx(0, e))) / (2 * e);
    const double det = gx.real() * gy.imag() - gy.real() * gx.imag();
    if (std::abs(det) < 1e-300) return std::nullopt;
    const double dx = (g.real() * gy.imag() - gy.real() * g.imag()) / det;
    const double dy = (gx.real() * g.imag() - g.real() * gx.imag()) / det;
    z -= cplx(dx, dy);
    if (!(std::abs(z) < r_max)) return std::nullopt;
  }
  return std::abs(boundary_weight_log_gradient(curve, profile, z)) < 1e-9 ? std::optional<cplx>(z) : std::nullopt;
}

}  // namespace

BoundaryDiagnostics boundary_diagnostics(const HoloCurve& curve, const ExtremalProfile& profile,
                                         const GridSpec& grid, const BoundaryOptions& options) {
  if (grid.r_max > profile.x_max()) throw DomainError("grid extends beyond the profile range");
  if (options.rays < 1 || options.s_points < 1) throw DomainError("boundary sampling counts must be positive");
  BoundaryDiagnostics out;
  out.grid = grid.points();
  out.w.resize(out.grid.size());
  std::vector<double> gnorm(out.grid.size());
  parallel_for(out.grid.size(), 0, [&](std::size_t i) {
    out.w[i] = boundary_weight(curve, profile, out.grid[i]);
    gnorm[i] = std::abs(boundary_weight_log_gradient(curve, profile, out.grid[i]));
  });

  // local minima of |grad log w| on the polar grid as Newton seeds
  const int nr = grid.n_r, nt = grid.n_theta;
  auto idx = [&](int i, int j) -> std::size_t {
    return i < 0 ? 0 : 1 + static_cast<std::size_t>(i) * nt + static_cast<std::size_t>((j % nt + nt) % nt);
  };
  std::vector<cplx> seeds{out.grid[0]};
  for (int i = 0; i < nr - 1; ++i)
    for (int j = 0; j < nt; ++j) {
      const double v = gnorm[idx(i, j)];
      bool is_min = true;
      for (int a = -1; a <= 1 && is_min; ++a)
        for (int b = -1; b <= 1; ++b) {
          if ((a || b) && i + a < nr && gnorm[idx(i + a, j + b)] < v) {
            is_min = false;
            break;
          }
        }
      if (is_min) seeds.push_back(out.grid[idx(i, j)]);
    }
  for (const cplx& s : seeds) {
    auto z = polish_critical(curve, profile, s, grid.r_max);
    if (!z) continue;
    bool dup = false;
    for (const auto& c : out.critical_points)
      if (std::abs(c.z - *z) < 1e-6) dup = true;
    if (!dup) out.critical_points.push_back({*z, boundary_weight(curve, profile, *z)});
  }

  // omega'' along rays, s = Phi(r)
  const double s_max = profile.at(grid.r_max).Phi;
  const double h = s_max / (4.0 * options.s_points);
  const std::size_t total = static_cast<std::size_t>(options.rays) * options.s_points;
  std::vector<double> om(total);
  parallel_for(total, 0, [&](std::size_t k) {
    const int ray = static_cast<int>(k / options.s_points);
    const int si = static_cast<int>(k % options.s_points);
    const double s = s_max * (si + 0.5) / options.s_points;
    om[k] = radial_omega_second(curve, profile, 2.0 * kPi * ray / options.rays, s, h);
  });
  std::size_t worst = 0;
  for (std::size_t k = 1; k < total; ++k)
    if (om[k] < om[worst]) worst = k;
  out.worst_omega2 = om[worst];
  out.worst_theta = 2.0 * kPi * static_cast<double>(worst / options.s_points) / options.rays;
  out.worst_s = s_max * (static_cast<double>(worst % options.s_points) + 0.5) / options.s_points;

  // a s + b <= w(z) for r0 < |z| < r_max: b from half the smallest w, a as large as allowed
  DistortionFit& fit = out.fit;
  fit.r0 = options.r0;
  double wmin = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> samples;  // (s, w)
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    const double r = std::abs(out.grid[i]);
    if (r <= fit.r0) continue;
    samples.emplace_back(profile.at(r).Phi, out.w[i]);
    wmin = std::min(wmin, out.w[i]);
  }
  if (samples.empty() || !(wmin > 0.0) || !std::isfinite(wmin)) {
    fit.message = "no distortion bound at this resolution";
  } else {
    fit.b = 0.5 * wmin;
    fit.a = std::numeric_limits<double>::infinity();
    for (const auto& [s, w] : samples) fit.a = std::min(fit.a, (w - fit.b) / s);
    fit.feasible = fit.a > 0.0 && std::isfinite(fit.a);
    fit.message = fit.feasible ? "fit" : "no distortion bound at this resolution";
  }

  out.lambda = profile.lambda();
  out.holder_exponent = std::sqrt(std::clamp(1.0 - out.lambda, 0.0, 1.0));
  out.logarithmic_regime = out.lambda >= 1.0 - 1e-9;
  return out;
}

BoundaryTrace boundary_trace(const HoloCurve& curve, double eps, int samples) {
  if (!(eps >= 1e-4 && eps <= 1e-2)) throw DomainError("boundary trace eps must lie in [1e-4, 1e-2]");
  if (samples < 16) throw DomainError("boundary trace needs at least 16 samples");
  BoundaryTrace out;
  out.radius = 1.0 - eps;
  out.samples = samples;
  std::vector<std::vector<cplx>> img(samples);
  std::vector<cplx> zs(samples);
  for (int k = 0; k < samples; ++k) {
    zs[k] = std::polar(out.radius, 2.0 * kPi * k / samples);
    img[k] = curve.values(zs[k]);
  }
  // separation >= pi/8 in index units, with a little slack against rounding
  const double min_sep = samples / 16.0 - 1e-9;
  out.min_distance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j) {
      const int gap = std::min(j - i, samples - (j - i));
      if (gap < min_sep) continue;
      double d2 = 0.0;
      for (std::size_t c = 0; c < img[i].size(); ++c) d2 += std::norm(img[i][c] - img[j][c]);
      const double d = std::sqrt(d2);
      if (d < out.min_distance) {
        out.min_distance = d;
        out.z1 = zs[i];
        out.z2 = zs[j];
      }
    }
  return out;
}

}  // namespace holoschwarz
