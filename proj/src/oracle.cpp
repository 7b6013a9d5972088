#include "holoschwarz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/parallel.hpp"
#include "holoschwarz/schwarzian.hpp"

namespace holoschwarz {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_double(std::uint64_t& state) { return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53; }

Eigen::VectorXd realify(const std::vector<cplx>& v) {
  Eigen::VectorXd out(2 * v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    out[2 * k] = v[k].real();
    out[2 * k + 1] = v[k].imag();
  }
  return out;
}

}  // namespace

std::vector<cplx> disk_samples(std::size_t count, std::uint64_t seed, double r_min, double r_max) {
  if (!(r_min >= 0.0 && r_min < r_max && r_max < 1.0)) throw DomainError("sample radii must satisfy 0 <= r_min < r_max < 1");
  constexpr double g = 1.32471795724474602596;  // plastic number
  constexpr double a1 = 1.0 / g, a2 = 1.0 / (g * g);
  std::uint64_t state = seed;
  const double u0 = unit_double(state), v0 = unit_double(state);
  std::vector<cplx> out;
  out.reserve(count);
  const double lo = r_min * r_min, span = r_max * r_max - r_min * r_min;
  for (std::size_t k = 0; out.size() < count; ++k) {
    const double u = std::fmod(u0 + (k + 1) * a1, 1.0);
    const double v = std::fmod(v0 + (k + 1) * a2, 1.0);
    const cplx z = std::polar(std::sqrt(lo + u * span), 2.0 * kPi * v);
    out.push_back(z);
    if (out.size() < count) out.push_back(-z);
  }
  return out;
}

InjectivityReport injectivity_scan(const HoloCurve& curve, std::size_t samples, double delta, std::uint64_t seed,
                                   const InjectivityOptions& options) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("injectivity separation must lie in (0, 1)");
  if (samples < 2) throw DomainError("injectivity scan needs at least two samples");
  const auto zs = disk_samples(samples, seed, options.r_min, options.r_max);
  std::vector<Eigen::VectorXd> img(zs.size());
  parallel_for(zs.size(), 0, [&](std::size_t i) { img[i] = realify(curve.values(zs[i])); });

  // two fixed orthonormal directions; the projection is 1-Lipschitz, so pairs
  // closer than a cell in R^2n sit in neighbouring projected cells
  const Eigen::Index m = img[0].size();
  std::uint64_t dstate = 0x5EEDULL;
  Eigen::VectorXd e1(m), e2(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    e1[k] = unit_double(dstate) - 0.5;
    e2[k] = unit_double(dstate) - 0.5;
  }
  e1.normalize();
  e2 -= e2.dot(e1) * e1;
  if (e2.norm() < 1e-12) e2 = Eigen::VectorXd::Unit(m, m > 1 ? 1 : 0);
  e2.normalize();
  std::vector<std::pair<double, double>> proj(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) proj[i] = {img[i].dot(e1), img[i].dot(e2)};

  InjectivityReport rep;
  rep.samples = zs.size();
  rep.delta = delta;
  rep.min_distance = std::numeric_limits<double>::infinity();

  double cell = 8.0 * options.threshold;
  for (int pass = 0; pass < 200; ++pass) {
    auto key = [&](long long a, long long b) {
      return static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(b);
    };
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    std::vector<std::pair<long long, long long>> cells(img.size());
    bool overflow = false;
    for (std::size_t i = 0; i < img.size(); ++i) {
      const double a = std::floor(proj[i].first / cell), b = std::floor(proj[i].second / cell);
      if (std::abs(a) > 4e18 || std::abs(b) > 4e18) overflow = true;
      cells[i] = {static_cast<long long>(a), static_cast<long long>(b)};
    }
    if (overflow) {
      cell *= 2.0;
      continue;
    }
    for (std::size_t i = 0; i < img.size(); ++i) buckets[key(cells[i].first, cells[i].second)].push_back(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < img.size(); ++i)
      for (int da = -1; da <= 1; ++da)
        for (int db = -1; db <= 1; ++db) {
          auto it = buckets.find(key(cells[i].first + da, cells[i].second + db));
          if (it == buckets.end()) continue;
          for (std::size_t j : it->second) {
            if (j <= i || cells[j].first != cells[i].first + da || cells[j].second != cells[i].second + db) continue;
            if (std::abs(zs[i] - zs[j]) < delta) continue;
            const double d = (img[i] - img[j]).norm();
            if (d < best || (d == best && (i < bi || (i == bi && j < bj)))) {
              best = d;
              bi = i;
              bj = j;
            }
          }
        }
    if (best <= cell) {
      rep.min_distance = best;
      rep.min_z1 = zs[bi];
      rep.min_z2 = zs[bj];
      break;
    }
    cell *= 2.0;
  }
  rep.collision = rep.min_distance < options.threshold;
  return rep;
}

SecondFormEstimate second_form_sq_fd(const HoloCurve& curve, cplx z, double h) {
  if (std::abs(z) + 3.0 * h >= 1.0) throw DomainError("finite-difference stencil leaves the disk");
  const RealCurveSample sx =
      finite_difference_sample([&](double t) { return realify(curve.values(z + t)); }, 0.0, h);
  const RealCurveSample sy =
      finite_difference_sample([&](double t) { return realify(curve.values(z + cplx(0.0, t))); }, 0.0, h);
  Eigen::VectorXd t1 = sx.x1, t2 = sy.x1;
  const double speed_sq = t1.squaredNorm();
  if (!(speed_sq > 0.0)) throw DomainError("tangent vanishes");
  t1.normalize();
  t2 -= t2.dot(t1) * t1;
  t2.normalize();
  Eigen::VectorXd n = sx.x2 - sx.x2.dot(t1) * t1 - sx.x2.dot(t2) * t2;
  SecondFormEstimate out;
  out.value = n.squaredNorm() / (speed_sq * speed_sq);
  out.scale = sx.x2.squaredNorm() / (speed_sq * speed_sq);
  return out;
}

bool IdentitySuiteReport::pass() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityResult& r) { return r.pass(); });
}

MobiusRn standard_range_mobius(int dim, double spread) {
  if (dim < 2) throw DomainError("range Mobius map needs dimension at least 2");
  Eigen::VectorXd shift = Eigen::VectorXd::Constant(dim, 0.25 * spread);
  Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
  center[0] = -3.0 * spread;
  center[dim - 1] = 2.0 * spread;
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dim, dim);
  const double a = 0.7;
  q(0, 0) = std::cos(a);
  q(0, 1) = -std::sin(a);
  q(1, 0) = std::sin(a);
  q(1, 1) = std::cos(a);
  MobiusRn m(dim);
  m.translate(shift).invert(center, 2.0 * spread).rotate(q).scale(1.0 / spread);
  return m;
}

std::pair<double, double> path_parameter_range(const PlaneCurve& path, double r_max) {
  switch (path.kind()) {
    case PlaneCurve::Kind::Diameter:
      return {-r_max, r_max};
    case PlaneCurve::Kind::CircleArc:
      return {0.0, 2.0 * kPi / path.at(0.0).curvature};
    case PlaneCurve::Kind::Custom:
      break;
  }
  auto inside = [&](double t) {
    try {
      return std::abs(path.at(t).value) <= r_max;
    } catch (const DomainError&) {
      return false;
    }
  };
  if (!inside(0.0)) throw DomainError("custom path must pass through radius r_max at t = 0");
  double lo = 0.0, hi = 0.0;
  while (lo > -10.0 && inside(lo - 1e-2)) lo -= 1e-2;
  while (hi < 10.0 && inside(hi + 1e-2)) hi += 1e-2;
  return {lo, hi};
}

IdentitySuiteReport identity_suite(const std::vector<HoloCurve>& curves, const std::vector<PlaneCurve>& paths,
                                   std::uint64_t seed, const IdentitySuiteOptions& options) {
  if (curves.empty() || paths.empty()) throw DomainError("identity suite needs curves and paths");
  IdentityResult second{"second_form", 1e-8, 0.0, {}, 0};
  IdentityResult lemma2{"lemma2", 1e-5, 0.0, {}, 0};
  IdentityResult precomp{"precomposition", 1e-8, 0.0, {}, 0};
  IdentityResult invariance{"s1_range_mobius", 1e-4, 0.0, {}, 0};

  auto record = [](IdentityResult& r, double dev, const std::string& where) {
    ++r.checks;
    if (r.checks == 1 || !(dev <= r.worst)) {  // NaN propagates as a failure
      r.worst = std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev;
      r.location = where;
    }
  };
  auto where = [](const HoloCurve& c, const std::string& extra) {
    std::ostringstream os;
    os.precision(17);
    os << c.label() << " " << extra;
    return os.str();
  };

  std::uint64_t state = seed;
  for (const auto& curve : curves) {
    const auto zs = disk_samples(options.points_per_curve, splitmix64(state), 0.0, options.r_max);
    double spread = 1.0;
    for (const cplx& z : zs) {
      const ConformalData d = conformal_data(eval_curve(curve, z));
      std::ostringstream loc;
      loc.precision(17);
      loc << "z=" << z.real() << "," << z.imag();

      const double half_k = 0.5 * std::abs(d.curvature);
      record(second, std::abs(d.second_form_sq - half_k) / (1.0 + half_k), where(curve, loc.str()));

      const DiskMobius t(unit_double(state) - 0.5, 2.0 * kPi * unit_double(state));
      const Jet3 tj = t.jet(z);
      const cplx lhs = conformal_data(eval_curve(curve.precomposed(t), z)).schwarzian;
      const cplx rhs = conformal_data(eval_curve(curve, tj.value)).schwarzian * tj.d1 * tj.d1;
      record(precomp, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)), where(curve, loc.str()));

      for (const cplx& v : curve.values(z)) spread = std::max(spread, std::abs(v));
    }

    const MobiusRn m = standard_range_mobius(2 * static_cast<int>(curve.dimension()), spread);
    for (const auto& path : paths) {
      const auto [lo, hi] = path_parameter_range(path, options.r_max);
      for (std::size_t k = 0; k < options.times_per_path; ++k) {
        // keep the finite-difference stencils inside the range
        const double t = lo + 0.01 + (hi - lo - 0.02) * unit_double(state);
        std::ostringstream loc;
        loc.precision(17);
        loc << path.label() << " t=" << t;
        const double s1 = s1_of_composed_curve(curve, path, t);
        const double rhs = lemma2_rhs(curve, path, t);
        record(lemma2, std::abs(s1 - rhs) / (1.0 + std::abs(s1)), where(curve, loc.str()));
        record(invariance, s1_mobius_invariance_check(curve, path, m, t) / (1.0 + std::abs(s1)),
               where(curve, loc.str()));
      }
    }
  }
  return {{second, lemma2, precomp, invariance}};
}

}  // namespace holoschwarz
