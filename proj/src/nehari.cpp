#include "holoschwarz/nehari.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <variant>

// pchip.hpp in boost 1.74 calls isnan unqualified
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/numeric/odeint.hpp>

#include "holoschwarz/errors.hpp"

namespace holoschwarz {

namespace odeint = boost::numeric::odeint;

namespace {

struct ConstantP {
  double value;
};
struct InverseSquareP {};
struct HalfStripP {};
struct TabulatedP {
  boost::math::interpolators::pchip<std::vector<double>> interp;
  double x_last;
  double q_last;  // weighted value held beyond x_last
};
struct CustomP {
  std::function<double(double)> fn;
  std::string label;
};

double sech2(double t) {
  const double c = std::cosh(t);
  return 1.0 / (c * c);
}

}  // namespace

struct NehariFunction::Impl {
  std::variant<ConstantP, InverseSquareP, HalfStripP, TabulatedP, CustomP> shape;
};

NehariFunction NehariFunction::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw DomainError("constant weight must be finite and nonnegative");
  return NehariFunction(std::make_shared<Impl>(Impl{ConstantP{value}}), 1.0);
}

NehariFunction NehariFunction::inverse_square() {
  return NehariFunction(std::make_shared<Impl>(Impl{InverseSquareP{}}), 1.0);
}

NehariFunction NehariFunction::half_strip() {
  return NehariFunction(std::make_shared<Impl>(Impl{HalfStripP{}}), 1.0);
}

NehariFunction NehariFunction::tabulated(std::vector<double> x, std::vector<double> p) {
  if (x.size() != p.size()) throw DomainError("tabulated weight: grid and values differ in length");
  if (x.size() < 4) throw DomainError("tabulated weight: need at least 4 nodes");
  if (x.front() != 0.0) throw DomainError("tabulated weight: first node must be 0");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw DomainError("tabulated weight: nodes must increase strictly");
  if (!(x.back() < 1.0)) throw DomainError("tabulated weight: nodes must lie in [0, 1)");
  for (double v : p)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("tabulated weight: values must be positive");
  const double xl = x.back();
  const double ql = p.back() * (1.0 - xl * xl) * (1.0 - xl * xl);
  TabulatedP tab{boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(p)), xl, ql};
  return NehariFunction(std::make_shared<Impl>(Impl{std::move(tab)}), 1.0);
}

NehariFunction NehariFunction::custom(std::function<double(double)> p, std::string label) {
  if (!p) throw DomainError("custom weight: empty evaluator");
  return NehariFunction(std::make_shared<Impl>(Impl{CustomP{std::move(p), std::move(label)}}), 1.0);
}

NehariFunction NehariFunction::scaled(double k) const {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("weight scale must be positive");
  return NehariFunction(impl_, scale_ * k);
}

double NehariFunction::operator()(double x) const {
  if (!(std::abs(x) < 1.0)) throw DomainError("weight evaluated outside (-1, 1)");
  const double ax = std::abs(x);
  const double base = std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantP>) {
          return s.value;
        } else if constexpr (std::is_same_v<S, InverseSquareP>) {
          const double w = (1.0 - ax) * (1.0 + ax);
          return 1.0 / (w * w);
        } else if constexpr (std::is_same_v<S, HalfStripP>) {
          return 2.0 / ((1.0 - ax) * (1.0 + ax));
        } else if constexpr (std::is_same_v<S, TabulatedP>) {
          if (ax <= s.x_last) return s.interp(ax);
          const double w = (1.0 - ax) * (1.0 + ax);
          return s.q_last / (w * w);
        } else {
          return s.fn(x);
        }
      },
      impl_->shape);
  return scale_ * base;
}

double NehariFunction::weighted(double x) const {
  const double w = (1.0 - std::abs(x)) * (1.0 + std::abs(x));
  return (*this)(x) * w * w;
}

double NehariFunction::weighted_hyperbolic(double t) const {
  const double s2 = sech2(t);
  const double base = std::visit(
      [&](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantP>) {
          return s.value * s2 * s2;
        } else if constexpr (std::is_same_v<S, InverseSquareP>) {
          return 1.0;
        } else if constexpr (std::is_same_v<S, HalfStripP>) {
          return 2.0 * s2;
        } else if constexpr (std::is_same_v<S, TabulatedP>) {
          const double ax = std::tanh(std::abs(t));
          if (ax >= s.x_last) return s.q_last;
          return s.interp(ax) * s2 * s2;
        } else {
          double x = std::tanh(t);
          if (std::abs(x) >= 1.0) x = std::copysign(std::nextafter(1.0, 0.0), x);
          return s.fn(x) * s2 * s2;
        }
      },
      impl_->shape);
  return scale_ * base;
}

std::optional<double> NehariFunction::exact_lambda() const {
  return std::visit(
      [&](const auto& s) -> std::optional<double> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, InverseSquareP>) {
          return scale_;
        } else if constexpr (std::is_same_v<S, TabulatedP>) {
          return scale_ * s.q_last;
        } else if constexpr (std::is_same_v<S, CustomP>) {
          return std::nullopt;
        } else {
          return 0.0;
        }
      },
      impl_->shape);
}

double NehariFunction::lambda() const {
  if (auto l = exact_lambda()) return *l;
  return extrapolate_lambda(*this);
}

NehariFunction::Kind NehariFunction::kind() const {
  return static_cast<Kind>(impl_->shape.index());
}

double NehariFunction::scale() const { return scale_; }

std::string NehariFunction::label() const {
  std::string base = std::visit(
      [](const auto& s) -> std::string {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, ConstantP>) {
          std::ostringstream os;
          os << "constant(" << std::setprecision(17) << s.value << ")";
          return os.str();
        } else if constexpr (std::is_same_v<S, InverseSquareP>) {
          return "inverse_square";
        } else if constexpr (std::is_same_v<S, HalfStripP>) {
          return "half_strip";
        } else if constexpr (std::is_same_v<S, TabulatedP>) {
          return "tabulated";
        } else {
          return s.label.empty() ? "custom" : s.label;
        }
      },
      impl_->shape);
  if (scale_ != 1.0) {
    std::ostringstream os;
    os << std::setprecision(17) << scale_ << "*" << base;
    return os.str();
  }
  return base;
}

double extrapolate_lambda(const NehariFunction& p) {
  constexpr int j0 = 10, j1 = 20, order = 4;
  std::vector<std::vector<double>> t(j1 - j0 + 1);
  for (int j = j0; j <= j1; ++j) {
    const double h = std::ldexp(1.0, -j);
    const double x = 1.0 - h;
    const double w = h * (2.0 - h);
    const double q = p(x) * w * w;
    if (!std::isfinite(q)) throw NumericalError("weighted p is not finite near 1");
    auto& row = t[j - j0];
    row.push_back(q);
    for (int m = 1; m <= order && m <= j - j0; ++m) {
      const double f = std::ldexp(1.0, m);
      row.push_back((f * row[m - 1] - t[j - j0 - 1][m - 1]) / (f - 1.0));
    }
  }
  return t.back().back();
}

// ---------------------------------------------------------------------------
// disconjugacy

namespace {

using State2 = std::array<double, 2>;

// Sign changes of v on [-extent, extent], v'' = (1 - q(t)) v, v(-extent) = 0,
// v'(-extent) = 1. x = tanh t maps zeros of v to zeros of u.
int count_hyperbolic(const NehariFunction& p, double extent, double tol) {
  auto rhs = [&](const State2& s, State2& ds, double t) {
    ds[0] = s[1];
    ds[1] = (1.0 - p.weighted_hyperbolic(t)) * s[0];
  };
  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State2>());
  const double t0 = -extent, t1 = extent;
  stepper.initialize(State2{0.0, 1.0}, t0, 1e-3);

  int zeros = 0;
  int last_sign = 1;
  auto observe = [&](double v) {
    if (!std::isfinite(v)) throw NumericalError("disconjugacy integration produced a non-finite value");
    const int s = (v > 0.0) - (v < 0.0);
    if (s != 0 && s != last_sign) {
      ++zeros;
      last_sign = s;
    }
  };

  constexpr long max_steps = 5'000'000;
  long steps = 0;
  State2 probe{};
  try {
    while (stepper.current_time() < t1) {
      if (++steps > max_steps) throw NumericalError("disconjugacy integration exceeded the step budget");
      const auto [ta, tb] = stepper.do_step(rhs);
      if (!(tb > ta)) throw NumericalError("disconjugacy integration step underflow");
      const double hi = std::min(tb, t1);
      for (int k = 1; k <= 4; ++k) {
        const double t = ta + (tb - ta) * k / 4.0;
        if (t > hi) break;
        if (k == 4) {
          observe(stepper.current_state()[0]);
        } else {
          stepper.calc_state(t, probe);
          observe(probe[0]);
        }
      }
      if (tb > t1) {
        stepper.calc_state(t1, probe);
        observe(probe[0]);
      }
      // keep magnitudes bounded; zero counting is scale free
      State2 cur = stepper.current_state();
      const double mag = std::abs(cur[0]) + std::abs(cur[1]);
      if (mag > 1e200) {
        for (double& c : cur) c /= mag;
        stepper.initialize(cur, stepper.current_time(), stepper.current_time_step());
      }
    }
  } catch (const NumericalError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError(std::string("disconjugacy integration failed: ") + e.what());
  }
  return zeros;
}

}  // namespace

int disconjugacy_count(const NehariFunction& p, const DisconjugacyOptions& options) {
  if (!(options.eps > 0.0 && options.eps < 1.0)) throw DomainError("eps must lie in (0, 1)");
  double extent = std::atanh(1.0 - options.eps);
  // Weighted limit at or above 1: the transformed equation v'' + (q - 1) v = 0
  // oscillates only on a long hyperbolic scale.
  const double lam = p.lambda();
  if (lam >= 1.0 - 1e-9) extent = std::max(extent, options.long_extent);
  return count_hyperbolic(p, extent, options.tolerance);
}

double extremality_margin(const NehariFunction& p, const DisconjugacyOptions& options,
                          double bisection_tol) {
  if (disconjugacy_count(p, options) != 0)
    throw NumericalError("extremality margin: p itself is not disconjugate");
  if (disconjugacy_count(p.scaled(4.0), options) == 0)
    throw NumericalError("extremality margin: 4p is still disconjugate, bracket [1, 4] fails");
  double lo = 1.0, hi = 4.0;
  while (hi - lo > bisection_tol) {
    const double mid = 0.5 * (lo + hi);
    if (disconjugacy_count(p.scaled(mid), options) == 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// validation

NehariValidation validate_nehari(const NehariFunction& p, int resolution) {
  if (resolution < 8) throw DomainError("validation resolution must be at least 8");
  std::vector<double> xs;
  const double top = 1.0 - 1e-6;
  for (int i = 0; i <= resolution; ++i) xs.push_back(top * i / resolution);
  for (int k = 11; k < 60; ++k) {
    const double x = 1.0 - std::pow(10.0, -k / 10.0);
    if (x > xs.back() && x < top) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());

  NehariValidation rep;
  std::vector<double> pv(xs.size()), qv(xs.size());
  double worst_pos = 0.0, worst_even = 0.0, worst_mono = 0.0;
  std::optional<double> at_pos, at_even, at_mono;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = p(xs[i]);
    const double b = p(-xs[i]);
    if (!std::isfinite(a) || !std::isfinite(b))
      throw NumericalError("weight is undefined or not finite at x = " + std::to_string(xs[i]));
    pv[i] = a;
    qv[i] = p.weighted(xs[i]);
    if (!(a > 0.0)) {
      rep.positive = false;
      if (!at_pos || -a > worst_pos) {
        worst_pos = -a;
        at_pos = xs[i];
      }
    }
    const double asym = std::abs(a - b);
    if (asym > 1e-12 * std::max(1.0, std::abs(a))) {
      rep.even = false;
      if (!at_even || asym > worst_even) {
        worst_even = asym;
        at_even = xs[i];
      }
    }
    if (i > 0) {
      const double rise = qv[i] - qv[i - 1];
      if (rise > 1e-9 * std::max(1.0, std::abs(qv[i - 1]))) {
        rep.weighted_nonincreasing = false;
        if (!at_mono || rise > worst_mono) {
          worst_mono = rise;
          at_mono = xs[i];
        }
      }
    }
  }

  std::ostringstream msg;
  if (!rep.positive) {
    rep.worst_x = at_pos;
    msg << "not positive (worst at x = " << *at_pos << "); ";
  }
  if (!rep.even) {
    if (!rep.worst_x) rep.worst_x = at_even;
    msg << "not even (worst at x = " << *at_even << "); ";
  }
  if (!rep.weighted_nonincreasing) {
    if (!rep.worst_x) rep.worst_x = at_mono;
    msg << "(1-x^2)^2 p increases (worst at x = " << *at_mono << "); ";
  }
  if (rep.positive) {
    rep.zero_count = disconjugacy_count(p);
    rep.disconjugate = rep.zero_count == 0;
    if (!rep.disconjugate) msg << "solution has " << rep.zero_count + 1 << " zeros in (-1, 1); ";
  }
  rep.message = msg.str();
  if (rep.message.empty()) rep.message = "valid";
  else rep.message.resize(rep.message.size() - 2);
  return rep;
}

// ---------------------------------------------------------------------------
// extremal profile

namespace {

// u, u', Phi, U, U', Psi, g
using State7 = std::array<double, 7>;

struct ProfileSystem {
  const NehariFunction& p;
  void operator()(const State7& s, State7& ds, double x) const {
    const double px = p(x);
    ds[0] = s[1];
    ds[1] = -px * s[0];
    ds[2] = 1.0 / (s[0] * s[0]);
    ds[3] = s[4];
    ds[4] = px * s[3];
    ds[5] = 1.0 / (s[3] * s[3]);
    ds[6] = 2.0 * px + 0.5 * s[6] * s[6];
  }
};

struct Truncated {};

ProfilePoint make_point(const NehariFunction& p, double x, const State7& s) {
  ProfilePoint pt;
  pt.x = x;
  pt.u0 = s[0];
  pt.u0p = s[1];
  pt.Phi = s[2];
  pt.PhiP = 1.0 / (s[0] * s[0]);
  pt.PhiPP = -2.0 * s[1] / (s[0] * s[0] * s[0]);
  pt.U = s[3];
  pt.Up = s[4];
  pt.Psi = s[5];
  pt.log_derivative = -2.0 * s[1] / s[0];
  pt.riccati = s[6];
  pt.p = p(x);
  const double g = pt.log_derivative;
  pt.A = x == 0.0 ? pt.p : 0.25 * g * g + g / (2.0 * x);
  return pt;
}

State7 state_of(const ProfilePoint& pt) {
  return {pt.u0, pt.u0p, pt.Phi, pt.U, pt.Up, pt.Psi, pt.riccati};
}

void check_state(const State7& s, double x) {
  for (double v : s)
    if (!std::isfinite(v)) throw Truncated{};
  if (!(s[0] > 0.0))
    throw NumericalError("even solution u0 vanishes near x = " + std::to_string(x) + ": p is not a Nehari function");
  if (!(s[3] > 0.0)) throw NumericalError("solution U vanishes near x = " + std::to_string(x));
  if (std::abs(s[2]) > 1e300 || std::abs(s[6]) > 1e300) throw Truncated{};
}

// Phi blows up wherever u0 does vanish, so an aborted run is ambiguous: continue
// u0 alone (a linear ODE, no singularity) and see whether it changes sign before top.
void check_u0_positive(const NehariFunction& p, double x0, double u, double up, double top) {
  using State2 = std::array<double, 2>;
  State2 s{u, up};
  auto rhs = [&p](const State2& y, State2& dy, double x) {
    dy[0] = y[1];
    dy[1] = -p(x) * y[0];
  };
  double crossed = -1.0;
  struct Stop {};
  try {
    odeint::integrate_adaptive(odeint::make_dense_output(1e-14, 1e-12, odeint::runge_kutta_dopri5<State2>()), rhs,
                               s, x0, top, 1e-4, [&](const State2& y, double x) {
                                 if (y[0] <= 0.0) {
                                   crossed = x;
                                   throw Stop{};
                                 }
                               });
  } catch (const Stop&) {
  }
  if (crossed >= 0.0)
    throw NumericalError("even solution u0 vanishes near x = " + std::to_string(crossed) +
                         ": p is not a Nehari function");
}

}  // namespace

ExtremalProfile::ExtremalProfile(NehariFunction p, ProfileOptions options, std::vector<ProfilePoint> nodes,
                                 bool truncated)
    : p_(std::move(p)), options_(options), nodes_(std::move(nodes)), truncated_(truncated) {
  if (nodes_.empty()) throw NumericalError("empty extremal profile");
  lambda_ = p_.lambda();
}

ProfilePoint ExtremalProfile::at(double r) const {
  if (!(r >= 0.0) || r > x_max()) throw DomainError("radius outside the extremal profile range");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), r,
                             [](double v, const ProfilePoint& n) { return v < n.x; });
  const ProfilePoint& base = *std::prev(it);
  if (base.x == r) return base;
  State7 s = state_of(base);
  ProfileSystem sys{p_};
  try {
    odeint::integrate_adaptive(
        odeint::make_controlled(options_.atol, options_.rtol, odeint::runge_kutta_dopri5<State7>()), sys, s,
        base.x, r, std::min(1e-3, r - base.x));
  } catch (const std::exception& e) {
    throw NumericalError(std::string("profile re-integration failed: ") + e.what());
  }
  return make_point(p_, r, s);
}

double ExtremalProfile::inverse_phi(double s) const {
  if (!(s >= 0.0) || s > nodes_.back().Phi) throw DomainError("distance outside the profile range");
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s,
                             [](const ProfilePoint& n, double v) { return n.Phi < v; });
  if (it == nodes_.begin()) return 0.0;
  const ProfilePoint& hi = *it;
  const ProfilePoint& lo = *std::prev(it);
  double a = lo.x, b = hi.x;
  double r = a + (b - a) * (s - lo.Phi) / (hi.Phi - lo.Phi);
  for (int iter = 0; iter < 60; ++iter) {
    const ProfilePoint pt = at(r);
    const double f = pt.Phi - s;
    if (f > 0.0) b = r;
    else a = r;
    double next = r - f / pt.PhiP;
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - r) <= 1e-15 * std::max(1.0, r)) return next;
    r = next;
  }
  return r;
}

bool ExtremalProfile::phi_divergent() const {
  if (truncated_) return true;
  const double probe = 1.0 - 1e-3;
  if (x_max() <= probe) return false;
  return nodes_.back().Phi - at(probe).Phi > 1.0;
}

bool ExtremalProfile::p_nondecreasing() const {
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    if (nodes_[i].p < nodes_[i - 1].p * (1.0 - 1e-12)) return false;
  return true;
}

ExtremalProfile extremal_profile(const NehariFunction& p, const ProfileOptions& options) {
  if (!(options.eps > 0.0 && options.eps < 0.1)) throw DomainError("profile eps must lie in (0, 0.1)");
  if (options.uniform_nodes < 8 || options.nodes_per_decade < 4) throw DomainError("profile resolution too small");
  std::vector<double> xs;
  for (int i = 0; i <= options.uniform_nodes; ++i) xs.push_back(0.9 * i / options.uniform_nodes);
  const double top = 1.0 - options.eps;
  for (int k = 1;; ++k) {
    const double x = 1.0 - 0.1 * std::pow(10.0, -static_cast<double>(k) / options.nodes_per_decade);
    if (x >= top) break;
    xs.push_back(x);
  }
  xs.push_back(top);

  std::vector<ProfilePoint> nodes;
  nodes.reserve(xs.size());
  State7 s{1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
  bool truncated = false;
  ProfileSystem sys{p};
  auto observer = [&](const State7& st, double x) {
    check_state(st, x);
    nodes.push_back(make_point(p, x, st));
  };
  try {
    odeint::integrate_times(
        odeint::make_controlled(options.atol, options.rtol, odeint::runge_kutta_dopri5<State7>()), sys, s,
        xs.begin(), xs.end(), 1e-4, observer);
  } catch (const Truncated&) {
    truncated = true;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    // overflow of Phi near 1: keep what was integrated
    if (nodes.size() < 2) throw NumericalError(std::string("profile integration failed: ") + e.what());
    truncated = true;
  }
  if (nodes.empty()) throw NumericalError("profile integration produced no nodes");
  if (truncated) check_u0_positive(p, nodes.back().x, nodes.back().u0, nodes.back().u0p, top);
  return ExtremalProfile(p, options, std::move(nodes), truncated);
}

MetricQuantities metric_quantities(const ExtremalProfile& profile, double r) {
  const ProfilePoint pt = profile.at(r);
  MetricQuantities m;
  m.PhiP = pt.PhiP;
  m.distance = pt.Phi;
  m.curvature = -2.0 * (pt.A + pt.p) / (pt.PhiP * pt.PhiP);
  return m;
}

double mobius_weight_check(const NehariFunction& p, const DiskMobius& t, double x) {
  if (!(std::abs(x) < 1.0)) throw DomainError("x must lie in (-1, 1)");
  const Jet3 j = t.jet(cplx(x, 0.0));
  return p(std::abs(x)) - std::norm(j.d1) * p(std::abs(j.value));
}

void write_profile_csv(std::ostream& out, const ExtremalProfile& profile) {
  const auto old = out.precision(17);
  out << "x,u0,Phi,PhiP,U,Psi,A,p\n";
  for (const auto& n : profile.nodes())
    out << n.x << ',' << n.u0 << ',' << n.Phi << ',' << n.PhiP << ',' << n.U << ',' << n.Psi << ',' << n.A << ','
        << n.p << '\n';
  out.precision(old);
}

}  // namespace holoschwarz
