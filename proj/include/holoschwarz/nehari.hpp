#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "holoschwarz/curve.hpp"

namespace holoschwarz {

/// Weight p(x) on (-1, 1) for the comparison equation u'' + p u = 0.
///
/// Built-in shapes carry their weighted form (1 - x^2)^2 p(x) in closed form so
/// that it can be evaluated at x = tanh t far beyond double resolution of x.
class NehariFunction {
 public:
  enum class Kind { Constant, InverseSquare, HalfStrip, Tabulated, Custom };

  static NehariFunction constant(double value = kPi * kPi / 4.0);
  /// (1 - x^2)^{-2}
  static NehariFunction inverse_square();
  /// 2 (1 - x^2)^{-1}
  static NehariFunction half_strip();
  /// Values at 0 = x_0 < x_1 < ... < x_m < 1, interpolated by monotone cubic
  /// Hermite in |x|; beyond x_m the weighted value (1 - x^2)^2 p is held constant.
  static NehariFunction tabulated(std::vector<double> x, std::vector<double> p);
  static NehariFunction custom(std::function<double(double)> p, std::string label);

  NehariFunction scaled(double k) const;

  /// Throws DomainError for |x| >= 1.
  double operator()(double x) const;
  /// (1 - x^2)^2 p(x)
  double weighted(double x) const;
  /// (1 - x^2)^2 p(x) at x = tanh(t).
  double weighted_hyperbolic(double t) const;

  /// lim_{x->1} (1 - x^2)^2 p(x) when known in closed form.
  std::optional<double> exact_lambda() const;
  /// Closed form when available, otherwise Richardson extrapolation of the
  /// weighted values at x = 1 - 2^{-j}, j = 10..20.
  double lambda() const;

  Kind kind() const;
  double scale() const;
  std::string label() const;

  struct Impl;

 private:
  NehariFunction(std::shared_ptr<const Impl> impl, double scale) : impl_(std::move(impl)), scale_(scale) {}

  std::shared_ptr<const Impl> impl_;
  double scale_ = 1.0;
};

/// Richardson extrapolation of weighted p at x = 1 - 2^{-j}, j = 10..20.
double extrapolate_lambda(const NehariFunction& p);

struct NehariValidation {
  bool positive = true;
  bool even = true;
  bool weighted_nonincreasing = true;
  bool disconjugate = true;
  int zero_count = 0;
  /// Worst violating point of the first failed check, if any.
  std::optional<double> worst_x;
  std::string message;

  bool valid() const { return positive && even && weighted_nonincreasing && disconjugate; }
};

/// Throws NumericalError when p is NaN or infinite on the grid.
NehariValidation validate_nehari(const NehariFunction& p, int resolution = 2000);

struct DisconjugacyOptions {
  /// Offset of the x-window (-1 + eps, 1 - eps).
  double eps = 1e-6;
  /// Hyperbolic half-length used instead when the weighted limit reaches 1,
  /// where oscillation only shows up logarithmically close to the endpoints.
  double long_extent = 64.0;
  double tolerance = 1e-11;
};

/// Zeros, beyond the initial one, of the solution of u'' + p u = 0 with u = 0,
/// u' = 1 at the left end. 0 means disconjugate. Throws NumericalError on
/// integrator failure.
int disconjugacy_count(const NehariFunction& p, const DisconjugacyOptions& options = {});

/// sup{k in [1, 4] : kp disconjugate} by bisection. Throws NumericalError when
/// p itself is not disconjugate or 4p still is (bracket failure).
double extremality_margin(const NehariFunction& p, const DisconjugacyOptions& options = {},
                          double bisection_tol = 1e-5);

inline constexpr double kExtremalityTolerance = 1e-3;
inline bool is_extremal_margin(double k_star) { return k_star <= 1.0 + kExtremalityTolerance; }

/// Solution data at one abscissa of the even normalized solutions.
struct ProfilePoint {
  double x = 0.0;
  double u0 = 1.0, u0p = 0.0;  // u'' + p u = 0, u(0) = 1, u'(0) = 0
  double Phi = 0.0, PhiP = 1.0, PhiPP = 0.0;
  double U = 1.0, Up = 0.0;  // U'' - p U = 0
  double Psi = 0.0;
  /// Phi''/Phi' = -2 u0'/u0
  double log_derivative = 0.0;
  /// Phi''/Phi' integrated independently from g' = 2p + g^2/2.
  double riccati = 0.0;
  double A = 0.0;
  double p = 0.0;
};

struct ProfileOptions {
  double eps = 1e-6;
  int uniform_nodes = 400;
  int nodes_per_decade = 40;
  double rtol = 1e-12;
  double atol = 1e-15;
};

class ExtremalProfile {
 public:
  ExtremalProfile(NehariFunction p, ProfileOptions options, std::vector<ProfilePoint> nodes,
                  bool truncated);

  const NehariFunction& weight() const { return p_; }
  const ProfileOptions& options() const { return options_; }
  const std::vector<ProfilePoint>& nodes() const { return nodes_; }
  double x_max() const { return nodes_.back().x; }
  bool truncated() const { return truncated_; }

  /// Re-integrates from the nearest node at or below r; throws DomainError
  /// outside [0, x_max].
  ProfilePoint at(double r) const;
  /// r in [0, x_max] with Phi(r) = s.
  double inverse_phi(double s) const;

  double lambda() const { return lambda_; }
  double mu() const { return 1.0 + std::sqrt(std::max(0.0, 1.0 - lambda_)); }
  double alpha() const { return 2.0 - mu(); }

  /// Phi grows without bound at the right end: the increment over the last
  /// three decades before 1 - eps exceeds one.
  bool phi_divergent() const;
  /// p nondecreasing on the node grid (relative slack 1e-12).
  bool p_nondecreasing() const;

 private:
  NehariFunction p_;
  ProfileOptions options_;
  std::vector<ProfilePoint> nodes_;
  bool truncated_ = false;
  double lambda_ = 0.0;
};

/// Throws NumericalError when u0 or U reaches zero (p not Nehari).
ExtremalProfile extremal_profile(const NehariFunction& p, const ProfileOptions& options = {});

struct MetricQuantities {
  double PhiP = 1.0;
  /// d(0, r) in the metric Phi'(|z|)^2 |dz|^2, equal to Phi(r).
  double distance = 0.0;
  /// -2 Phi'^{-2} (A + p)
  double curvature = 0.0;
};

MetricQuantities metric_quantities(const ExtremalProfile& profile, double r);

/// p(|x|) - |T'(x)|^2 p(|T(x)|) for T(z) = (z - i rho)/(1 + i rho z).
double mobius_weight_check(const NehariFunction& p, const DiskMobius& t, double x);

/// Columns x,u0,Phi,PhiP,U,Psi,A,p with a header row and 17 significant digits.
void write_profile_csv(std::ostream& out, const ExtremalProfile& profile);

}  // namespace holoschwarz
