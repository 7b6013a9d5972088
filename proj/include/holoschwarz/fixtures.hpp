#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holoschwarz/curve.hpp"
#include "holoschwarz/nehari.hpp"

namespace holoschwarz {

/// phi(z) = (c e^{pi z}, e^{-pi z}); the Schwarzian branch needs c^2 e^{-4 pi} >= 5 + 2 sqrt 6.
struct Example1Params {
  double c = 1700.0;
  /// Throws DomainError naming the bound e^{2 pi} sqrt(5 + 2 sqrt 6).
  void validate() const;
};

/// phi = (f, 1/f), f = (c Phi + i)/(c Phi - i), Phi = atanh, with p = (1 - x^2)^{-2}.
struct Example2Params {
  double c = 0.05;
  /// Throws DomainError unless 0 < c < 4/pi.
  void validate() const;
};

HoloCurve example1_curve(const Example1Params& params = {});
HoloCurve example2_curve(const Example2Params& params = {});

// Example 1 closed forms on the real line (they depend on Re z only).
double example1_conformal_factor_sq(double c, double x);  // pi^2 (c^2 e^{2 pi x} + e^{-2 pi x})
double example1_sigma_x(double c, double x);              // pi (s - 1)/(s + 1), s = c^2 e^{4 pi x}
double example1_sigma_xx(double c, double x);             // 8 pi^2 s/(s + 1)^2
/// |S phi| = (sigma_x^2 - sigma_xx)/2 on the branch s^2 - 10 s + 1 >= 0.
double example1_abs_schwarzian(double c, double x);
/// (3/4) e^{2 sigma}|K| = (3/4) sigma_xx
double example1_curvature_term(double c, double x);

// Example 2 closed forms.
cplx example2_f(double c, cplx z);
cplx example2_df(double c, cplx z);
double example2_conformal_factor_sq(double c, cplx z);  // |f'|^2 (1 + |f|^{-4})
cplx example2_schwarzian(double c, cplx z);             // S Phi + 6 (conj(f) f')^2/(1 + |f|^4)^2
double example2_scaled_curvature(double c, cplx z);     // 8 |f f'|^2/(1 + |f|^4)^2

/// zeta = 12 c^2 (1 + c^2 Phi^2)^2 / (|c Phi - i|^4 + |c Phi + i|^4)^2 as a function of Phi.
cplx example2_zeta(double c, cplx Phi);

/// |1 - z^2|^2/(1 - |z|^2)^2 - |1 - zeta| - |zeta| at z.
double example2_reduced_criterion(const Example2Params& params, cplx z);

struct Lemma7Report {
  double c = 0.0;
  double A = 0.0, B = 0.0, C = 0.0;
  /// Smallest right-minus-left value of each estimate at the fitted constants.
  double slack_A = 0.0, slack_B = 0.0, slack_C = 0.0;
  std::size_t samples = 0;
  /// Set when some estimate fails at Im Phi = 0, where no constant helps.
  std::optional<cplx> witness;
  std::string message;
};

/// Phi sampled in the strip |Im Phi| < pi/4 with Re Phi = sinh(u), u in [-8, 8]
/// (additive recurrence, seed shifts the sequence).
std::vector<cplx> lemma7_strip_samples(std::size_t count, std::uint64_t seed = 0);
/// Phi(z) = atanh z at disk samples.
std::vector<cplx> lemma7_disk_samples(std::size_t count, std::uint64_t seed = 0, double r_max = 0.999);

/// Smallest A, B, C with
///   |1 - Re zeta| <= 1 - |zeta| + A c^4 |Im Phi|^2,
///   |Im zeta| <= B c^3 |Im Phi|,
///   |1 - zeta| <= 1 - |zeta| + C c^4 |Im Phi|^2
/// over the samples. Throws DomainError for c outside (0, 0.2].
Lemma7Report lemma7_check(const Example2Params& params, const std::vector<cplx>& phi_samples);

/// |2i Im{(1 + c^2 Phi^2)^2} - c^4 (Phi^4 - conj(Phi)^4) - 2 c^2 (Phi^2 - conj(Phi)^2)|
double lemma7_expansion_deviation(double c, cplx Phi);

struct NamedCurve {
  std::string name;
  HoloCurve curve;
};

/// identity, mobius, exponential, polynomial, planar, example1, example2.
std::vector<NamedCurve> builtin_curves();

/// Per-x table for Example 1 on the real diameter: x, |S phi|, curvature term, sum.
void write_example1_table(std::ostream& out, const Example1Params& params, int points = 41);

struct SlackHistogram {
  std::vector<double> edges;  // bins.size() + 1
  std::vector<std::size_t> bins;
  double min_slack = 0.0;
  cplx argmin{};
};

/// Reduced-criterion slack over a polar grid (n_r radii up to r_max, n_theta angles).
SlackHistogram example2_slack_histogram(const Example2Params& params, int n_r = 99, int n_theta = 64,
                                        double r_max = 0.99, int bins = 10);

}  // namespace holoschwarz
