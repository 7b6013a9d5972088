#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holoschwarz/ahlfors.hpp"
#include "holoschwarz/curve.hpp"

namespace holoschwarz {

/// Additive-recurrence (R2) points in the annulus r_min <= |z| <= r_max, area
/// uniform, emitted in antithetic pairs (z, -z). The seed shifts the recurrence.
std::vector<cplx> disk_samples(std::size_t count, std::uint64_t seed, double r_min = 0.0,
                               double r_max = 1.0 - 1e-4);

struct InjectivityOptions {
  double r_min = 0.0;
  double r_max = 1.0 - 1e-4;
  /// Image distance that counts as a collision.
  double threshold = 1e-9;
};

/// Numerical evidence only: a clean scan does not prove injectivity.
struct InjectivityReport {
  std::size_t samples = 0;
  double delta = 0.0;
  /// Minimum image distance over sample pairs with |z1 - z2| >= delta.
  double min_distance = 0.0;
  cplx min_z1{}, min_z2{};
  bool collision = false;
};

InjectivityReport injectivity_scan(const HoloCurve& curve, std::size_t samples, double delta,
                                   std::uint64_t seed = 0, const InjectivityOptions& options = {});

/// |II(V,V)|^2 from point values only: phi restricted to horizontal and vertical
/// lines through z, differentiated numerically, with phi_xx projected off the
/// tangent plane. `scale` is |phi_xx|^2 / |phi_x|^4, the size of the operands.
struct SecondFormEstimate {
  double value = 0.0;
  double scale = 0.0;
};
SecondFormEstimate second_form_sq_fd(const HoloCurve& curve, cplx z, double h = 1e-3);

struct IdentityResult {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  std::string location;
  std::size_t checks = 0;
  bool pass() const { return worst <= tolerance; }
};

struct IdentitySuiteReport {
  std::vector<IdentityResult> identities;
  bool pass() const;
};

struct IdentitySuiteOptions {
  std::size_t points_per_curve = 16;
  std::size_t times_per_path = 4;
  double r_max = 0.9;
};

/// Deviations are measured relative to 1 + |value| (second fundamental form:
/// relative to the operand size).
///   second_form       |II|^2 versus |K|/2                        1e-8
///   lemma2            S1 of phi o gamma versus the S phi display 1e-5
///   precomposition    S(phi o T) versus S phi(T) T'^2            1e-8
///   s1_range_mobius   S1 before and after a Mobius map of R^2n   1e-4
IdentitySuiteReport identity_suite(const std::vector<HoloCurve>& curves, const std::vector<PlaneCurve>& paths,
                                   std::uint64_t seed = 0, const IdentitySuiteOptions& options = {});

/// A fixed Mobius map of R^m for invariance checks: translation, inversion in a
/// sphere centred away from the origin, rotation of the first plane, scaling.
MobiusRn standard_range_mobius(int dim, double spread = 1.0);

/// Parameter interval in which a path stays inside radius r_max of the disk.
std::pair<double, double> path_parameter_range(const PlaneCurve& path, double r_max = 0.9);

}  // namespace holoschwarz
