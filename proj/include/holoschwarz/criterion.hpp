#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "holoschwarz/curve.hpp"
#include "holoschwarz/nehari.hpp"
#include "holoschwarz/schwarzian.hpp"

namespace holoschwarz {

/// Polar grid: radii r_max (i+1)/n_r for i < n_r, angles 2 pi j / n_theta, plus the origin.
struct GridSpec {
  int n_r = 64;
  int n_theta = 64;
  double r_max = 0.99;
  /// Extra local passes around the running minimum (0 = none).
  int refine_levels = 0;

  /// Throws DomainError when counts are below 8 or r_max is outside (0, 1 - 1e-6].
  void validate() const;
  std::vector<cplx> points() const;
};

struct CriterionPoint {
  cplx z{};
  double abs_schwarzian = 0.0;
  double curvature_term = 0.0;
  double bound = 0.0;
  double margin = 0.0;
};

enum class Verdict { Holds, Fails, HoldsWithEquality };
std::string to_string(Verdict v);

struct CriterionReport {
  std::vector<CriterionPoint> points;
  double min_margin = 0.0;
  cplx argmin{};
  double tol_eq = 0.0;
  /// Indices into points with |margin| <= tol_eq.
  std::vector<std::size_t> equality_locus;
  Verdict verdict = Verdict::Holds;
};

/// 2 p(|z|) - |S phi| - (3/4)|phi'|^2 |K| at every grid point. tol_eq = 1e-6 max(1, 2 p(0)).
/// Throws DomainError when the tangent vanishes at a grid point.
CriterionReport scan(const HoloCurve& curve, const NehariFunction& p, const GridSpec& grid, int workers = 0);

/// CSV: re_z,im_z,abs_schwarzian,curv_term,bound,margin (17 significant digits).
void write_scan_csv(std::ostream& out, const CriterionReport& report);
/// key=value block: verdict, min_margin, argmin, equality_locus_size, points, tol_eq.
void write_scan_summary(std::ostream& out, const CriterionReport& report);

struct NormalizedCurve {
  HoloCurve curve;
  /// |phi'(0)| of the input
  double tangent_at_0 = 1.0;
  /// |phi''(0)| after scaling to |phi'(0)| = 1
  double phi2_at_0 = 0.0;
};

/// Scales the curve by 1/|phi'(0)|. Throws DomainError on a zero tangent at 0.
NormalizedCurve normalize(const HoloCurve& curve);

/// 2 Psi(r) / (2 + phi2 Psi(r)). Throws DomainError when p is not nondecreasing
/// on the profile range, since the bound is then not available.
double covering_bound(const ExtremalProfile& profile, double phi2, double r);

struct GeodesicOptions {
  int resolution = 200;
  /// Also solve at half resolution and fail if refinement lengthens the
  /// distance by more than this relative amount.
  bool refinement_check = true;
  double refinement_tolerance = 1e-3;
};

/// Shortest-path estimate, from above, of the distance from 0 to the circle |z| = r
/// in the metric e^{sigma}|dz| (16-neighbour grid graph, midpoint-rule edge weights).
/// Throws NumericalError when the refinement check fails.
double intrinsic_min_distance(const HoloCurve& curve, double r, const GeodesicOptions& options = {});

struct CoveringProfile {
  std::vector<double> radii;
  std::vector<double> bound;
  std::vector<double> measured;
  double phi2_at_0 = 0.0;
};

/// Normalizes the curve, then evaluates covering_bound and intrinsic_min_distance at each radius.
CoveringProfile covering_profile(const HoloCurve& curve, const ExtremalProfile& profile,
                                 const std::vector<double>& radii, const GeodesicOptions& options = {});

/// (A + p) - |zeta^2 S phi + A - p| - (3/4) e^{2 sigma}|K| at z, zeta = z/|z|.
/// Throws DomainError at z = 0.
double lemma4_margin(const HoloCurve& curve, const ExtremalProfile& profile, cplx z);

struct CriticalPoint {
  cplx z{};
  double w = 0.0;
};

struct DistortionFit {
  bool feasible = false;
  double a = 0.0;
  double b = 0.0;
  double r0 = 0.0;
  std::string message;
};

struct BoundaryOptions {
  int rays = 32;
  int s_points = 100;
  /// Radial range of the distortion fit is (r0, grid r_max).
  double r0 = 0.5;
};

struct BoundaryDiagnostics {
  /// w(z) = sqrt(Phi'(|z|)/|phi'(z)|) on the grid points, in grid order.
  std::vector<cplx> grid;
  std::vector<double> w;
  std::vector<CriticalPoint> critical_points;
  /// Smallest omega''(s) over all rays and s samples, and where it occurs.
  double worst_omega2 = 0.0;
  double worst_theta = 0.0;
  double worst_s = 0.0;
  DistortionFit fit;
  double lambda = 0.0;
  double holder_exponent = 1.0;
  /// lambda = 1: only a logarithmic modulus of continuity.
  bool logarithmic_regime = false;
};

/// w at z from the profile; throws DomainError when |z| exceeds the profile range.
double boundary_weight(const HoloCurve& curve, const ExtremalProfile& profile, cplx z);

/// Gradient of log w as a complex number d/dx + i d/dy.
cplx boundary_weight_log_gradient(const HoloCurve& curve, const ExtremalProfile& profile, cplx z);

/// omega_theta''(s) by a five-point stencil of step h in s.
double radial_omega_second(const HoloCurve& curve, const ExtremalProfile& profile, double theta, double s,
                           double h);

BoundaryDiagnostics boundary_diagnostics(const HoloCurve& curve, const ExtremalProfile& profile,
                                         const GridSpec& grid, const BoundaryOptions& options = {});

struct BoundaryTrace {
  double radius = 0.0;
  int samples = 0;
  double min_distance = 0.0;
  cplx z1{}, z2{};
};

/// Minimum image distance over pairs on |z| = 1 - eps with angular separation at least pi/8.
BoundaryTrace boundary_trace(const HoloCurve& curve, double eps, int samples = 2048);

}  // namespace holoschwarz
