#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "holoschwarz/curve.hpp"

namespace holoschwarz {

/// Value and first three parameter derivatives of a curve in R^m.
struct RealCurveSample {
  double t = 0.0;
  Eigen::VectorXd x0, x1, x2, x3;
};

/// Ahlfors' S1: <x1,x3>/|x1|^2 - 3 <x1,x2>^2/|x1|^4 + (3/2) |x2|^2/|x1|^2.
double s1_direct(const RealCurveSample& s);

/// Euclidean curvature of a space curve from its first two derivatives.
double space_curvature(const RealCurveSample& s);

/// Jets of a plane path gamma(t) in the disk together with its curvature.
struct PathJet {
  cplx value{}, d1{}, d2{}, d3{};
  double curvature = 0.0;
};

/// Parametrized path in the unit disk.
class PlaneCurve {
 public:
  enum class Kind { Diameter, CircleArc, Custom };

  /// gamma(t) = t e^{i angle}, unit speed, zero curvature.
  static PlaneCurve diameter(double angle = 0.0);
  /// Arc-length circle gamma(t) = center + radius e^{i (start + t/radius)}.
  static PlaneCurve circle_arc(cplx center, double radius, double start_angle = 0.0);
  static PlaneCurve custom(std::function<PathJet(double)> jets, bool arc_length, std::string label);

  PathJet at(double t) const;
  bool arc_length() const { return arc_length_; }
  Kind kind() const { return kind_; }
  const std::string& label() const { return label_; }

 private:
  PlaneCurve(Kind kind, std::function<PathJet(double)> jets, bool arc_length, std::string label)
      : kind_(kind), jets_(std::move(jets)), arc_length_(arc_length), label_(std::move(label)) {}

  Kind kind_;
  std::function<PathJet(double)> jets_;
  bool arc_length_;
  std::string label_;
};

/// Sample of phi(gamma(t)) in R^{2n} (components interleaved as Re, Im).
RealCurveSample compose_sample(const HoloCurve& curve, const PlaneCurve& path, double t);

double s1_of_composed_curve(const HoloCurve& curve, const PlaneCurve& path, double t);

/// Re{S phi(gamma) gamma'^2} + (3/4)|phi'(gamma)|^2 |K| + kappa^2/2 (arc-length paths).
double lemma2_rhs(const HoloCurve& curve, const PlaneCurve& path, double t);

/// The same display with the curvature entering signed, +(3/4)|phi'|^2 K with K <= 0.
/// Kept to report how far it sits from S1; it differs by (3/2)|phi'|^2 |K|.
double lemma2_rhs_signed_curvature(const HoloCurve& curve, const PlaneCurve& path, double t);

/// S1 = (v'/v)' - (v'/v)^2/2 + v^2 k^2/2 with log v differentiated by
/// fourth-order central differences of step h.
double s1_chuaqui_gevirtz(const std::function<double(double)>& speed,
                          const std::function<double(double)>& curvature, double t, double h = 1e-3);

/// Convenience route: speed |phi'(gamma(t))| and the curvature of phi o gamma.
double s1_chuaqui_gevirtz(const HoloCurve& curve, const PlaneCurve& path, double t, double h = 1e-3);

/// Composition of Mobius factors acting on R^m u {infinity}; applied in insertion order.
class MobiusRn {
 public:
  explicit MobiusRn(int dim) : dim_(dim) {}

  MobiusRn& translate(Eigen::VectorXd v);
  /// Throws DomainError unless q is orthogonal.
  MobiusRn& rotate(Eigen::MatrixXd q);
  MobiusRn& scale(double s);
  /// x -> c + r^2 (x - c)/|x - c|^2
  MobiusRn& invert(Eigen::VectorXd center, double radius);

  int dim() const { return dim_; }
  /// Throws DomainError within pole_tolerance of an inversion center.
  Eigen::VectorXd apply(const Eigen::VectorXd& x, double pole_tolerance = 1e-6) const;

 private:
  struct Factor {
    enum class Kind { Translation, Orthogonal, Scaling, Inversion } kind;
    Eigen::VectorXd vec;
    Eigen::MatrixXd mat;
    double scalar = 1.0;
  };
  int dim_;
  std::vector<Factor> factors_;
};

/// Sample of a curve obtained from point values by six-neighbour central
/// stencils with one Richardson step (h and h/2).
RealCurveSample finite_difference_sample(const std::function<Eigen::VectorXd(double)>& curve, double t,
                                         double h = 1e-3);

/// |S1(M o phi o gamma)(t) - S1(phi o gamma)(t)| with the transformed curve
/// differentiated numerically.
double s1_mobius_invariance_check(const HoloCurve& curve, const PlaneCurve& path, const MobiusRn& m,
                                  double t);

}  // namespace holoschwarz
