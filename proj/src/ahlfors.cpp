#include "holoschwarz/ahlfors.hpp"

#include <cmath>
#include <limits>

#include "holoschwarz/errors.hpp"
#include "holoschwarz/schwarzian.hpp"

namespace holoschwarz {

double s1_direct(const RealCurveSample& s) {
  const double n1 = s.x1.squaredNorm();
  if (!(n1 > 0.0)) throw DomainError("S1: zero tangent");
  const double a = s.x1.dot(s.x2);
  return s.x1.dot(s.x3) / n1 - 3.0 * a * a / (n1 * n1) + 1.5 * s.x2.squaredNorm() / n1;
}

double space_curvature(const RealCurveSample& s) {
  const double n1 = s.x1.squaredNorm();
  if (!(n1 > 0.0)) throw DomainError("curvature: zero tangent");
  const double a = s.x1.dot(s.x2);
  const double num = std::max(0.0, n1 * s.x2.squaredNorm() - a * a);
  return std::sqrt(num / (n1 * n1 * n1));
}

PlaneCurve PlaneCurve::diameter(double angle) {
  const cplx dir = std::polar(1.0, angle);
  return PlaneCurve(
      Kind::Diameter, [dir](double t) { return PathJet{t * dir, dir, 0.0, 0.0, 0.0}; }, true,
      "diameter");
}

PlaneCurve PlaneCurve::circle_arc(cplx center, double radius, double start_angle) {
  if (!(radius > 0.0)) throw DomainError("circle arc needs a positive radius");
  return PlaneCurve(
      Kind::CircleArc,
      [center, radius, start_angle](double t) {
        const cplx e = std::polar(1.0, start_angle + t / radius);
        const cplx i{0.0, 1.0};
        return PathJet{center + radius * e, i * e, -e / radius, -i * e / (radius * radius),
                       1.0 / radius};
      },
      true, "circle");
}

PlaneCurve PlaneCurve::custom(std::function<PathJet(double)> jets, bool arc_length, std::string label) {
  return PlaneCurve(Kind::Custom, std::move(jets), arc_length, std::move(label));
}

PathJet PlaneCurve::at(double t) const {
  PathJet j = jets_(t);
  if (!(std::abs(j.value) < 1.0)) throw DomainError("path leaves the unit disk");
  return j;
}

namespace {

std::vector<Jet3> composed_jets(const HoloCurve& curve, const PathJet& g) {
  const CurveJet phi = eval_curve(curve, g.value);
  const Jet3 inner{g.value, g.d1, g.d2, g.d3};
  std::vector<Jet3> out;
  out.reserve(phi.components.size());
  for (const auto& c : phi.components) out.push_back(chain(c, inner));
  return out;
}

double lemma2_terms(const HoloCurve& curve, const PlaneCurve& path, double t, double curvature_sign) {
  if (!path.arc_length()) throw DomainError("the S1 display needs an arc-length parametrized path");
  const PathJet g = path.at(t);
  const ConformalData cd = conformal_data(eval_curve(curve, g.value));
  return std::real(cd.schwarzian * g.d1 * g.d1) + curvature_sign * 0.75 * cd.scaled_curvature() +
         0.5 * g.curvature * g.curvature;
}

}  // namespace

RealCurveSample compose_sample(const HoloCurve& curve, const PlaneCurve& path, double t) {
  const auto jets = composed_jets(curve, path.at(t));
  const auto m = static_cast<Eigen::Index>(2 * jets.size());
  RealCurveSample s{t, Eigen::VectorXd(m), Eigen::VectorXd(m), Eigen::VectorXd(m), Eigen::VectorXd(m)};
  for (std::size_t k = 0; k < jets.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    s.x0[i] = jets[k].value.real(), s.x0[i + 1] = jets[k].value.imag();
    s.x1[i] = jets[k].d1.real(), s.x1[i + 1] = jets[k].d1.imag();
    s.x2[i] = jets[k].d2.real(), s.x2[i + 1] = jets[k].d2.imag();
    s.x3[i] = jets[k].d3.real(), s.x3[i + 1] = jets[k].d3.imag();
  }
  return s;
}

double s1_of_composed_curve(const HoloCurve& curve, const PlaneCurve& path, double t) {
  return s1_direct(compose_sample(curve, path, t));
}

double lemma2_rhs(const HoloCurve& curve, const PlaneCurve& path, double t) {
  return lemma2_terms(curve, path, t, +1.0);
}

double lemma2_rhs_signed_curvature(const HoloCurve& curve, const PlaneCurve& path, double t) {
  return lemma2_terms(curve, path, t, -1.0);
}

double s1_chuaqui_gevirtz(const std::function<double(double)>& speed,
                          const std::function<double(double)>& curvature, double t, double h) {
  double lv[5];
  for (int j = -2; j <= 2; ++j) {
    double v = 0.0;
    try {
      v = speed(t + j * h);
    } catch (const DomainError& e) {
      throw DomainError(std::string("Chuaqui-Gevirtz window exits the domain: ") + e.what());
    }
    if (!(v > 0.0)) throw DomainError("Chuaqui-Gevirtz: speed must be positive");
    lv[j + 2] = std::log(v);
  }
  const double d1 = (lv[0] - 8.0 * lv[1] + 8.0 * lv[3] - lv[4]) / (12.0 * h);
  const double d2 = (-lv[0] + 16.0 * lv[1] - 30.0 * lv[2] + 16.0 * lv[3] - lv[4]) / (12.0 * h * h);
  const double v = std::exp(lv[2]);
  const double k = curvature(t);
  return d2 - 0.5 * d1 * d1 + 0.5 * v * v * k * k;
}

double s1_chuaqui_gevirtz(const HoloCurve& curve, const PlaneCurve& path, double t, double h) {
  if (!path.arc_length()) throw DomainError("Chuaqui-Gevirtz route needs an arc-length path");
  auto speed = [&](double s) {
    const PathJet g = path.at(s);
    return std::sqrt(eval_curve(curve, g.value).tangent_norm_sq());
  };
  auto curv = [&](double s) { return space_curvature(compose_sample(curve, path, s)); };
  return s1_chuaqui_gevirtz(speed, curv, t, h);
}

MobiusRn& MobiusRn::translate(Eigen::VectorXd v) {
  if (v.size() != dim_) throw DomainError("translation dimension mismatch");
  factors_.push_back({Factor::Kind::Translation, std::move(v), {}, 1.0});
  return *this;
}

MobiusRn& MobiusRn::rotate(Eigen::MatrixXd q) {
  if (q.rows() != dim_ || q.cols() != dim_) throw DomainError("orthogonal factor dimension mismatch");
  const Eigen::MatrixXd err = q.transpose() * q - Eigen::MatrixXd::Identity(dim_, dim_);
  if (err.norm() > 1e-10) throw DomainError("factor is not orthogonal");
  factors_.push_back({Factor::Kind::Orthogonal, {}, std::move(q), 1.0});
  return *this;
}

MobiusRn& MobiusRn::scale(double s) {
  if (!(s > 0.0)) throw DomainError("scaling factor must be positive");
  factors_.push_back({Factor::Kind::Scaling, {}, {}, s});
  return *this;
}

MobiusRn& MobiusRn::invert(Eigen::VectorXd center, double radius) {
  if (center.size() != dim_) throw DomainError("inversion center dimension mismatch");
  if (!(radius > 0.0)) throw DomainError("inversion radius must be positive");
  factors_.push_back({Factor::Kind::Inversion, std::move(center), {}, radius});
  return *this;
}

Eigen::VectorXd MobiusRn::apply(const Eigen::VectorXd& x, double pole_tolerance) const {
  if (x.size() != dim_) throw DomainError("point dimension mismatch");
  Eigen::VectorXd y = x;
  for (const auto& f : factors_) {
    switch (f.kind) {
      case Factor::Kind::Translation:
        y += f.vec;
        break;
      case Factor::Kind::Orthogonal:
        y = f.mat * y;
        break;
      case Factor::Kind::Scaling:
        y *= f.scalar;
        break;
      case Factor::Kind::Inversion: {
        const Eigen::VectorXd d = y - f.vec;
        const double n2 = d.squaredNorm();
        if (std::sqrt(n2) < pole_tolerance) throw DomainError("point too close to an inversion pole");
        y = f.vec + (f.scalar * f.scalar / n2) * d;
        break;
      }
    }
  }
  return y;
}

RealCurveSample finite_difference_sample(const std::function<Eigen::VectorXd(double)>& curve, double t,
                                         double h) {
  struct Derivs {
    Eigen::VectorXd d1, d2, d3;
  };
  const Eigen::VectorXd x0 = curve(t);
  auto stencil = [&](double step) {
    Eigen::VectorXd f[7];
    for (int j = -3; j <= 3; ++j) f[j + 3] = j == 0 ? x0 : curve(t + j * step);
    Derivs d;
    d.d1 = (-f[0] + 9.0 * f[1] - 45.0 * f[2] + 45.0 * f[4] - 9.0 * f[5] + f[6]) / (60.0 * step);
    d.d2 = (2.0 * f[0] - 27.0 * f[1] + 270.0 * f[2] - 490.0 * f[3] + 270.0 * f[4] - 27.0 * f[5] +
            2.0 * f[6]) /
           (180.0 * step * step);
    d.d3 = (f[0] - 8.0 * f[1] + 13.0 * f[2] - 13.0 * f[4] + 8.0 * f[5] - f[6]) / (8.0 * step * step * step);
    return d;
  };
  const Derivs coarse = stencil(h);
  const Derivs fine = stencil(0.5 * h);
  RealCurveSample s;
  s.t = t;
  s.x0 = x0;
  s.x1 = (64.0 * fine.d1 - coarse.d1) / 63.0;
  s.x2 = (64.0 * fine.d2 - coarse.d2) / 63.0;
  s.x3 = (16.0 * fine.d3 - coarse.d3) / 15.0;
  return s;
}

double s1_mobius_invariance_check(const HoloCurve& curve, const PlaneCurve& path, const MobiusRn& m,
                                  double t) {
  const RealCurveSample exact = compose_sample(curve, path, t);
  if (m.dim() != exact.x0.size()) throw DomainError("Mobius map dimension does not match 2n");
  auto transformed = [&](double s) { return m.apply(compose_sample(curve, path, s).x0); };
  // Rounding and truncation trade off differently per curve; take the step
  // where two neighbouring step sizes agree best.
  std::vector<double> est;
  for (double h : {3e-2, 1e-2, 3e-3, 1e-3}) {
    try {
      est.push_back(s1_direct(finite_difference_sample(transformed, t, h)));
    } catch (const DomainError&) {
      est.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  double best = std::numeric_limits<double>::quiet_NaN();
  double spread = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < est.size(); ++k) {
    const double d = std::abs(est[k] - est[k + 1]);
    if (d < spread) {
      spread = d;
      best = est[k];
    }
  }
  if (std::isnan(best)) throw DomainError("no finite-difference stencil fits inside the disk");
  return std::abs(best - s1_direct(exact));
}

}  // namespace holoschwarz
