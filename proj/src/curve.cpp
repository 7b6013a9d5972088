#include "holoschwarz/curve.hpp"

#include <cmath>
#include <sstream>

#include "holoschwarz/errors.hpp"

namespace holoschwarz {

namespace {

constexpr cplx kI{0.0, 1.0};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

DiskMobius::DiskMobius(double rho_, double theta_) : rho(rho_), theta(theta_) {
  if (!(std::abs(rho) < 1.0) || !std::isfinite(theta))
    throw DomainError("disk Mobius map needs |rho| < 1 and finite theta");
}

cplx DiskMobius::operator()(cplx z) const {
  return std::polar(1.0, theta) * (z - kI * rho) / (1.0 + kI * rho * z);
}

Jet3 DiskMobius::jet(cplx z) const {
  const cplx rot = std::polar(1.0, theta);
  const cplx w = 1.0 + kI * rho * z;
  const cplx det = 1.0 - rho * rho;
  const cplx c = kI * rho;
  return {rot * (z - kI * rho) / w, rot * det / (w * w), -2.0 * c * rot * det / (w * w * w),
          6.0 * c * c * rot * det / (w * w * w * w)};
}

Jet3 eval_component(const ComponentFn& fn, cplx z) {
  return std::visit(
      overloaded{
          [z](const component::Polynomial& p) {
            // Horner on the jet of the identity.
            Jet3 acc = Jet3::constant(0.0);
            const Jet3 x = Jet3::variable(z);
            for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
            return acc;
          },
          [z](const component::Exponential& e) {
            const cplx v = e.scale * std::exp(e.rate * z);
            return Jet3{v, e.rate * v, e.rate * e.rate * v, e.rate * e.rate * e.rate * v};
          },
          [z](const component::Mobius& m) {
            const cplx det = m.a * m.d - m.b * m.c;
            if (det == cplx{0.0}) throw DomainError("degenerate Mobius component (ad - bc = 0)");
            const cplx w = m.c * z + m.d;
            if (w == cplx{0.0}) throw DomainError("Mobius component pole");
            return Jet3{(m.a * z + m.b) / w, det / (w * w), -2.0 * m.c * det / (w * w * w),
                        6.0 * m.c * m.c * det / (w * w * w * w)};
          },
          [z](const component::Tangent& t) {
            const cplx a = t.rate;
            const cplx tz = std::tan(a * z);
            if (!std::isfinite(std::abs(tz))) throw DomainError("tangent component pole");
            const cplx s = 1.0 + tz * tz;
            return Jet3{t.scale * tz, t.scale * a * s, t.scale * 2.0 * a * a * tz * s,
                        t.scale * 2.0 * a * a * a * s * (1.0 + 3.0 * tz * tz)};
          },
          [z](const component::LogStrip& l) {
            const cplx w = 1.0 - z * z;
            if (w == cplx{0.0}) throw DomainError("log-strip component singularity");
            return Jet3{l.scale * std::atanh(z), l.scale / w, l.scale * 2.0 * z / (w * w),
                        l.scale * (2.0 + 6.0 * z * z) / (w * w * w)};
          },
      },
      fn);
}

namespace model {

struct Components {
  std::vector<ComponentFn> fns;
};
struct Example1 {
  double c;
};
struct Example2 {
  double c;
};
struct Precomposed {
  HoloCurve inner;
  DiskMobius t;
};
struct Scaled {
  HoloCurve inner;
  double factor;
};

}  // namespace model

struct HoloCurve::Model {
  std::variant<model::Components, model::Example1, model::Example2, model::Precomposed, model::Scaled>
      kind;
  std::size_t n;
  std::string label;
};

double example1_min_c() { return std::exp(2.0 * kPi) * std::sqrt(5.0 + 2.0 * std::sqrt(6.0)); }

double example2_max_c() { return 4.0 / kPi; }

HoloCurve HoloCurve::from_components(std::vector<ComponentFn> components, std::string label) {
  if (components.empty()) throw DomainError("a curve needs at least one component");
  const std::size_t n = components.size();
  return HoloCurve(std::make_shared<const Model>(
      Model{model::Components{std::move(components)}, n, label.empty() ? "components" : label}));
}

HoloCurve HoloCurve::identity() {
  return from_components({component::Polynomial{{0.0, 1.0}}}, "identity");
}

HoloCurve HoloCurve::polynomial(std::vector<std::vector<cplx>> coeffs, std::string label) {
  std::vector<ComponentFn> fns;
  fns.reserve(coeffs.size());
  for (auto& c : coeffs) fns.emplace_back(component::Polynomial{std::move(c)});
  return from_components(std::move(fns), label.empty() ? "polynomial" : std::move(label));
}

HoloCurve HoloCurve::example1(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("example1: c must be positive and finite");
  const double s_min = c * c * std::exp(-4.0 * kPi);
  if (s_min < 5.0 + 2.0 * std::sqrt(6.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "example1: c = " << c << " is below the validity threshold c >= e^{2 pi} sqrt(5 + 2 sqrt 6) = "
        << example1_min_c() << " (needed for c^2 e^{-4 pi} >= 5 + 2 sqrt 6)";
    throw DomainError(msg.str());
  }
  std::ostringstream label;
  label.precision(17);
  label << "example1(c=" << c << ")";
  return HoloCurve(std::make_shared<const Model>(Model{model::Example1{c}, 2, label.str()}));
}

HoloCurve HoloCurve::example2(double c) {
  if (!(c > 0.0) || !(c < example2_max_c()))
    throw DomainError("example2: c must lie in (0, 4/pi) so that i/c is outside Phi(D)");
  std::ostringstream label;
  label.precision(17);
  label << "example2(c=" << c << ")";
  return HoloCurve(std::make_shared<const Model>(Model{model::Example2{c}, 2, label.str()}));
}

HoloCurve HoloCurve::precomposed(const DiskMobius& t) const {
  std::ostringstream label;
  label.precision(17);
  label << model_->label << " o T(rho=" << t.rho << ",theta=" << t.theta << ")";
  return HoloCurve(
      std::make_shared<const Model>(Model{model::Precomposed{*this, t}, model_->n, label.str()}));
}

HoloCurve HoloCurve::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
  std::ostringstream label;
  label.precision(17);
  label << factor << " * " << model_->label;
  return HoloCurve(
      std::make_shared<const Model>(Model{model::Scaled{*this, factor}, model_->n, label.str()}));
}

std::size_t HoloCurve::dimension() const { return model_->n; }

const std::string& HoloCurve::label() const { return model_->label; }

std::vector<Jet3> HoloCurve::jets(cplx z) const {
  return std::visit(
      overloaded{
          [z](const model::Components& m) {
            std::vector<Jet3> out;
            out.reserve(m.fns.size());
            for (const auto& fn : m.fns) out.push_back(eval_component(fn, z));
            return out;
          },
          [z](const model::Example1& m) {
            return std::vector<Jet3>{eval_component(component::Exponential{m.c, kPi}, z),
                                     eval_component(component::Exponential{1.0, -kPi}, z)};
          },
          [z](const model::Example2& m) {
            const Jet3 phi = eval_component(component::LogStrip{}, z);
            const Jet3 num = m.c * phi + kI;
            const Jet3 den = m.c * phi - kI;
            return std::vector<Jet3>{num / den, den / num};
          },
          [z](const model::Precomposed& m) {
            const Jet3 t = m.t.jet(z);
            std::vector<Jet3> out = m.inner.jets(t.value);
            for (auto& j : out) j = chain(j, t);
            return out;
          },
          [z](const model::Scaled& m) {
            std::vector<Jet3> out = m.inner.jets(z);
            for (auto& j : out) j = m.factor * j;
            return out;
          },
      },
      model_->kind);
}

std::vector<cplx> HoloCurve::values(cplx z) const {
  std::vector<cplx> out;
  for (const auto& j : jets(z)) out.push_back(j.value);
  return out;
}

CurveJet eval_curve(const HoloCurve& curve, cplx z) {
  if (!(std::abs(z) < 1.0)) throw DomainError("point outside the unit disk");
  CurveJet jet{z, curve.jets(z)};
  check_curve_jet(jet);
  return jet;
}

HoloCurve precompose_disk_mobius(const HoloCurve& curve, const DiskMobius& t) {
  return curve.precomposed(t);
}

}  // namespace holoschwarz
