#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "holoschwarz/jets.hpp"

namespace holoschwarz {

/// Disk automorphism T(z) = e^{i theta} (z - i rho) / (1 + i rho z).
struct DiskMobius {
  double rho = 0.0;
  double theta = 0.0;

  DiskMobius() = default;
  DiskMobius(double rho_, double theta_);

  static DiskMobius identity() { return {}; }
  static DiskMobius rotation(double theta_) { return {0.0, theta_}; }

  cplx operator()(cplx z) const;
  Jet3 jet(cplx z) const;
};

namespace component {

/// sum_k coeffs[k] z^k
struct Polynomial {
  std::vector<cplx> coeffs;
};

/// scale * exp(rate * z)
struct Exponential {
  cplx scale{1.0};
  cplx rate{1.0};
};

/// (a z + b) / (c z + d), ad - bc != 0
struct Mobius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
};

/// scale * tan(rate * z)
struct Tangent {
  cplx scale{1.0};
  cplx rate{1.0};
};

/// scale * atanh(z) = (scale / 2) log((1 + z) / (1 - z))
struct LogStrip {
  cplx scale{1.0};
};

}  // namespace component

using ComponentFn = std::variant<component::Polynomial, component::Exponential, component::Mobius,
                                 component::Tangent, component::LogStrip>;

Jet3 eval_component(const ComponentFn& fn, cplx z);

/// Evaluatable holomorphic curve D -> C^n. Immutable; copies share the model.
class HoloCurve {
 public:
  struct Model;

  static HoloCurve from_components(std::vector<ComponentFn> components, std::string label = {});
  static HoloCurve identity();
  static HoloCurve polynomial(std::vector<std::vector<cplx>> coeffs, std::string label = {});
  /// (c e^{pi z}, e^{-pi z}); requires c^2 e^{-4 pi} >= 5 + 2 sqrt 6.
  static HoloCurve example1(double c);
  /// (f, 1/f) with f = (c Phi + i)/(c Phi - i), Phi = atanh; requires i/c outside Phi(D).
  static HoloCurve example2(double c);

  HoloCurve precomposed(const DiskMobius& t) const;
  HoloCurve scaled(double factor) const;

  std::size_t dimension() const;
  const std::string& label() const;

  /// Jets without validation of the domain or the tangent.
  std::vector<Jet3> jets(cplx z) const;
  std::vector<cplx> values(cplx z) const;

  const Model& model() const { return *model_; }

 private:
  explicit HoloCurve(std::shared_ptr<const Model> model) : model_(std::move(model)) {}

  std::shared_ptr<const Model> model_;
};

/// Smallest c accepted by HoloCurve::example1: e^{2 pi} sqrt(5 + 2 sqrt 6).
double example1_min_c();
/// Supremum of admissible c for HoloCurve::example2 (i/c must leave the strip |Im| < pi/4).
double example2_max_c();

/// Jets at z, with |z| < 1 and nonvanishing tangent enforced.
CurveJet eval_curve(const HoloCurve& curve, cplx z);

HoloCurve precompose_disk_mobius(const HoloCurve& curve, const DiskMobius& t);

}  // namespace holoschwarz
