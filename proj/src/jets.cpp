#include "holoschwarz/jets.hpp"

#include <cmath>

#include "holoschwarz/errors.hpp"

namespace holoschwarz {

Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

Jet3 operator-(const Jet3& a) { return {-a.value, -a.d1, -a.d2, -a.d3}; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.value * b.value,
          a.d1 * b.value + a.value * b.d1,
          a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
          a.d3 * b.value + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.value * b.d3};
}

Jet3 operator*(cplx s, const Jet3& a) { return {s * a.value, s * a.d1, s * a.d2, s * a.d3}; }
Jet3 operator*(const Jet3& a, cplx s) { return s * a; }
Jet3 operator+(const Jet3& a, cplx s) { return {a.value + s, a.d1, a.d2, a.d3}; }
Jet3 operator-(const Jet3& a, cplx s) { return {a.value - s, a.d1, a.d2, a.d3}; }

Jet3 chain(const Jet3& outer, const Jet3& inner) {
  const cplx g1 = inner.d1, g2 = inner.d2, g3 = inner.d3;
  return {outer.value,
          outer.d1 * g1,
          outer.d2 * g1 * g1 + outer.d1 * g2,
          outer.d3 * g1 * g1 * g1 + 3.0 * outer.d2 * g1 * g2 + outer.d1 * g3};
}

Jet3 exp(const Jet3& a) {
  const cplx e = std::exp(a.value);
  return chain({e, e, e, e}, a);
}

Jet3 reciprocal(const Jet3& a) {
  const cplx v = a.value;
  if (v == cplx{0.0}) throw DomainError("jet quotient: denominator vanishes");
  const cplx r = 1.0 / v;
  const cplx r2 = r * r;
  return chain({r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2}, a);
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

double CurveJet::tangent_norm_sq() const {
  long double q = 0.0L;
  for (const auto& c : components) q += static_cast<long double>(std::norm(c.d1));
  return static_cast<double>(q);
}

void check_curve_jet(const CurveJet& jet) {
  if (!(std::abs(jet.z) < 1.0)) throw DomainError("point outside the unit disk");
  if (jet.components.empty()) throw DomainError("curve has no components");
  const double q = jet.tangent_norm_sq();
  if (!(q > 0.0) || !std::isfinite(q))
    throw DomainError("vanishing or non-finite tangent (phi' = 0) at the evaluation point");
}

}  // namespace holoschwarz
