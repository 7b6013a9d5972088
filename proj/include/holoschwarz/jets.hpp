#pragma once

#include <complex>
#include <span>
#include <vector>

namespace holoschwarz {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Value and first three complex derivatives of a holomorphic function.
struct Jet3 {
  cplx value{};
  cplx d1{};
  cplx d2{};
  cplx d3{};

  static Jet3 constant(cplx c) { return {c, 0.0, 0.0, 0.0}; }
  static Jet3 variable(cplx z) { return {z, 1.0, 0.0, 0.0}; }
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator*(cplx s, const Jet3& a);
Jet3 operator*(const Jet3& a, cplx s);
Jet3 operator+(const Jet3& a, cplx s);
Jet3 operator-(const Jet3& a, cplx s);
/// Throws DomainError when the denominator value vanishes.
Jet3 operator/(const Jet3& a, const Jet3& b);

/// Chain rule to third order: `outer` holds F, F', F'', F''' evaluated at
/// inner.value; the result is the jet of F o inner.
Jet3 chain(const Jet3& outer, const Jet3& inner);

Jet3 exp(const Jet3& a);
Jet3 reciprocal(const Jet3& a);

/// Per-point derivative data of an n-component holomorphic curve.
struct CurveJet {
  cplx z{};
  std::vector<Jet3> components;

  std::size_t dimension() const { return components.size(); }
  /// Sum of |f_k'|^2.
  double tangent_norm_sq() const;
};

/// Validates |z| < 1 and a nonvanishing tangent; throws DomainError otherwise.
void check_curve_jet(const CurveJet& jet);

}  // namespace holoschwarz
