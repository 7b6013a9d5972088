#include "holoschwarz/schwarzian.hpp"

#include <cmath>

#include "holoschwarz/errors.hpp"

namespace holoschwarz {

namespace {

// Pairwise Wronskian terms can be large and nearly cancelling in the
// individual products (Example 1 spans ~1e11 in scale), so accumulate wide.
long double wronskian_sq(const CurveJet& jet) {
  long double sum = 0.0L;
  long double comp = 0.0L;
  const auto& c = jet.components;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const std::complex<long double> ai(c[i].d1), aj(c[j].d1), bi(c[i].d2), bj(c[j].d2);
      const std::complex<long double> w = ai * bj - aj * bi;
      const long double term = std::norm(w) - comp;
      const long double t = sum + term;
      comp = (t - sum) - term;
      sum = t;
    }
  }
  return sum;
}

// |phi'' - (P/Q) phi'|^2 / Q^2: the part of phi'' normal to the complex
// tangent line, in arc-length units.
long double projected_second_form(const CurveJet& jet, long double q, std::complex<long double> p) {
  const std::complex<long double> coef = p / q;
  long double sum = 0.0L;
  for (const auto& c : jet.components) {
    const std::complex<long double> n = std::complex<long double>(c.d2) - coef * std::complex<long double>(c.d1);
    sum += std::norm(n);
  }
  return sum / (q * q);
}

}  // namespace

double ConformalData::scaled_curvature() const {
  // e^{2 sigma} |K| = 2 W / Q^2
  return 2.0 * wronskian_sq / (Q * Q);
}

ConformalData conformal_data(const CurveJet& jet) {
  long double q = 0.0L;
  std::complex<long double> p = 0.0L, r = 0.0L;
  for (const auto& c : jet.components) {
    const std::complex<long double> d1(c.d1), d2(c.d2), d3(c.d3);
    q += std::norm(d1);
    p += std::conj(d1) * d2;
    r += std::conj(d1) * d3;
  }
  if (!(q > 0.0L) || !std::isfinite(static_cast<double>(q)))
    throw DomainError("conformal data: tangent vanishes (Q = 0)");

  ConformalData out;
  out.Q = static_cast<double>(q);
  out.P = cplx(p);
  out.R = cplx(r);
  out.sigma = 0.5 * std::log(out.Q);
  const std::complex<long double> pq = p / q;
  out.schwarzian = cplx(r / q - 1.5L * pq * pq);
  const long double w = wronskian_sq(jet);
  out.wronskian_sq = static_cast<double>(w);
  out.curvature = static_cast<double>(-2.0L * w / (q * q * q));
  out.second_form_sq = static_cast<double>(projected_second_form(jet, q, p));
  return out;
}

cplx classical_schwarzian(const Jet3& f) {
  if (f.d1 == cplx{0.0}) throw DomainError("classical Schwarzian: f' = 0");
  const cplx a = f.d2 / f.d1;
  return f.d3 / f.d1 - 1.5 * a * a;
}

double criterion_lhs(const ConformalData& data) {
  return std::abs(data.schwarzian) + data.curvature_term();
}

double criterion_lhs(const CurveJet& jet) { return criterion_lhs(conformal_data(jet)); }

}  // namespace holoschwarz
