#pragma once

#include "holoschwarz/jets.hpp"

namespace holoschwarz {

/// Pointwise conformal data of a holomorphic curve phi = (f_1, ..., f_n).
///
/// With Q = sum |f_k'|^2, P = sum conj(f_k') f_k'', R = sum conj(f_k') f_k''' and
/// W = sum_{i<j} |f_i' f_j'' - f_j' f_i''|^2:
///   sigma = log(Q)/2,  sigma_z = P/(2Q),  S(phi) = R/Q - (3/2)(P/Q)^2,
///   Laplacian(sigma) = 2 W / Q^2,  K = -2 W / Q^3.
/// second_form_sq is |II(V,V)|^2 taken separately as |phi'' - (P/Q) phi'|^2 / Q^2,
/// which equals W / Q^3 = |K|/2.
struct ConformalData {
  double sigma = 0.0;
  double Q = 0.0;
  cplx P{};
  cplx R{};
  double wronskian_sq = 0.0;
  cplx schwarzian{};
  double curvature = 0.0;
  double second_form_sq = 0.0;

  cplx sigma_z() const { return P / (2.0 * Q); }
  /// |phi'|^2 |K| = (3/4)^{-1} times the curvature term of the criterion.
  double scaled_curvature() const;
  /// (3/4) |phi'|^2 |K|
  double curvature_term() const { return 0.75 * scaled_curvature(); }
};

/// Throws DomainError when the tangent vanishes.
ConformalData conformal_data(const CurveJet& jet);

/// f'''/f' - (3/2)(f''/f')^2; throws DomainError when f' = 0.
cplx classical_schwarzian(const Jet3& f);

/// |S(phi)| + (3/4) |phi'|^2 |K|
double criterion_lhs(const CurveJet& jet);
double criterion_lhs(const ConformalData& data);

}  // namespace holoschwarz
