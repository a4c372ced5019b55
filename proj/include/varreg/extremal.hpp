#pragma once

#include "varreg/core.hpp"
#include "varreg/quadrature.hpp"

namespace varreg {

/// The distinguished family member attached to a parameter a with |a| <= 1.
/// Boundary members use a = e^{i theta}.
struct ExtremalSpec {
  ClassParams params;
  Complex a;
};

/// Integrand of log H: ((lambda-1) + (1-conj(lambda)) a z) /
/// ((1-z)(1 + (conj(lambda) a - lambda) z - a z^2)), i.e. the
/// denominator-cleared form of (delta(a z,lambda)-1)/((1-delta(a z,lambda) z)(1-z)).
/// Excludes the mu/pi prefactor. Poles sit on |z| = 1 only.
inline Complex h_log_integrand(const ExtremalSpec& spec, Complex zeta) {
  const Complex lam = spec.params.lambda;
  const Complex num = (lam - 1.0) + (1.0 - std::conj(lam)) * spec.a * zeta;
  const Complex lin = 1.0 - zeta;
  const Complex quad = 1.0 + (std::conj(lam) * spec.a - lam) * zeta - spec.a * zeta * zeta;
  if (std::abs(lin) < kDenomThreshold || std::abs(quad) < kDenomThreshold)
    throw degenerate_denominator("h_log_integrand: pole too close");
  return num / (lin * quad);
}

/// log H evaluated by segment quadrature, i.e. the single-valued branch with
/// log H(0) = 0. err_estimate carries the |mu|/pi prefactor.
inline QuadratureResult log_H_result(const ExtremalSpec& spec, const EvalPoint& at,
                                     double tol = kDefaultQuadTol) {
  QuadratureResult raw =
      integrate_segment([&](Complex z) { return h_log_integrand(spec, z); }, at.z0, tol);
  const Complex mu = spec.params.mu;
  return {mu / kPi * raw.value, std::abs(mu) / kPi * raw.err_estimate, raw.evaluations};
}

inline Complex log_H(const ExtremalSpec& spec, const EvalPoint& at,
                     double tol = kDefaultQuadTol) {
  return log_H_result(spec, at, tol).value;
}

/// Closed-form logarithmic derivative H'/H = (mu/pi) h_log_integrand.
inline Complex dlog_H(const ExtremalSpec& spec, Complex z) {
  return spec.params.mu / kPi * h_log_integrand(spec, z);
}

/// Schwarz function of the family member: omega(z) = z delta(a z, lambda).
/// Satisfies omega(0) = 0 and omega'(0) = lambda.
inline Complex omega_H(const ExtremalSpec& spec, Complex z) {
  return z * mobius_delta(spec.a * z, spec.params.lambda);
}

/// (mu/pi)(Log(1-z0) - Log(1-lambda z0)): the single point the region
/// collapses to when |lambda| = 1 or z0 = 0, and an interior point of the
/// region otherwise. Both log arguments stay in the right half-plane for
/// valid inputs, so principal logarithms realise the correct branch.
inline Complex degenerate_value(const ClassParams& params, const EvalPoint& at) {
  const Complex u = 1.0 - at.z0;
  const Complex v = 1.0 - params.lambda * at.z0;
  if (u.real() <= 0.0 || v.real() <= 0.0)
    throw error("degenerate_value: branch assumption violated (invalid inputs?)");
  return params.mu / kPi * (std::log(u) - std::log(v));
}

}  // namespace varreg
