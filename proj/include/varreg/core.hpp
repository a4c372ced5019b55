#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace varreg {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Moebius denominators below this magnitude count as degenerate. Strictly
// inside the disk the denominators stay bounded away from zero, so this
// only triggers for |z| = |lambda| = 1 configurations.
inline constexpr double kDenomThreshold = 1e-14;

// |lambda| at or above this is treated as the unimodular (singleton) case.
inline constexpr double kUnimodularThreshold = 1.0 - 1e-12;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct invalid_mu : error { using error::error; };
struct invalid_lambda : error { using error::error; };
struct invalid_eval_point : error { using error::error; };
struct degenerate_denominator : error { using error::error; };
struct no_convergence : error { using error::error; };
struct invalid_path : error { using error::error; };
struct continuation_stall : error { using error::error; };
struct left_disk : error { using error::error; };
struct branch_ambiguity : error { using error::error; };
struct too_few_vertices : error { using error::error; };
struct non_convex_input : error { using error::error; };

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Parameter pair (mu, lambda) selecting the function class. Valid when
/// Re mu > 0 and |lambda| <= 1.
struct ClassParams {
  Complex mu;
  Complex lambda;
};

/// Evaluation point z0 with |z0| < 1.
struct EvalPoint {
  Complex z0;
};

/// Soft diagnostics attached to accepted parameters.
struct ParamCheck {
  bool lambda_near_unit = false;  // |lambda| > 1 - 1e-9: region nearly degenerate
  bool z0_near_boundary = false;  // |z0| > 0.999: quadrature cost grows
};

inline ParamCheck validate_params(const ClassParams& params, const EvalPoint& at) {
  if (!is_finite(params.mu) || params.mu.real() <= 0.0)
    throw invalid_mu("mu must be finite with Re(mu) > 0");
  if (!is_finite(params.lambda) || std::abs(params.lambda) > 1.0 + 1e-12)
    throw invalid_lambda("lambda must be finite with |lambda| <= 1");
  if (!is_finite(at.z0) || std::abs(at.z0) >= 1.0)
    throw invalid_eval_point("z0 must be finite with |z0| < 1");
  ParamCheck check;
  check.lambda_near_unit = std::abs(params.lambda) > 1.0 - 1e-9;
  check.z0_near_boundary = std::abs(at.z0) > 0.999;
  return check;
}

/// Disk automorphism delta(z, lambda) = (z + lambda) / (1 + conj(lambda) z).
/// Maps the closed unit disk into itself for |z| <= 1, |lambda| <= 1 and
/// sends 0 to lambda.
inline Complex mobius_delta(Complex z, Complex lambda) {
  const Complex den = 1.0 + std::conj(lambda) * z;
  if (std::abs(den) < kDenomThreshold)
    throw degenerate_denominator("mobius_delta: 1 + conj(lambda) z ~ 0");
  return (z + lambda) / den;
}

/// tau(z, lambda) = (z - conj(lambda)) / (1 - lambda z).
inline Complex tau(Complex z, Complex lambda) {
  const Complex den = 1.0 - lambda * z;
  if (std::abs(den) < kDenomThreshold)
    throw degenerate_denominator("tau: 1 - lambda z ~ 0");
  return (z - std::conj(lambda)) / den;
}

}  // namespace varreg
