#pragma once

#include <cstdint>
#include <vector>

#include "varreg/core.hpp"
#include "varreg/quadrature.hpp"

namespace varreg {

/// Finite-Blaschke-type self map of the disk fixing the origin:
///   psi(z) = scale * e^{i rotation} * z * prod_k (z - alpha_k)/(1 - conj(alpha_k) z),
/// with all |alpha_k| < 1 and scale in [0,1]. scale = 0 collapses psi to 0.
struct SchwarzGenerator {
  std::vector<Complex> zeros;
  double rotation = 0.0;
  double scale = 1.0;
};

inline Complex schwarz_psi(const SchwarzGenerator& gen, Complex z) {
  Complex p = gen.scale * std::polar(1.0, gen.rotation) * z;
  for (const Complex a : gen.zeros) p *= (z - a) / (1.0 - std::conj(a) * z);
  return p;
}

/// A concrete class member built from a Schwarz generator: its Schwarz
/// function is omega(z) = z delta(psi(z), lambda), which automatically
/// satisfies omega(0) = 0 and omega'(0) = lambda.
struct MemberFunction {
  ClassParams params;
  SchwarzGenerator generator;
};

inline Complex omega_f(const MemberFunction& m, Complex z) {
  return z * mobius_delta(schwarz_psi(m.generator, z), m.params.lambda);
}

/// The positive-real-part transform P_f = (1 + omega_f)/(1 - omega_f).
/// P_f(0) = 1 and P_f'(0) = 2 lambda.
inline Complex p_f(const MemberFunction& m, Complex z) {
  const Complex om = omega_f(m, z);
  const Complex den = 1.0 - om;
  if (std::abs(den) < kDenomThreshold)
    throw degenerate_denominator("p_f: omega too close to 1");
  return (1.0 + om) / den;
}

namespace detail {

// Integrand of log f. The raw form (P_f(z) - (1+z)/(1-z))/(2z) has a
// removable singularity at 0 and cancels catastrophically near it; the
// rearrangement below is exactly equal and regular:
//   (delta(psi(z),lambda) - 1) / ((1 - omega_f(z))(1 - z)),
// with value (lambda-1) at z = 0.
inline Complex log_f_integrand(const MemberFunction& m, Complex z) {
  const Complex d = mobius_delta(schwarz_psi(m.generator, z), m.params.lambda);
  const Complex den = (1.0 - z * d) * (1.0 - z);
  if (std::abs(den) < kDenomThreshold)
    throw degenerate_denominator("log_f_integrand: pole too close");
  return (d - 1.0) / den;
}

}  // namespace detail

/// log f(z0) for a generated member, by segment quadrature of
/// (mu/pi) Int_0^{z0} (delta(psi,lambda) - 1)/((1 - omega_f)(1 - z)) dz.
inline QuadratureResult log_f_result(const MemberFunction& m, const EvalPoint& at,
                                     double tol = kDefaultQuadTol) {
  QuadratureResult raw = integrate_segment(
      [&](Complex z) { return detail::log_f_integrand(m, z); }, at.z0, tol);
  const Complex mu = m.params.mu;
  return {mu / kPi * raw.value, std::abs(mu) / kPi * raw.err_estimate, raw.evaluations};
}

inline Complex log_f(const MemberFunction& m, const EvalPoint& at,
                     double tol = kDefaultQuadTol) {
  return log_f_result(m, at, tol).value;
}

namespace detail {

// SplitMix64: tiny, well-known, and identical on every platform. We use it
// instead of <random> distributions, whose output is implementation-defined.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace detail

/// Deterministic pseudo-random member: between 1 and max_degree Blaschke
/// zeros, area-uniform with |alpha| <= 0.9, uniform rotation. Batch sampling
/// splits seeds as seed + member index.
inline MemberFunction random_member(std::uint64_t seed, const ClassParams& params,
                                    std::size_t max_degree = 4) {
  if (max_degree > 8) throw error("random_member: max_degree must be <= 8");
  detail::SplitMix64 rng(seed);
  SchwarzGenerator gen;
  const std::size_t degree =
      max_degree == 0 ? 0 : 1 + static_cast<std::size_t>(rng.next() % max_degree);
  gen.zeros.reserve(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const double rad = 0.9 * std::sqrt(rng.u01());
    const double phase = 2.0 * kPi * rng.u01() - kPi;
    gen.zeros.push_back(std::polar(rad, phase));
  }
  gen.rotation = 2.0 * kPi * rng.u01() - kPi;
  gen.scale = 1.0;
  return {params, gen};
}

}  // namespace varreg
