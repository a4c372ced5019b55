#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "varreg/core.hpp"
#include "varreg/extremal.hpp"
#include "varreg/quadrature.hpp"
#include "varreg/region.hpp"

namespace varreg {

/// Closed disk in the w = log f(z0) plane.
struct DiskBound {
  Complex center;
  double radius = 0.0;
};

/// Pointwise disk centre c(z, lambda) (without the mu/pi factor):
/// (|z|^2 (conj(z)-lambda)(1-conj(lambda)) - (1-lambda)(1-conj(lambda) conj(z)))
/// / ((1-z)(1-|z|^2)(1+|z|^2-2 Re(lambda z))).
inline Complex c_center(Complex z, Complex lambda) {
  const double zz = std::norm(z);
  const Complex zb = std::conj(z);
  const Complex num =
      zz * (zb - lambda) * (1.0 - std::conj(lambda)) -
      (1.0 - lambda) * (1.0 - std::conj(lambda) * zb);
  const double quad = 1.0 + zz - 2.0 * (lambda * z).real();
  return num / ((1.0 - z) * (1.0 - zz) * quad);
}

/// Pointwise disk radius r(z, lambda) (without the |mu|/pi factor):
/// (1-|lambda|^2)|z| / ((1-|z|^2)(1+|z|^2-2 Re(lambda z))). Vanishes iff
/// z = 0 or |lambda| = 1.
inline double r_radius(Complex z, Complex lambda) {
  const double zz = std::norm(z);
  const double quad = 1.0 + zz - 2.0 * (lambda * z).real();
  // clamp: |lambda| = 1 computed in floats can land a hair above 1
  const double one_minus = std::max(0.0, 1.0 - std::norm(lambda));
  return one_minus * std::abs(z) / ((1.0 - zz) * quad);
}

/// Pointwise bound on f'/f over the class: a disk every member's
/// logarithmic derivative lies in, attained exactly by the |a| = 1 members.
inline DiskBound schwarz_disk(const ClassParams& params, Complex z) {
  return {params.mu / kPi * c_center(z, params.lambda),
          std::abs(params.mu) / kPi * r_radius(z, params.lambda)};
}

/// Disk containing the whole region, from integrating the pointwise bound
/// along a C^1 path from 0 to z0:
///   center = (mu/pi) Int c(z(t)) z'(t) dt,
///   radius = (|mu|/pi) Int r(z(t)) |z'(t)| dt.
inline DiskBound path_bound(const ClassParams& params, const PathSpec& path,
                            double tol = kDefaultQuadTol) {
  validate_path(path);
  if (std::abs(path.nodes.front().z) > 1e-12)
    throw invalid_path("path_bound: path must start at 0");
  const Complex lam = params.lambda;
  const QuadratureResult C = integrate_path(
      [lam](Complex z, Complex dz) { return c_center(z, lam) * dz; }, path, tol,
      PathMode::value);
  const QuadratureResult R = integrate_path(
      [lam](Complex z, Complex dz) { return r_radius(z, lam) * dz; }, path, tol,
      PathMode::modulus);
  return {params.mu / kPi * C.value,
          std::abs(params.mu) / kPi * std::max(0.0, R.value.real())};
}

// ---------------------------------------------------------------------------
// The auxiliary function G and the tangency path gamma0
// ---------------------------------------------------------------------------

/// Context for G(z) = (mu/pi) Int_0^z e^{i theta} zeta / Q(zeta)^2 dzeta with
/// Q(zeta) = 1 + (conj(lambda) e^{i theta} - lambda) zeta - e^{i theta} zeta^2.
/// Q factors as (1 - z/z1)(1 - z/z2) with both roots on the unit circle,
/// so G has a double zero at 0 and no other zeros in the disk.
struct GContext {
  double theta = 0.0;
  ClassParams params;
  double b = 0.0;  // Im(conj(lambda) e^{i theta/2})
  Complex z1, z2;
};

inline GContext g_roots(double theta, const ClassParams& params) {
  GContext ctx;
  ctx.theta = theta;
  ctx.params = params;
  const Complex half = std::polar(1.0, theta / 2.0);
  ctx.b = (std::conj(params.lambda) * half).imag();
  const double root = std::sqrt(std::max(0.0, 1.0 - ctx.b * ctx.b));
  ctx.z1 = std::conj(half) * Complex{root, ctx.b};
  ctx.z2 = std::conj(half) * Complex{-root, ctx.b};
  return ctx;
}

inline Complex g_quad_poly(const GContext& ctx, Complex z) {
  const Complex eit = std::polar(1.0, ctx.theta);
  return 1.0 + (std::conj(ctx.params.lambda) * eit - ctx.params.lambda) * z - eit * z * z;
}

/// Closed-form integrand of G (equals G'(z) up to the mu/pi factor).
inline Complex g_integrand(const GContext& ctx, Complex z) {
  const Complex q = g_quad_poly(ctx, z);
  return std::polar(1.0, ctx.theta) * z / (q * q);
}

/// 1 + z G''(z)/G'(z), from the closed forms. Positive real part on the disk
/// (G' is z times a nonvanishing factor with unit-circle roots only).
inline Complex g_curvature(const GContext& ctx, Complex z) {
  const Complex eit = std::polar(1.0, ctx.theta);
  const Complex q = g_quad_poly(ctx, z);
  const Complex dq = (std::conj(ctx.params.lambda) * eit - ctx.params.lambda) - 2.0 * eit * z;
  // G' = e^{i theta} z / q^2  =>  G''/G' = 1/z - 2 q'/q
  return 2.0 - 2.0 * z * dq / q;
}

namespace detail {

// Reduced G (no mu/pi prefactor), two-pass so the tolerance tracks |G|.
inline Complex g_reduced(const GContext& ctx, Complex z) {
  if (z == Complex{0.0, 0.0}) return {};
  auto f = [&](Complex w) { return g_integrand(ctx, w); };
  QuadratureResult first = integrate_segment(f, z, 1e-12);
  const double scale = std::abs(first.value);
  return integrate_segment(f, z, std::max(1e-13 * scale, 1e-16)).value;
}

}  // namespace detail

/// G(z) by segment quadrature (with the mu/pi factor applied, and the error
/// estimate scaled accordingly).
inline QuadratureResult G_eval(const GContext& ctx, Complex z, double tol = kDefaultQuadTol) {
  QuadratureResult raw =
      integrate_segment([&](Complex w) { return g_integrand(ctx, w); }, z, tol);
  const Complex mu = ctx.params.mu;
  return {mu / kPi * raw.value, std::abs(mu) / kPi * raw.err_estimate, raw.evaluations};
}

/// The path gamma0: z(t) = G0^{-1}(t G0(z0)), realised by tracking
/// G(z(t)) = t^2 G(z0) with an RK4 predictor on G'(z) z' = 2 t G(z0) and a
/// Newton corrector. The square-root branch of G0(z0) is pinned by requiring
/// the continuation to stay in the disk and land on z0 at t = 1.
///
/// The returned PathSpec has n uniform nodes (t = k/(n-1)) and an evaluator
/// that Newton-refines interior points to the same accuracy, so path
/// integrals over gamma0 are not limited by node resolution. G has a double
/// zero at 0, so tracking starts from the asymptotic seed z ~ t G0(z0) at
/// t = 1e-3 rather than from the singular ODE at t = 0.
inline PathSpec gamma0_path(const GContext& ctx, const EvalPoint& at, std::size_t n = 257) {
  const Complex z0 = at.z0;
  if (z0 == Complex{0.0, 0.0}) throw error("gamma0_path: z0 must be nonzero");
  if (std::abs(ctx.params.lambda) >= kUnimodularThreshold)
    throw error("gamma0_path: |lambda| must be < 1");
  if (n < 3) throw error("gamma0_path: need at least 3 nodes");

  const Complex g_z0 = detail::g_reduced(ctx, z0);
  const double scale = std::abs(g_z0);
  const double newton_tol = 1e-12 * scale;
  const double inc_tol = 1e-14 * scale;
  const Complex eit = std::polar(1.0, ctx.theta);
  // G0(z0)^2 = 2 e^{-i theta} G(z0) (reduced), principal root first
  const Complex g0_z0_principal = std::sqrt(2.0 * std::conj(eit) * g_z0);

  std::vector<double> grid;
  grid.reserve(n + 1);
  const double t_min = 1e-3;
  grid.push_back(t_min);
  for (std::size_t k = 1; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    if (t > t_min) grid.push_back(t);
  }

  auto q_of = [ctx](Complex z) { return g_integrand(ctx, z); };

  std::string failure;
  for (int branch = 0; branch < 2; ++branch) {
    const Complex g0_z0 = (branch == 0) ? g0_z0_principal : -g0_z0_principal;
    const Complex seed = t_min * g0_z0;
    // incremental evaluation of reduced G along the visited sequence
    Complex z_cur = seed;
    Complex g_cur = integrate_segment([&](Complex w) { return g_integrand(ctx, w); },
                                      seed, inc_tol).value;
    auto target = [&](Complex z) {
      if (z != z_cur) {
        g_cur += integrate_segment_between(
                     [&](Complex w) { return g_integrand(ctx, w); }, z_cur, z, inc_tol)
                     .value;
        z_cur = z;
      }
      return g_cur;
    };
    PathSpec raw;
    try {
      raw = newton_continue(target, q_of,
                            [g_z0](double t) { return t * t * g_z0; },
                            [g_z0](double t) { return 2.0 * t * g_z0; },
                            seed, grid, newton_tol);
    } catch (const error& e) {
      failure = e.what();
      continue;
    }
    if (std::abs(raw.nodes.back().z - z0) > 1e-8) {
      failure = "continuation landed on the conjugate preimage";
      continue;
    }

    // assemble: node at t=0 plus the uniform grid (drop the t_min helper)
    PathSpec path;
    path.kind = PathKind::gamma0;
    path.nodes.reserve(n);
    path.nodes.push_back({0.0, {0.0, 0.0}, g0_z0});
    for (const auto& node : raw.nodes)
      if (node.t > t_min) path.nodes.push_back(node);

    auto nodes = path.nodes;  // captured by value below
    path.evaluator = [ctx, nodes, g_z0, newton_tol, inc_tol](double t) -> PathNode {
      if (t <= 0.0) return nodes.front();
      if (t >= 1.0) return nodes.back();
      auto it = std::upper_bound(nodes.begin(), nodes.end(), t,
                                 [](double v, const PathNode& m) { return v < m.t; });
      const PathNode& anchor = *(it - 1);
      PathNode p = detail::hermite_between(anchor, *it, t);
      const Complex want = t * t * g_z0;
      Complex z = p.z;
      Complex g = anchor.t * anchor.t * g_z0 +
                  integrate_segment_between(
                      [&](Complex w) { return g_integrand(ctx, w); }, anchor.z, z, inc_tol)
                      .value;
      for (int iter = 0; iter < 25 && std::abs(g - want) > newton_tol; ++iter) {
        const Complex step = (g - want) / g_integrand(ctx, z);
        const Complex znew = z - step;
        g += integrate_segment_between(
                 [&](Complex w) { return g_integrand(ctx, w); }, z, znew, inc_tol)
                 .value;
        z = znew;
      }
      if (!is_finite(z) || std::abs(g - want) > 100.0 * newton_tol)
        throw no_convergence("gamma0 evaluator: interior refinement stalled");
      const Complex dz = 2.0 * t * g_z0 / g_integrand(ctx, z);
      return {t, z, dz};
    };
    return path;
  }
  throw branch_ambiguity("gamma0_path: both square-root branches failed (" + failure + ")");
}

/// |LHS - RHS| of the extremal identity
///   H'/H - (mu/pi) c(z,lambda) = (|mu|/pi) r(z,lambda) G'(z)/|G'(z)|
/// for the boundary member a = e^{i theta}, all sides in closed form.
inline double extremal_identity_residual(const GContext& ctx, Complex z) {
  if (z == Complex{0.0, 0.0})
    throw error("extremal_identity_residual: z must be nonzero (G'(0) = 0)");
  const ClassParams& p = ctx.params;
  const ExtremalSpec spec{p, std::polar(1.0, ctx.theta)};
  const Complex lhs = dlog_H(spec, z) - p.mu / kPi * c_center(z, p.lambda);
  const Complex q = g_integrand(ctx, z);
  const Complex rhs = p.mu / kPi * r_radius(z, p.lambda) * q / std::abs(q);
  return std::abs(lhs - rhs);
}

struct TangencyReport {
  Complex boundary_point;    // log H_{e^{i theta}}(z0)
  DiskBound disk;            // the gamma0 path bound
  Complex g_phase;           // G(z0)/|G(z0)|
  Complex residual;          // (log H - center) - g_phase * radius
  double relative_residual = 0.0;  // |residual| / radius
  double modulus_gap = 0.0;        // | |log H - center| - radius | / radius
  double direction_error = 0.0;    // | (log H - center)/|...| - g_phase |
};

/// Verify that the boundary point log H_{e^{i theta}}(z0) sits exactly on
/// the boundary circle of the gamma0 path bound, in the direction
/// G(z0)/|G(z0)|.
inline TangencyReport check_tangency(const GContext& ctx, const EvalPoint& at,
                                     double tol = kDefaultQuadTol) {
  const ClassParams& p = ctx.params;
  const PathSpec path = gamma0_path(ctx, at);
  const DiskBound disk = path_bound(p, path, tol);
  const ExtremalSpec spec{p, std::polar(1.0, ctx.theta)};
  const Complex w = log_H(spec, at, tol);

  const Complex g_z0 = detail::g_reduced(ctx, at.z0);
  const Complex phase = (p.mu / std::abs(p.mu)) * (g_z0 / std::abs(g_z0));

  TangencyReport rep;
  rep.boundary_point = w;
  rep.disk = disk;
  rep.g_phase = phase;
  const Complex lhs = w - disk.center;
  rep.residual = lhs - phase * disk.radius;
  rep.relative_residual = std::abs(rep.residual) / disk.radius;
  rep.modulus_gap = std::abs(std::abs(lhs) - disk.radius) / disk.radius;
  rep.direction_error = std::abs(lhs / std::abs(lhs) - phase);
  return rep;
}

}  // namespace varreg
