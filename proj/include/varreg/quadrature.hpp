#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "varreg/core.hpp"

namespace varreg {

/// Result of an adaptive integration. err_estimate is an absolute bound on
/// the integration error of `value`; on success it does not exceed the
/// requested tolerance.
struct QuadratureResult {
  Complex value{0.0, 0.0};
  double err_estimate = 0.0;
  long evaluations = 0;
};

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kMaxPanels = 1 << 15;

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1] (Kronrod abscissae and weights, plus the
// embedded 7-point Gauss weights at the odd Kronrod nodes and the centre).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <class F>
std::pair<Complex, double> gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Complex ik = kWgk[7] * f(c);
  Complex ig = kWg[3] * f(c);
  for (int j = 0; j < 7; ++j) {
    const Complex lo = f(c - h * kXgk[j]);
    const Complex hi = f(c + h * kXgk[j]);
    ik += kWgk[j] * (lo + hi);
    if (j % 2 == 1) ig += kWg[j / 2] * (lo + hi);
  }
  ik *= h;
  ig *= h;
  return {ik, std::abs(ik - ig)};
}

struct Panel {
  double err;
  double a, b;
  Complex value;
  bool operator<(const Panel& o) const { return err < o.err; }
};

// Globally adaptive bisection over an initial panel list: keep refining the
// worst panel until the total error estimate drops below tol.
template <class F>
QuadratureResult adapt(F&& f, const std::vector<std::pair<double, double>>& seeds,
                       double tol, int max_panels = kMaxPanels) {
  std::priority_queue<Panel> heap;
  long evals = 0;
  double total_err = 0.0;
  Complex total = 0.0;
  int panels = 0;
  for (auto [a, b] : seeds) {
    auto [v, e] = gk15(f, a, b);
    evals += 15;
    ++panels;
    total += v;
    total_err += e;
    heap.push({e, a, b, v});
  }
  while (total_err > tol) {
    if (panels >= max_panels)
      throw no_convergence("adaptive quadrature: panel budget exhausted");
    Panel worst = heap.top();
    if (worst.b - worst.a < 1e-15)
      throw no_convergence("adaptive quadrature: panel width at noise floor");
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    auto [v1, e1] = gk15(f, worst.a, m);
    auto [v2, e2] = gk15(f, m, worst.b);
    evals += 30;
    ++panels;
    total += v1 + v2 - worst.value;
    total_err += e1 + e2 - worst.err;
    heap.push({e1, worst.a, m, v1});
    heap.push({e2, m, worst.b, v2});
  }
  if (!is_finite(total))
    throw no_convergence("adaptive quadrature: non-finite result");
  return {total, total_err, evals};
}

}  // namespace detail

/// Integrate f along the straight segment from z_from to z_to.
template <class F>
QuadratureResult integrate_segment_between(F&& f, Complex z_from, Complex z_to,
                                           double tol = kDefaultQuadTol) {
  const Complex dir = z_to - z_from;
  if (dir == Complex{0.0, 0.0}) return {};
  auto g = [&](double s) { return f(z_from + s * dir) * dir; };
  return detail::adapt(g, {{0.0, 1.0}}, tol);
}

/// Integrate f along the straight segment from 0 to z_end, parametrised by
/// the arclength fraction s in [0,1] (zeta = s z_end).
template <class F>
QuadratureResult integrate_segment(F&& f, Complex z_end, double tol = kDefaultQuadTol) {
  return integrate_segment_between(std::forward<F>(f), Complex{0.0, 0.0}, z_end, tol);
}

// ---------------------------------------------------------------------------
// Discretised paths in the unit disk
// ---------------------------------------------------------------------------

struct PathNode {
  double t;
  Complex z;
  Complex dz;  // z'(t)
};

enum class PathKind { radial, gamma0, custom };

/// A C^1 curve t -> z(t), t in [0,1], sampled at `nodes`. When `evaluator`
/// is set it resolves interior points exactly; otherwise cubic Hermite
/// interpolation of the nodes is used.
struct PathSpec {
  PathKind kind = PathKind::custom;
  std::vector<PathNode> nodes;
  std::function<PathNode(double)> evaluator;
};

inline void validate_path(const PathSpec& path) {
  if (path.nodes.size() < 2) throw invalid_path("path needs at least 2 nodes");
  if (std::abs(path.nodes.front().t) > 1e-12 || std::abs(path.nodes.back().t - 1.0) > 1e-12)
    throw invalid_path("path parameter must run from 0 to 1");
  double prev = -1.0;
  for (const auto& n : path.nodes) {
    if (!(n.t > prev)) throw invalid_path("path parameter must be strictly increasing");
    if (!is_finite(n.z) || !is_finite(n.dz) || std::abs(n.z) >= 1.0)
      throw invalid_path("path nodes must be finite and inside the unit disk");
    prev = n.t;
  }
}

/// Straight path from 0 to z0, z(t) = t z0.
inline PathSpec radial_path(const EvalPoint& at, std::size_t n = 33) {
  PathSpec path;
  path.kind = PathKind::radial;
  const Complex z0 = at.z0;
  path.nodes.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    path.nodes.push_back({t, t * z0, z0});
  }
  path.evaluator = [z0](double t) { return PathNode{t, t * z0, z0}; };
  return path;
}

namespace detail {

inline PathNode hermite_between(const PathNode& n0, const PathNode& n1, double t) {
  const double h = n1.t - n0.t;
  const double s = (t - n0.t) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
  const double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
  PathNode out;
  out.t = t;
  out.z = h00 * n0.z + h01 * n1.z + h * (h10 * n0.dz + h11 * n1.dz);
  out.dz = (d00 * n0.z + d01 * n1.z) / h + d10 * n0.dz + d11 * n1.dz;
  return out;
}

inline PathNode hermite_point(const PathSpec& path, double t) {
  const auto& ns = path.nodes;
  if (t <= ns.front().t) return ns.front();
  if (t >= ns.back().t) return ns.back();
  auto it = std::upper_bound(ns.begin(), ns.end(), t,
                             [](double v, const PathNode& n) { return v < n.t; });
  return hermite_between(*(it - 1), *it, t);
}

inline PathSpec every_other_node(const PathSpec& path) {
  PathSpec half;
  half.kind = path.kind;
  for (std::size_t i = 0; i < path.nodes.size(); i += 2) half.nodes.push_back(path.nodes[i]);
  if (half.nodes.back().t != path.nodes.back().t) half.nodes.push_back(path.nodes.back());
  return half;
}

template <class G>
QuadratureResult integrate_path_model(G&& g, const PathSpec& path, double tol) {
  std::vector<std::pair<double, double>> seeds;
  if (path.evaluator) {
    constexpr int kInit = 32;
    seeds.reserve(kInit);
    for (int k = 0; k < kInit; ++k)
      seeds.emplace_back(k / double(kInit), (k + 1) / double(kInit));
  } else {
    seeds.reserve(path.nodes.size() - 1);
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i)
      seeds.emplace_back(path.nodes[i].t, path.nodes[i + 1].t);
  }
  return adapt(g, seeds, tol);
}

}  // namespace detail

enum class PathMode { value, modulus };

/// Composite adaptive quadrature of f(z(t), z'(t)) dt over a path. In
/// modulus mode the derivative argument handed to f is |z'(t)| instead of
/// z'(t), giving arclength-type integrals.
///
/// Node-only paths (no evaluator) are resolved by cubic Hermite
/// interpolation; the interpolation error is estimated by Richardson
/// comparison against the every-other-node model and folded into
/// err_estimate.
template <class F>
QuadratureResult integrate_path(F&& f, const PathSpec& path, double tol = kDefaultQuadTol,
                                PathMode mode = PathMode::value) {
  validate_path(path);
  auto g = [&](double t) {
    const PathNode p = path.evaluator ? path.evaluator(t) : detail::hermite_point(path, t);
    const Complex dz = (mode == PathMode::modulus) ? Complex{std::abs(p.dz), 0.0} : p.dz;
    return f(p.z, dz);
  };
  QuadratureResult res = detail::integrate_path_model(g, path, tol);
  if (!path.evaluator && path.nodes.size() >= 5) {
    const PathSpec half = detail::every_other_node(path);
    auto gh = [&](double t) {
      const PathNode p = detail::hermite_point(half, t);
      const Complex dz = (mode == PathMode::modulus) ? Complex{std::abs(p.dz), 0.0} : p.dz;
      return f(p.z, dz);
    };
    QuadratureResult coarse = detail::integrate_path_model(gh, half, tol);
    res.evaluations += coarse.evaluations;
    // cubic Hermite converges at O(h^4): halving the node spacing divides the
    // model error by ~16, so |fine - coarse| ~ 15x the fine-model error
    res.err_estimate += std::abs(res.value - coarse.value) / 15.0;
    if (res.err_estimate > tol)
      throw no_convergence("integrate_path: node resolution limits accuracy below tol");
  }
  return res;
}

// ---------------------------------------------------------------------------
// Predictor-corrector continuation
// ---------------------------------------------------------------------------

/// Track the solution z(t) of target(z(t)) = rhs(t) over t_grid, starting
/// from `start` at t_grid.front(). Predictor: RK4 on z' = drhs(t)/dtarget(z).
/// Corrector: Newton with at most 25 iterations per node.
///
/// `target` may be a stateful closure (e.g. incremental quadrature); it is
/// only queried at points visited in sequence. tol < 0 selects the default
/// 1e-10 * max(1, |rhs(t_end)|).
inline PathSpec newton_continue(const std::function<Complex(Complex)>& target,
                                const std::function<Complex(Complex)>& dtarget,
                                const std::function<Complex(double)>& rhs,
                                const std::function<Complex(double)>& drhs,
                                Complex start, const std::vector<double>& t_grid,
                                double tol = -1.0) {
  if (t_grid.empty()) throw invalid_path("newton_continue: empty t grid");
  if (tol < 0.0) tol = 1e-10 * std::max(1.0, std::abs(rhs(t_grid.back())));

  PathSpec path;
  path.kind = PathKind::custom;
  path.nodes.reserve(t_grid.size());

  Complex z = start;
  auto correct = [&](double t) {
    if (std::abs(z) >= 1.0) throw left_disk("newton_continue: |z| >= 1");
    const Complex want = rhs(t);
    for (int it = 0; it < 25; ++it) {
      const Complex res = target(z) - want;
      if (std::abs(res) <= tol) return;
      z -= res / dtarget(z);
      if (!is_finite(z)) throw continuation_stall("newton_continue: iterate diverged");
      if (std::abs(z) >= 1.0) throw left_disk("newton_continue: |z| >= 1");
    }
    throw continuation_stall("newton_continue: Newton failed in 25 iterations");
  };

  double t_prev = t_grid.front();
  correct(t_prev);
  path.nodes.push_back({t_prev, z, drhs(t_prev) / dtarget(z)});
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const double h = t - t_prev;
    if (h <= 0.0) throw invalid_path("newton_continue: t grid must increase");
    auto slope = [&](double u, Complex w) { return drhs(u) / dtarget(w); };
    const Complex k1 = slope(t_prev, z);
    const Complex k2 = slope(t_prev + 0.5 * h, z + 0.5 * h * k1);
    const Complex k3 = slope(t_prev + 0.5 * h, z + 0.5 * h * k2);
    const Complex k4 = slope(t, z + h * k3);
    z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!is_finite(z)) throw continuation_stall("newton_continue: predictor diverged");
    if (std::abs(z) >= 1.0) throw left_disk("newton_continue: |z| >= 1");
    correct(t);
    path.nodes.push_back({t, z, drhs(t) / dtarget(z)});
    t_prev = t;
  }
  return path;
}

}  // namespace varreg
