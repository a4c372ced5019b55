#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "varreg/core.hpp"
#include "varreg/extremal.hpp"

namespace varreg {

struct CurveSample {
  double theta;
  Complex w;
};

/// Ordered samples of the region boundary theta -> log H_{e^{i theta}}(z0),
/// theta in (-pi, pi], treated cyclically. Degenerate inputs (|lambda| = 1
/// or z0 = 0) produce a single-sample curve with `singleton` set.
struct BoundaryCurve {
  ClassParams params;
  EvalPoint at;
  std::vector<CurveSample> samples;
  double tol = kDefaultQuadTol;
  bool singleton = false;
};

struct RegionPolygon {
  std::vector<Complex> vertices;
};

inline bool is_singleton_region(const ClassParams& params, const EvalPoint& at) {
  return std::abs(params.lambda) >= kUnimodularThreshold || at.z0 == Complex{0.0, 0.0};
}

/// Sample the boundary curve at n angles in (-pi, pi]. Deterministic for
/// fixed inputs.
///
/// The sampling is adaptive in theta: starting from a uniform seed grid, the
/// cyclic segment with the longest chord |w_{i+1} - w_i| is bisected (in
/// theta) until n samples exist. The boundary point can sweep two orders of
/// magnitude faster through some theta ranges than others when |z0| is close
/// to 1, so uniform theta placement leaves diameter-scale chords there;
/// chord equalisation keeps the polygon an honest picture of the region at
/// the same sample budget.
inline BoundaryCurve boundary_curve(const ClassParams& params, const EvalPoint& at,
                                    std::size_t n = 512, double tol = kDefaultQuadTol) {
  validate_params(params, at);
  BoundaryCurve curve{params, at, {}, tol, false};
  if (is_singleton_region(params, at)) {
    curve.singleton = true;
    curve.samples.push_back({0.0, degenerate_value(params, at)});
    return curve;
  }
  if (n < 16) throw error("boundary_curve: need at least 16 samples");

  auto eval = [&](double theta) {
    return log_H({params, std::polar(1.0, theta)}, at, tol);
  };

  std::map<double, Complex> samples;
  const std::size_t seeds = std::max<std::size_t>(16, n / 16);
  for (std::size_t i = 0; i < seeds; ++i) {
    const double theta =
        -kPi + 2.0 * kPi * static_cast<double>(i + 1) / static_cast<double>(seeds);
    samples.emplace(theta, eval(theta));
  }

  // segments keyed by chord length; theta_right may exceed pi on the wrap
  // segment. Splitting a segment never invalidates another, so plain heap
  // entries stay valid until popped.
  struct Segment {
    double len;
    double left, right;
    Complex w_left, w_right;
    bool operator<(const Segment& o) const {
      if (len != o.len) return len < o.len;
      return left > o.left;  // deterministic tie break: smaller theta first
    }
  };
  std::priority_queue<Segment> heap;
  for (auto it = samples.begin(); it != samples.end(); ++it) {
    auto next = std::next(it);
    const bool wrap = next == samples.end();
    const double right = wrap ? samples.begin()->first + 2.0 * kPi : next->first;
    const Complex w_right = wrap ? samples.begin()->second : next->second;
    heap.push({std::abs(w_right - it->second), it->first, right, it->second, w_right});
  }
  while (samples.size() < n && !heap.empty()) {
    const Segment seg = heap.top();
    heap.pop();
    double mid = 0.5 * (seg.left + seg.right);
    if (mid > kPi) mid -= 2.0 * kPi;
    if (!(mid > seg.left && mid < seg.right) && !(mid > seg.left - 2.0 * kPi && mid < seg.right - 2.0 * kPi))
      continue;  // interval at floating-point resolution
    if (samples.count(mid)) continue;
    const Complex w_mid = eval(mid);
    samples.emplace(mid, w_mid);
    const double lo = mid < seg.left ? mid + 2.0 * kPi : mid;  // wrap-adjusted
    heap.push({std::abs(w_mid - seg.w_left), seg.left, lo, seg.w_left, w_mid});
    heap.push({std::abs(seg.w_right - w_mid), lo, seg.right, w_mid, seg.w_right});
  }

  curve.samples.reserve(samples.size());
  for (const auto& [theta, w] : samples) curve.samples.push_back({theta, w});
  return curve;
}

inline RegionPolygon polygon_of(const BoundaryCurve& curve) {
  RegionPolygon poly;
  poly.vertices.reserve(curve.samples.size());
  for (const auto& s : curve.samples) poly.vertices.push_back(s.w);
  return poly;
}

inline double diameter(const RegionPolygon& poly) {
  double d = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      d = std::max(d, std::abs(v[i] - v[j]));
  return d;
}

namespace detail {

inline double cross(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

// +1/-1 orientation from the shoelace area (falls back to +1 if degenerate).
inline double orientation(const RegionPolygon& poly) {
  double area2 = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    area2 += cross(v[i], v[(i + 1) % v.size()]);
  return area2 < 0.0 ? -1.0 : 1.0;
}

}  // namespace detail

struct ConvexityReport {
  bool convex = true;
  double worst_violation = 0.0;  // |wrong-sign cross| / diameter^2
  std::size_t index = 0;
};

/// Convexity up to tolerance: all cyclic turn cross products must share one
/// sign, allowing violations up to tol * diameter^2 of the opposite sign.
inline ConvexityReport is_convex(const RegionPolygon& poly, double tol = 1e-9) {
  const auto& v = poly.vertices;
  if (v.size() < 3) throw too_few_vertices("is_convex: need >= 3 vertices");
  const double sign = detail::orientation(poly);
  const double d2 = diameter(poly);
  const double scale = std::max(d2 * d2, 1e-300);
  ConvexityReport rep;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex e1 = v[(i + 1) % v.size()] - v[i];
    const Complex e2 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
    const double turn = sign * detail::cross(e1, e2);
    if (turn < 0.0 && -turn / scale > rep.worst_violation) {
      rep.worst_violation = -turn / scale;
      rep.index = i;
    }
  }
  rep.convex = rep.worst_violation <= tol;
  return rep;
}

namespace detail {

inline bool on_segment(Complex p, Complex q, Complex r) {
  return std::min(p.real(), r.real()) <= q.real() && q.real() <= std::max(p.real(), r.real()) &&
         std::min(p.imag(), r.imag()) <= q.imag() && q.imag() <= std::max(p.imag(), r.imag());
}

inline int orient3(Complex p, Complex q, Complex r) {
  const double c = cross(q - p, r - p);
  if (c > 0.0) return 1;
  if (c < 0.0) return -1;
  return 0;
}

inline bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
  const int o1 = orient3(p1, p2, q1), o2 = orient3(p1, p2, q2);
  const int o3 = orient3(q1, q2, p1), o4 = orient3(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, q1, p2)) return true;
  if (o2 == 0 && on_segment(p1, q2, p2)) return true;
  if (o3 == 0 && on_segment(q1, p1, q2)) return true;
  if (o4 == 0 && on_segment(q1, p2, q2)) return true;
  return false;
}

}  // namespace detail

/// Simplicity by pairwise intersection of non-adjacent edges (O(n^2)).
inline bool is_simple(const RegionPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw too_few_vertices("is_simple: need >= 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edges (they share a vertex)
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (detail::segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

/// Signed distance from w to the polygon boundary: positive inside,
/// negative outside (convex polygons only; absolute units).
inline double signed_margin(const RegionPolygon& poly, Complex w) {
  const auto& v = poly.vertices;
  if (v.size() < 3) throw too_few_vertices("signed_margin: need >= 3 vertices");
  const double sign = detail::orientation(poly);
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex e = v[(i + 1) % v.size()] - v[i];
    const double len = std::abs(e);
    if (len < 1e-300) continue;
    margin = std::min(margin, sign * detail::cross(e, w - v[i]) / len);
  }
  return margin;
}

enum class Location { inside, boundary, outside };

/// Classify w against a convex polygon with boundary band tol * diameter.
inline Location contains(const RegionPolygon& poly, Complex w, double tol = 1e-9) {
  if (!is_convex(poly, 1e-9).convex)
    throw non_convex_input("contains: polygon is not convex");
  const double band = tol * diameter(poly);
  const double m = signed_margin(poly, w);
  if (m > band) return Location::inside;
  if (m < -band) return Location::outside;
  return Location::boundary;
}

inline Complex centroid(const RegionPolygon& poly) {
  const auto& v = poly.vertices;
  if (v.empty()) return {};
  if (v.size() < 3) return v.front();
  double area2 = 0.0;
  Complex c{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Complex a = v[i], b = v[(i + 1) % v.size()];
    const double w = detail::cross(a, b);
    area2 += w;
    c += w * (a + b);
  }
  if (std::abs(area2) < 1e-300) {  // degenerate: fall back to vertex mean
    Complex m{0.0, 0.0};
    for (const auto& z : v) m += z;
    return m / static_cast<double>(v.size());
  }
  return c / (3.0 * area2);
}

namespace detail {

inline double point_segment_dist(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 < 1e-300) return std::abs(p - a);
  double s = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

inline double directed_hausdorff(const RegionPolygon& from, const RegionPolygon& to) {
  double worst = 0.0;
  const auto& tv = to.vertices;
  for (const Complex p : from.vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tv.size(); ++i)
      best = std::min(best, point_segment_dist(p, tv[i], tv[(i + 1) % tv.size()]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace detail

inline double hausdorff_distance(const RegionPolygon& a, const RegionPolygon& b) {
  return std::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
}

}  // namespace varreg
