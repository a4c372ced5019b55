// Acceptance suite: end-to-end checks over all twelve bundled parameter
// sets. Prints one PASS/FAIL line per criterion; exit code is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "varreg/samplers.hpp"
#include "varreg/varreg.hpp"

using namespace varreg;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d (%s): %s — %s\n", idx, name, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

struct PresetData {
  std::string id;
  ClassParams params;
  EvalPoint at;
  BoundaryCurve curve;        // n = 512, tol = 1e-10
  RegionPolygon poly;
  double diam = 0.0;
  double seconds = 0.0;
};

std::vector<PresetData> build_presets() {
  std::vector<PresetData> out;
  for (const auto& p : kFigurePresets) {
    PresetData d;
    d.id = p.id;
    d.params = {p.mu, p.lambda};
    d.at = {p.z0};
    const auto t0 = std::chrono::steady_clock::now();
    d.curve = boundary_curve(d.params, d.at, 512, 1e-10);
    const auto t1 = std::chrono::steady_clock::now();
    d.seconds = std::chrono::duration<double>(t1 - t0).count();
    d.poly = polygon_of(d.curve);
    d.diam = diameter(d.poly);
    out.push_back(std::move(d));
  }
  return out;
}

// 1. every preset regenerates as a closed, simple, convex curve in < 2 s
void criterion_boundary(const std::vector<PresetData>& data) {
  bool pass = true;
  double worst_violation = 0.0, worst_time = 0.0;
  std::string bad;
  for (const auto& d : data) {
    const auto conv = is_convex(d.poly, 1e-9);
    const bool simple = is_simple(d.poly);
    worst_violation = std::max(worst_violation, conv.worst_violation);
    worst_time = std::max(worst_time, d.seconds);
    if (!conv.convex || !simple || d.curve.samples.size() != 512 || d.seconds >= 2.0) {
      pass = false;
      bad += " " + d.id;
    }
  }
  report(1, "boundary regeneration", pass,
         "12 presets at n=512; worst convexity violation " + sci(worst_violation) +
             ", max " + sci(worst_time) + " s/preset" + (bad.empty() ? "" : ";" + bad));
}

// 2. |lambda| = 1 (8 angles) and z0 = 0 collapse to the closed-form point
void criterion_degenerate() {
  bool pass = true;
  double worst = 0.0;
  // fixed non-degenerate z0 and mu, unimodular lambda sweep
  const Complex z0{-0.173777, 0.0869191};
  const Complex mu{32796.0, 64560.2};
  for (int j = 0; j < 8; ++j) {
    const double phi = -kPi + 2.0 * kPi * (j + 1) / 8.0;
    const ClassParams params{mu, std::polar(1.0, phi)};
    const EvalPoint at{z0};
    const Complex dv = degenerate_value(params, at);
    const double bound = 1e-9 * (1.0 + std::abs(dv));
    std::vector<Complex> ws;
    double spread = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double th = -kPi + 2.0 * kPi * (k + 1) / 16.0;
      const Complex w = log_H({params, std::polar(1.0, th)}, at, 1e-12);
      for (const Complex& prev : ws) spread = std::max(spread, std::abs(w - prev));
      ws.push_back(w);
    }
    worst = std::max(worst, spread / bound);
    if (spread >= bound) pass = false;
    const BoundaryCurve curve = boundary_curve(params, at);
    if (!curve.singleton || std::abs(curve.samples.front().w - dv) >= bound) pass = false;
  }
  // z0 = 0
  const ClassParams params{{kPi, 0.0}, {0.3, 0.2}};
  const BoundaryCurve curve = boundary_curve(params, {{0.0, 0.0}});
  if (!curve.singleton || std::abs(curve.samples.front().w) != 0.0) pass = false;
  for (int k = 0; k < 4; ++k) {
    const double th = k * 1.3;
    if (std::abs(log_H({params, std::polar(1.0, th)}, {{0.0, 0.0}}, 1e-12)) != 0.0)
      pass = false;
  }
  report(2, "degenerate collapse", pass, "worst spread/bound " + sci(worst));
}

// 3. the closed-form point is strictly interior, margin > 1e-6 diameter
void criterion_interior(const std::vector<PresetData>& data) {
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& d : data) {
    const double margin = signed_margin(d.poly, degenerate_value(d.params, d.at)) / d.diam;
    worst = std::min(worst, margin);
    if (margin <= 1e-6) pass = false;
  }
  report(3, "interior point", pass, "min margin " + sci(worst) + " D");
}

// 4. pointwise extremality: random members inside the disk, boundary
// members exactly on it, and the closed-form identity residual tiny
void criterion_pointwise(const std::vector<PresetData>& data) {
  bool pass = true;
  double worst_in = -1e300, worst_attain = 0.0, worst_ident = 0.0;
  detail::SplitMix64 rng(314159u);
  for (const auto& d : data) {
    for (int k = 0; k < 50; ++k) {
      const double rad = std::max(0.05, 0.95 * std::sqrt(rng.u01()));
      const Complex z = std::polar(rad, 2.0 * kPi * rng.u01() - kPi);
      const DiskBound disk = schwarz_disk(d.params, z);

      const Complex a = std::polar(std::sqrt(rng.u01()), 2.0 * kPi * rng.u01() - kPi);
      const double excess =
          (std::abs(dlog_H({d.params, a}, z) - disk.center) - disk.radius) / disk.radius;
      worst_in = std::max(worst_in, excess);
      if (excess > 1e-10) pass = false;

      const double th = 2.0 * kPi * rng.u01() - kPi;
      const double attain =
          std::abs(std::abs(dlog_H({d.params, std::polar(1.0, th)}, z) - disk.center) -
                   disk.radius) /
          disk.radius;
      worst_attain = std::max(worst_attain, attain);
      if (attain > 1e-10) pass = false;

      const double ident =
          extremal_identity_residual(g_roots(th, d.params), z) / disk.radius;
      worst_ident = std::max(worst_ident, ident);
      if (ident > 1e-10) pass = false;
    }
  }
  report(4, "pointwise extremality", pass,
         "max inside excess " + sci(worst_in) + ", attain dev " + sci(worst_attain) +
             ", identity residual " + sci(worst_ident));
}

// 5. each boundary vertex lies in the radial-path disk (slack 1e-8)
void criterion_radial(const std::vector<PresetData>& data) {
  bool pass = true;
  double worst = -1e300;
  for (const auto& d : data) {
    const DiskBound disk = path_bound(d.params, radial_path(d.at), 1e-10);
    for (const auto& s : d.curve.samples) {
      const double excess = (std::abs(s.w - disk.center) - disk.radius) / disk.radius;
      worst = std::max(worst, excess);
      if (excess > 1e-8) pass = false;
    }
  }
  report(5, "radial path bound", pass, "worst vertex excess " + sci(worst));
}

// 6. tangency along gamma0 for 16 angles per preset
void criterion_tangency(const std::vector<PresetData>& data) {
  bool pass = true;
  double worst_res = 0.0, worst_dir = 0.0;
  for (const auto& d : data) {
    for (int k = 0; k < 16; ++k) {
      const double th = -kPi + 2.0 * kPi * (k + 1) / 16.0;
      const TangencyReport rep = check_tangency(g_roots(th, d.params), d.at, 1e-10);
      worst_res = std::max(worst_res, rep.relative_residual);
      worst_dir = std::max(worst_dir, rep.direction_error);
      if (rep.relative_residual >= 1e-6 || rep.direction_error >= 1e-6) pass = false;
    }
  }
  report(6, "gamma0 tangency", pass,
         "worst rel residual " + sci(worst_res) + ", direction error " + sci(worst_dir));
}

// 7. 200 seeded random members per preset, none outside the 1e-6 D band
void criterion_samplers(const std::vector<PresetData>& data) {
  bool pass = true;
  int outsiders = 0;
  for (const auto& d : data) {
    for (int i = 0; i < 200; ++i) {
      const MemberFunction m = random_member(20260810u + i, d.params, 4);
      const Complex w = log_f(m, d.at, 1e-10);
      if (contains(d.poly, w, 1e-6) == Location::outside) {
        ++outsiders;
        pass = false;
      }
    }
  }
  report(7, "sampler containment", pass,
         "2400 members, " + std::to_string(outsiders) + " outside");
}

// 8. adaptive quadrature vs 1e6-step composite trapezoid
void criterion_quad_oracle() {
  bool pass = true;
  double worst = 0.0;
  for (const char* id : {"1L", "3R", "6L"}) {
    const FigurePreset* p = find_preset(id);
    const ClassParams params{p->mu, p->lambda};
    for (const double th : {0.0, kPi / 2.0, kPi}) {
      const ExtremalSpec spec{params, std::polar(1.0, th)};
      const Complex fine = integrate_segment(
          [&](Complex z) { return h_log_integrand(spec, z); }, p->z0, 1e-10).value;
      constexpr int kSteps = 1000000;
      Complex acc = 0.5 * (h_log_integrand(spec, {0.0, 0.0}) + h_log_integrand(spec, p->z0));
      for (int s = 1; s < kSteps; ++s)
        acc += h_log_integrand(spec, (static_cast<double>(s) / kSteps) * p->z0);
      const Complex coarse = acc * (p->z0 / static_cast<double>(kSteps));
      const double rel = std::abs(fine - coarse) / std::max(1e-8, std::abs(fine));
      worst = std::max(worst, rel);
      if (rel >= 1e-6) pass = false;
    }
  }
  report(8, "quadrature oracle", pass,
         "3 presets x 3 angles, worst rel deviation " + sci(worst));
}

// 9. lambda = 0 closed forms on a 1000-point grid
void criterion_lambda0() {
  bool pass = true;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double rad = 0.95 * (k + 1) / 1000.0;
    const Complex z = std::polar(rad, 2.0 * kPi * 0.61803398874989485 * k);
    const Complex c_ref = (std::norm(z) * std::conj(z) - 1.0) /
                          ((1.0 - z) * (1.0 - std::norm(z) * std::norm(z)));
    const double r_ref = std::abs(z) / (1.0 - std::norm(z) * std::norm(z));
    const double dc =
        std::abs(c_center(z, {0.0, 0.0}) - c_ref) / std::max(1.0, std::abs(c_ref));
    const double dr = std::abs(r_radius(z, {0.0, 0.0}) - r_ref) / std::max(1.0, r_ref);
    worst = std::max({worst, dc, dr});
    if (dc > 1e-12 || dr > 1e-12) pass = false;
  }
  report(9, "lambda=0 closed forms", pass, "worst rel deviation " + sci(worst));
}

// 10. polygon refinement n=256 vs n=512
void criterion_refinement(const std::vector<PresetData>& data) {
  bool pass = true;
  double worst = 0.0;
  for (const auto& d : data) {
    const RegionPolygon half = polygon_of(boundary_curve(d.params, d.at, 256, 1e-10));
    const double hd = hausdorff_distance(half, d.poly) / d.diam;
    worst = std::max(worst, hd);
    if (hd >= 1e-3) pass = false;
  }
  report(10, "refinement stability", pass, "worst Hausdorff " + sci(worst) + " D");
}

}  // namespace

int main() {
  const std::vector<PresetData> data = build_presets();
  criterion_boundary(data);
  criterion_degenerate();
  criterion_interior(data);
  criterion_pointwise(data);
  criterion_radial(data);
  criterion_tangency(data);
  criterion_samplers(data);
  criterion_quad_oracle();
  criterion_lambda0();
  criterion_refinement(data);
  std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - failures);
  return failures;
}
