// varreg command line: trace region boundaries, compute disk bounds, sample
// class members, and run the self-verification suite.
//
// Exit codes: 0 success, 2 invalid parameters/flags, 3 quadrature or
// continuation failure, 4 sampled point escaped the region, 5 verification
// failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varreg/output.hpp"
#include "varreg/samplers.hpp"
#include "varreg/varreg.hpp"

namespace {

using namespace varreg;

constexpr int kExitInvalid = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitEscaped = 4;
constexpr int kExitVerifyFailed = 5;

Complex parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw invalid_eval_point("expected RE or RE,IM, got '" + text + "'");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw invalid_eval_point("expected RE,IM, got '" + text + "'");
  }
  return {re, im};
}

struct ProblemFlags {
  std::string preset;
  std::string z0_text, lambda_text, mu_text;
  double tol = 0.0;  // resolved in attach()

  void attach(CLI::App* cmd, bool allow_all = false) {
    const char* preset_help = allow_all
        ? "bundled parameter set id (1L..6R, or 'all')"
        : "bundled parameter set id (1L..6R)";
    cmd->add_option("--preset", preset, preset_help);
    cmd->add_option("--z0", z0_text, "evaluation point, RE,IM");
    cmd->add_option("--lambda", lambda_text, "second-coefficient parameter, RE,IM");
    cmd->add_option("--mu", mu_text, "direction parameter, RE,IM (Re > 0)");
    double default_tol = kDefaultQuadTol;
    if (const char* env = std::getenv("VARREG_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end != env && v > 0.0) default_tol = v;
    }
    tol = default_tol;
    cmd->add_option("--tol", tol, "quadrature tolerance before the mu/pi prefactor")
        ->capture_default_str();
  }

  // resolve a single (params, z0); 'all' is only legal where the caller
  // expands presets itself
  std::pair<ClassParams, EvalPoint> resolve() const {
    if (!(tol > 0.0)) throw invalid_eval_point("--tol must be positive");
    if (!preset.empty()) {
      if (!z0_text.empty() || !lambda_text.empty() || !mu_text.empty())
        throw invalid_eval_point("--preset conflicts with explicit --z0/--lambda/--mu");
      const FigurePreset* p = find_preset(preset);
      if (!p) throw invalid_eval_point("unknown preset '" + preset + "'");
      return {ClassParams{p->mu, p->lambda}, EvalPoint{p->z0}};
    }
    if (z0_text.empty() || lambda_text.empty() || mu_text.empty())
      throw invalid_eval_point("need --preset or all of --z0, --lambda, --mu");
    ClassParams params{parse_complex(mu_text), parse_complex(lambda_text)};
    EvalPoint at{parse_complex(z0_text)};
    validate_params(params, at);
    return {params, at};
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw error("cannot open output file '" + path + "'");
  out << content;
}

// ---------------------------------------------------------------------------
// boundary
// ---------------------------------------------------------------------------

int run_boundary(const ProblemFlags& flags, std::size_t samples, const std::string& out,
                 const std::string& svg) {
  if (samples < 16) throw invalid_eval_point("--samples must be at least 16");
  auto [params, at] = flags.resolve();
  const ParamCheck check = validate_params(params, at);
  if (check.lambda_near_unit)
    std::cerr << "warning: |lambda| within 1e-9 of 1; region nearly degenerate\n";
  if (check.z0_near_boundary)
    std::cerr << "warning: |z0| > 0.999; quadrature cost grows near the boundary\n";

  const BoundaryCurve curve = boundary_curve(params, at, samples, flags.tol);

  std::ostringstream csv;
  write_boundary_csv(csv, curve);
  write_file(out, csv.str());
  write_file(out + ".json", boundary_sidecar(curve).dump(2) + "\n");
  if (!svg.empty()) {
    std::ostringstream s;
    write_boundary_svg(s, curve);
    write_file(svg, s.str());
  }
  std::cout << out << ": " << curve.samples.size() << " samples"
            << (curve.singleton ? " (singleton region)" : "") << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

int run_bounds(const ProblemFlags& flags, const std::string& path_kind, double theta,
               const std::string& out) {
  auto [params, at] = flags.resolve();
  validate_params(params, at);

  Json j;
  j["params"] = json_params(params, at);
  j["path"] = path_kind;
  j["tol"] = flags.tol;
  if (path_kind == "radial") {
    const DiskBound disk = path_bound(params, radial_path(at), flags.tol);
    j["disk"] = disk_json(disk);
  } else if (path_kind == "gamma0") {
    if (at.z0 == Complex{0.0, 0.0})
      throw invalid_eval_point("gamma0 path needs z0 != 0");
    if (std::abs(params.lambda) >= kUnimodularThreshold)
      throw invalid_lambda("gamma0 path needs |lambda| < 1");
    j["theta"] = theta;
    const GContext ctx = g_roots(theta, params);
    const TangencyReport rep = check_tangency(ctx, at, flags.tol);
    j["disk"] = disk_json(rep.disk);
    Json t;
    t["boundary_point"] = json_complex(rep.boundary_point);
    t["residual"] = json_complex(rep.residual);
    t["relative_residual"] = rep.relative_residual;
    t["modulus_gap"] = rep.modulus_gap;
    t["direction_error"] = rep.direction_error;
    t["g_phase"] = json_complex(rep.g_phase);
    j["tangency"] = t;
  } else {
    throw invalid_eval_point("--path must be radial or gamma0");
  }

  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_file(out, text);
  return 0;
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

int run_sample(const ProblemFlags& flags, std::size_t count, std::uint64_t seed,
               std::size_t max_degree, double band, const std::string& out) {
  auto [params, at] = flags.resolve();
  validate_params(params, at);

  const bool singleton = is_singleton_region(params, at);
  BoundaryCurve curve = boundary_curve(params, at, 512, flags.tol);
  RegionPolygon poly;
  double diam = 0.0;
  Complex dv = degenerate_value(params, at);
  if (!singleton) {
    poly = polygon_of(curve);
    diam = diameter(poly);
  }

  std::ostringstream csv;
  csv << "index,re,im,verdict\n";
  std::size_t inside = 0, boundary = 0, outside = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const MemberFunction m = random_member(seed + i, params, max_degree);
    const Complex w = log_f(m, at, flags.tol);
    Location loc;
    if (singleton) {
      // the whole class collapses; compare against the single value
      loc = std::abs(w - dv) <= 1e-6 * (1.0 + std::abs(dv)) ? Location::inside
                                                            : Location::outside;
    } else {
      loc = contains(poly, w, band);
    }
    const char* verdict = loc == Location::inside    ? "inside"
                          : loc == Location::boundary ? "boundary"
                                                      : "outside";
    if (loc == Location::inside) ++inside;
    else if (loc == Location::boundary) ++boundary;
    else ++outside;
    csv << i << ',' << format_g17(w.real()) << ',' << format_g17(w.imag()) << ','
        << verdict << '\n';
  }
  write_file(out, csv.str());

  Json j;
  j["params"] = json_params(params, at);
  j["count"] = count;
  j["seed"] = seed;
  j["max_degree"] = max_degree;
  j["band"] = band;
  j["singleton"] = singleton;
  if (!singleton) j["diameter"] = diam;
  j["inside"] = inside;
  j["boundary"] = boundary;
  j["outside"] = outside;
  write_file(out + ".json", j.dump(2) + "\n");

  std::cout << out << ": " << inside << " inside, " << boundary << " boundary, "
            << outside << " outside\n";
  return outside == 0 ? 0 : kExitEscaped;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct CheckResult {
  std::string name;
  bool pass = true;
  bool skipped = false;
  std::string detail;
};

class VerifySuite {
 public:
  VerifySuite(const ClassParams& params, const EvalPoint& at, double tol, bool quick)
      : params_(params), at_(at), tol_(tol), quick_(quick) {}

  std::vector<CheckResult> run() {
    results_.clear();
    const bool singleton = is_singleton_region(params_, at_);
    if (!singleton) {
      curve_ = boundary_curve(params_, at_, quick_ ? 128 : 512, tol_);
      poly_ = polygon_of(curve_);
      diam_ = diameter(poly_);
    }
    check_curve(singleton);
    check_interior(singleton);
    check_schwarz(singleton);
    check_radial(singleton);
    check_tangency_sweep(singleton);
    check_lambda0_forms();
    check_samplers(singleton);
    check_quad_oracle();
    check_refinement(singleton);
    return results_;
  }

 private:
  void add(const std::string& name, bool pass, const std::string& detail) {
    results_.push_back({name, pass, false, detail});
  }
  void skip(const std::string& name, const std::string& why) {
    results_.push_back({name, true, true, why});
  }
  static std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", v);
    return buf;
  }

  void check_curve(bool singleton) {
    if (singleton) {
      // the region degenerates: the traced values must collapse onto the
      // closed-form point for every theta
      const Complex dv = degenerate_value(params_, at_);
      double spread = 0.0, dist = 0.0;
      std::vector<Complex> ws;
      for (int k = 0; k < 16; ++k) {
        const double th = -kPi + 2.0 * kPi * (k + 1) / 16.0;
        const Complex w = log_H({params_, std::polar(1.0, th)}, at_, 1e-12);
        for (const Complex& v : ws) spread = std::max(spread, std::abs(w - v));
        dist = std::max(dist, std::abs(w - dv));
        ws.push_back(w);
      }
      const double bound = 1e-9 * (1.0 + std::abs(dv));
      add("singleton-collapse", spread < bound && dist < 10.0 * bound,
          "spread " + sci(spread) + ", dist " + sci(dist) + ", bound " + sci(bound));
      return;
    }
    const auto conv = is_convex(poly_, 1e-9);
    const bool simple = is_simple(poly_);
    double min_pair = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poly_.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < poly_.vertices.size(); ++j)
        min_pair = std::min(min_pair, std::abs(poly_.vertices[i] - poly_.vertices[j]));
    const bool injective = min_pair > 1e-8 * diam_;
    add("curve-convex", conv.convex, "worst violation " + sci(conv.worst_violation));
    add("curve-simple", simple, simple ? "no crossings" : "self-intersection found");
    add("curve-injective", injective, "min vertex gap " + sci(min_pair / diam_) + " D");
  }

  void check_interior(bool singleton) {
    if (singleton) return skip("interior-point", "region is a single point");
    const double margin = signed_margin(poly_, degenerate_value(params_, at_));
    add("interior-point", margin > 1e-6 * diam_, "margin " + sci(margin / diam_) + " D");
  }

  void check_schwarz(bool singleton) {
    if (singleton) return skip("schwarz-pointwise", "radius identically 0");
    detail::SplitMix64 rng(987654321u);
    const int trials = quick_ ? 10 : 50;
    double worst_in = -std::numeric_limits<double>::infinity();
    double worst_attain = 0.0, worst_ident = 0.0;
    for (int k = 0; k < trials; ++k) {
      const double rad = std::max(0.05, 0.95 * std::sqrt(rng.u01()));
      const Complex z = std::polar(rad, 2.0 * kPi * rng.u01() - kPi);
      const DiskBound disk = schwarz_disk(params_, z);
      const Complex a = std::polar(std::sqrt(rng.u01()), 2.0 * kPi * rng.u01() - kPi);
      const double excess =
          (std::abs(dlog_H({params_, a}, z) - disk.center) - disk.radius) / disk.radius;
      worst_in = std::max(worst_in, excess);
      const double th = 2.0 * kPi * rng.u01() - kPi;
      const double attain =
          std::abs(std::abs(dlog_H({params_, std::polar(1.0, th)}, z) - disk.center) -
                   disk.radius) /
          disk.radius;
      worst_attain = std::max(worst_attain, attain);
      worst_ident = std::max(
          worst_ident, extremal_identity_residual(g_roots(th, params_), z) / disk.radius);
    }
    add("schwarz-pointwise",
        worst_in <= 1e-10 && worst_attain <= 1e-10 && worst_ident <= 1e-10,
        "max excess " + sci(worst_in) + ", attain dev " + sci(worst_attain) +
            ", identity " + sci(worst_ident));
  }

  void check_radial(bool singleton) {
    const DiskBound disk = path_bound(params_, radial_path(at_), tol_);
    if (singleton) {
      const Complex dv = degenerate_value(params_, at_);
      const bool ok = disk.radius <= 1e-9 * (1.0 + std::abs(dv)) &&
                      std::abs(disk.center - dv) <= 1e-6 * (1.0 + std::abs(dv));
      add("radial-bound", ok,
          "radius " + sci(disk.radius) + ", |center - value| " +
              sci(std::abs(disk.center - dv)));
      return;
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : curve_.samples)
      worst = std::max(worst, (std::abs(s.w - disk.center) - disk.radius) / disk.radius);
    add("radial-bound", worst <= 1e-8, "worst vertex excess " + sci(worst));
  }

  void check_tangency_sweep(bool singleton) {
    if (singleton) return skip("gamma0-tangency", "needs |lambda| < 1 and z0 != 0");
    const int sweeps = quick_ ? 4 : 16;
    double worst_res = 0.0, worst_dir = 0.0;
    for (int k = 0; k < sweeps; ++k) {
      const double th = -kPi + 2.0 * kPi * (k + 1) / sweeps;
      const TangencyReport rep = check_tangency(g_roots(th, params_), at_, tol_);
      worst_res = std::max(worst_res, rep.relative_residual);
      worst_dir = std::max(worst_dir, rep.direction_error);
    }
    add("gamma0-tangency", worst_res < 1e-6 && worst_dir < 1e-6,
        "worst rel residual " + sci(worst_res) + ", direction " + sci(worst_dir));
  }

  void check_lambda0_forms() {
    if (params_.lambda != Complex{0.0, 0.0})
      return skip("lambda0-closed-forms", "only defined for lambda = 0");
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double rad = 0.95 * (k + 1) / 1000.0;
      const Complex z = std::polar(rad, 2.0 * kPi * 0.61803398874989485 * k);
      const Complex c_ref = (std::norm(z) * std::conj(z) - 1.0) /
                            ((1.0 - z) * (1.0 - std::norm(z) * std::norm(z)));
      const double r_ref = std::abs(z) / (1.0 - std::norm(z) * std::norm(z));
      worst = std::max(worst,
                       std::abs(c_center(z, 0.0) - c_ref) / std::max(1.0, std::abs(c_ref)));
      worst = std::max(worst, std::abs(r_radius(z, 0.0) - r_ref) / std::max(1.0, r_ref));
    }
    add("lambda0-closed-forms", worst <= 1e-12, "worst rel dev " + sci(worst));
  }

  void check_samplers(bool singleton) {
    const std::size_t count = quick_ ? 50 : 200;
    const std::uint64_t seed = 20260810u;
    std::size_t outside = 0;
    const Complex dv = degenerate_value(params_, at_);
    for (std::size_t i = 0; i < count; ++i) {
      const MemberFunction m = random_member(seed + i, params_, 4);
      const Complex w = log_f(m, at_, tol_);
      if (singleton) {
        if (std::abs(w - dv) > 1e-6 * (1.0 + std::abs(dv))) ++outside;
      } else if (contains(poly_, w, 1e-6) == Location::outside) {
        ++outside;
      }
    }
    add("sampler-containment", outside == 0,
        std::to_string(count) + " members, " + std::to_string(outside) + " outside");
  }

  void check_quad_oracle() {
    if (quick_) return skip("quadrature-oracle", "skipped in --quick mode");
    double worst = 0.0;
    for (const double th : {0.0, kPi / 2.0, kPi}) {
      const ExtremalSpec spec{params_, std::polar(1.0, th)};
      const Complex fine = integrate_segment(
          [&](Complex z) { return h_log_integrand(spec, z); }, at_.z0, tol_).value;
      // brute-force composite trapezoid, 1e6 steps
      constexpr int kSteps = 1000000;
      Complex acc = 0.5 * (h_log_integrand(spec, Complex{0.0, 0.0}) +
                           h_log_integrand(spec, at_.z0));
      for (int s = 1; s < kSteps; ++s)
        acc += h_log_integrand(spec, (static_cast<double>(s) / kSteps) * at_.z0);
      const Complex coarse = acc * (at_.z0 / static_cast<double>(kSteps));
      worst = std::max(worst, std::abs(fine - coarse) / std::max(1e-8, std::abs(fine)));
    }
    add("quadrature-oracle", worst <= 1e-6, "worst rel dev " + sci(worst));
  }

  void check_refinement(bool singleton) {
    if (singleton) return skip("refinement-stability", "region is a single point");
    // the pinned pair is 256 vs 512 samples, independent of --quick
    const RegionPolygon fine =
        curve_.samples.size() == 512 ? poly_ : polygon_of(boundary_curve(params_, at_, 512, tol_));
    const RegionPolygon half = polygon_of(boundary_curve(params_, at_, 256, tol_));
    const double d = diameter(fine);
    const double hd = hausdorff_distance(half, fine);
    add("refinement-stability", hd < 1e-3 * d, "Hausdorff " + sci(hd / d) + " D");
  }

  ClassParams params_;
  EvalPoint at_;
  double tol_;
  bool quick_;
  BoundaryCurve curve_;
  RegionPolygon poly_;
  double diam_ = 0.0;
  std::vector<CheckResult> results_;
};

int run_verify(const ProblemFlags& flags, bool quick, const std::string& json_out) {
  std::vector<std::pair<std::string, std::pair<ClassParams, EvalPoint>>> jobs;
  if (flags.preset == "all") {
    if (!flags.z0_text.empty() || !flags.lambda_text.empty() || !flags.mu_text.empty())
      throw invalid_eval_point("--preset all conflicts with explicit --z0/--lambda/--mu");
    for (const auto& p : kFigurePresets)
      jobs.push_back({std::string(p.id), {ClassParams{p.mu, p.lambda}, EvalPoint{p.z0}}});
  } else {
    auto resolved = flags.resolve();
    jobs.push_back({flags.preset.empty() ? "custom" : flags.preset, resolved});
  }

  Json report = Json::array();
  std::string first_failure;
  for (const auto& [label, problem] : jobs) {
    VerifySuite suite(problem.first, problem.second, flags.tol, quick);
    const std::vector<CheckResult> results = suite.run();
    std::cout << "== " << label << " (z0=" << format_g17(problem.second.z0.real()) << ","
              << format_g17(problem.second.z0.imag()) << ")\n";
    Json entry;
    entry["label"] = label;
    entry["params"] = json_params(problem.first, problem.second);
    entry["quick"] = quick;
    entry["tol"] = flags.tol;
    Json checks = Json::array();
    for (const auto& r : results) {
      const char* tag = r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL");
      std::printf("  %-4s %-22s %s\n", tag, r.name.c_str(), r.detail.c_str());
      if (!r.pass && first_failure.empty()) first_failure = label + ":" + r.name;
      Json c;
      c["name"] = r.name;
      c["pass"] = r.pass;
      c["skipped"] = r.skipped;
      c["detail"] = r.detail;
      checks.push_back(c);
    }
    entry["checks"] = checks;
    report.push_back(entry);
  }
  if (!json_out.empty()) write_file(json_out, report.dump(2) + "\n");

  if (!first_failure.empty()) {
    std::cerr << "verification failed: " << first_failure << "\n";
    return kExitVerifyFailed;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"region-of-variability toolkit for log f(z0)"};
  app.require_subcommand(1);

  ProblemFlags boundary_flags, bounds_flags, sample_flags, verify_flags;

  auto* boundary = app.add_subcommand("boundary", "trace the region boundary curve");
  boundary_flags.attach(boundary);
  std::size_t samples = 512;
  std::string boundary_out, boundary_svg;
  boundary->add_option("--samples", samples, "number of theta samples")->capture_default_str();
  boundary->add_option("--out", boundary_out, "CSV output path (sidecar: PATH.json)")
      ->required();
  boundary->add_option("--svg", boundary_svg, "optional SVG output path");

  auto* bounds = app.add_subcommand("bounds", "disk bound along a path from 0 to z0");
  bounds_flags.attach(bounds);
  std::string path_kind = "radial";
  double theta = 0.0;
  std::string bounds_out;
  bounds->add_option("--path", path_kind, "radial | gamma0")->capture_default_str();
  bounds->add_option("--theta", theta, "boundary angle for the gamma0 path")
      ->capture_default_str();
  bounds->add_option("--out", bounds_out, "JSON output path (default: stdout)");

  auto* sample = app.add_subcommand("sample", "sample random class members");
  sample_flags.attach(sample);
  std::size_t count = 100, max_degree = 4;
  std::uint64_t seed = 1;
  double band = 1e-6;
  std::string sample_out;
  sample->add_option("--count", count, "number of members")->capture_default_str();
  sample->add_option("--seed", seed, "base seed (member i uses seed + i)")
      ->capture_default_str();
  sample->add_option("--max-degree", max_degree, "max Blaschke degree (<= 8)")
      ->capture_default_str();
  sample->add_option("--band", band, "boundary band as a fraction of the diameter")
      ->capture_default_str();
  sample->add_option("--out", sample_out, "CSV output path (summary: PATH.json)")->required();

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify_flags.attach(verify, /*allow_all=*/true);
  bool quick = false;
  std::string verify_json;
  verify->add_flag("--quick", quick, "smaller sample counts, skip the brute-force oracle");
  verify->add_option("--json", verify_json, "also write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (boundary->parsed()) return run_boundary(boundary_flags, samples, boundary_out, boundary_svg);
    if (bounds->parsed()) return run_bounds(bounds_flags, path_kind, theta, bounds_out);
    if (sample->parsed())
      return run_sample(sample_flags, count, seed, max_degree, band, sample_out);
    if (verify->parsed()) return run_verify(verify_flags, quick, verify_json);
  } catch (const invalid_mu& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const invalid_lambda& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const invalid_eval_point& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const no_convergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const continuation_stall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const left_disk& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const branch_ambiguity& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const degenerate_denominator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
