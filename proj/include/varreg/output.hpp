#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "varreg/bounds.hpp"
#include "varreg/region.hpp"

namespace varreg {

using Json = nlohmann::ordered_json;

/// 17 significant digits: round-trip exact for IEEE doubles, so rewritten
/// files are byte-identical for identical inputs.
inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline Json json_complex(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json json_params(const ClassParams& params, const EvalPoint& at) {
  Json j;
  j["z0"] = json_complex(at.z0);
  j["lambda"] = json_complex(params.lambda);
  j["mu"] = json_complex(params.mu);
  return j;
}

inline void write_boundary_csv(std::ostream& os, const BoundaryCurve& curve) {
  os << "theta,re,im\n";
  for (const auto& s : curve.samples)
    os << format_g17(s.theta) << ',' << format_g17(s.w.real()) << ','
       << format_g17(s.w.imag()) << '\n';
}

/// Single-polyline SVG of the closed curve, with an axis cross through the
/// region centroid. No timestamps or other run-dependent content.
inline void write_boundary_svg(std::ostream& os, const BoundaryCurve& curve) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : curve.samples) {
    xmin = std::min(xmin, s.w.real());
    xmax = std::max(xmax, s.w.real());
    ymin = std::min(ymin, -s.w.imag());  // SVG y axis points down
    ymax = std::max(ymax, -s.w.imag());
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
  const double pad = 0.05 * span;
  xmin -= pad; xmax += pad; ymin -= pad; ymax += pad;
  const double w = xmax - xmin, h = ymax - ymin;

  Complex c{0.0, 0.0};
  if (curve.singleton) {
    c = curve.samples.front().w;
  } else {
    c = centroid(polygon_of(curve));
  }
  const double cx = c.real(), cy = -c.imag();

  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(xmin) << ' '
     << num(ymin) << ' ' << num(w) << ' ' << num(h) << "\" width=\"640\" height=\""
     << num(640.0 * h / w) << "\">\n";
  os << "<line x1=\"" << num(xmin) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(xmax)
     << "\" y2=\"" << num(cy) << "\" stroke=\"#999999\" stroke-width=\"" << num(0.002 * span)
     << "\"/>\n";
  os << "<line x1=\"" << num(cx) << "\" y1=\"" << num(ymin) << "\" x2=\"" << num(cx)
     << "\" y2=\"" << num(ymax) << "\" stroke=\"#999999\" stroke-width=\"" << num(0.002 * span)
     << "\"/>\n";
  if (curve.singleton) {
    os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
       << num(0.01 * span) << "\" fill=\"#1f60c4\"/>\n";
  } else {
    os << "<polyline fill=\"none\" stroke=\"#1f60c4\" stroke-width=\"" << num(0.004 * span)
       << "\" points=\"";
    for (const auto& s : curve.samples)
      os << num(s.w.real()) << ',' << num(-s.w.imag()) << ' ';
    // close the loop
    os << num(curve.samples.front().w.real()) << ',' << num(-curve.samples.front().w.imag());
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

inline Json boundary_sidecar(const BoundaryCurve& curve) {
  Json j;
  j["params"] = json_params(curve.params, curve.at);
  j["samples"] = curve.samples.size();
  j["tol"] = curve.tol;
  j["singleton"] = curve.singleton;
  if (!curve.singleton) {
    const RegionPolygon poly = polygon_of(curve);
    const auto conv = is_convex(poly, 1e-9);
    j["convex"] = conv.convex;
    j["worst_convexity_violation"] = conv.worst_violation;
    j["simple"] = is_simple(poly);
    j["diameter"] = diameter(poly);
    j["centroid"] = json_complex(centroid(poly));
  } else {
    j["value"] = json_complex(curve.samples.front().w);
  }
  j["degenerate_value"] = json_complex(degenerate_value(curve.params, curve.at));
  return j;
}

inline Json disk_json(const DiskBound& disk) {
  Json j;
  j["center"] = json_complex(disk.center);
  j["radius"] = disk.radius;
  return j;
}

}  // namespace varreg
