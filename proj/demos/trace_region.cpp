// Minimal library usage: trace one region boundary and print a few
// geometric facts about it.

#include <cstdio>

#include "varreg/varreg.hpp"

int main() {
  using namespace varreg;

  const ClassParams params{Complex{kPi, 0.0}, Complex{0.3, 0.2}};
  const EvalPoint at{Complex{0.5, -0.25}};

  const BoundaryCurve curve = boundary_curve(params, at, 256, 1e-10);
  const RegionPolygon poly = polygon_of(curve);

  std::printf("traced %zu boundary samples\n", curve.samples.size());
  std::printf("convex: %s, simple: %s\n",
              is_convex(poly).convex ? "yes" : "no", is_simple(poly) ? "yes" : "no");
  std::printf("diameter: %.6f\n", diameter(poly));

  const Complex dv = degenerate_value(params, at);
  std::printf("interior point (%.6f, %.6f) margin: %.6f\n", dv.real(), dv.imag(),
              signed_margin(poly, dv));

  const DiskBound disk = path_bound(params, radial_path(at));
  std::printf("radial disk: center (%.6f, %.6f), radius %.6f\n", disk.center.real(),
              disk.center.imag(), disk.radius);
  return 0;
}
