#include <catch2/catch_amalgamated.hpp>

#include "varreg/quadrature.hpp"
#include "varreg/samplers.hpp"

using namespace varreg;
using Catch::Approx;

TEST_CASE("integrate_segment: polynomial and closed-form integrands") {
  const QuadratureResult one =
      integrate_segment([](Complex) { return Complex{1.0, 0.0}; }, {0.3, 0.4});
  CHECK(std::abs(one.value - Complex{0.3, 0.4}) < 1e-14);
  CHECK(one.err_estimate <= kDefaultQuadTol);

  const QuadratureResult lin = integrate_segment([](Complex z) { return z; }, {0.5, 0.0});
  CHECK(lin.value.real() == Approx(0.125).margin(1e-14));

  // int_0^{1/2} dz/(1-z) = log 2
  const QuadratureResult log2 =
      integrate_segment([](Complex z) { return 1.0 / (1.0 - z); }, {0.5, 0.0}, 1e-10);
  CHECK(std::abs(log2.value - Complex{0.69314718055994531, 0.0}) < 1e-10);
  CHECK(log2.err_estimate <= 1e-10);
  CHECK(log2.evaluations >= 15);
}

TEST_CASE("integrate_segment: zero-length segment") {
  const QuadratureResult r = integrate_segment([](Complex z) { return 1.0 / (1.0 - z); },
                                               {0.0, 0.0});
  CHECK(r.value == Complex{0.0, 0.0});
  CHECK(r.err_estimate == 0.0);
  CHECK(r.evaluations == 0);
}

TEST_CASE("integrate_segment: linearity") {
  detail::SplitMix64 rng(7u);
  auto coef = [&] {
    return Complex{2.0 * rng.u01() - 1.0, 2.0 * rng.u01() - 1.0};
  };
  for (int trial = 0; trial < 10; ++trial) {
    const Complex c0 = coef(), c1 = coef(), c2 = coef(), d0 = coef(), d1 = coef();
    auto f = [&](Complex z) { return c0 + c1 * z + c2 * z * z; };
    auto g = [&](Complex z) { return d0 + d1 * z * z * z; };
    const Complex alpha = coef(), beta = coef();
    const Complex z_end{0.4, 0.3};
    auto combo = [&](Complex z) { return alpha * f(z) + beta * g(z); };
    const Complex lhs = integrate_segment(combo, z_end).value;
    const Complex rhs = alpha * integrate_segment(f, z_end).value +
                        beta * integrate_segment(g, z_end).value;
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("integrate_segment: pole on the segment endpoint fails honestly") {
  CHECK_THROWS_AS(
      integrate_segment([](Complex z) { return 1.0 / (1.0 - z); }, {1.0, 0.0}, 1e-10),
      no_convergence);
}

TEST_CASE("integrate_segment matches a brute-force trapezoid oracle") {
  // reduced boundary integrand for the figure-1-left parameters, theta = pi/2
  const Complex lam{-0.196029, 0.480913};
  const Complex a = std::polar(1.0, kPi / 2.0);
  const Complex z0{-0.173777, 0.0869191};
  auto f = [&](Complex z) {
    return ((lam - 1.0) + (1.0 - std::conj(lam)) * a * z) /
           ((1.0 - z) * (1.0 + (std::conj(lam) * a - lam) * z - a * z * z));
  };
  const Complex fine = integrate_segment(f, z0, 1e-10).value;
  constexpr int kSteps = 100000;
  Complex acc = 0.5 * (f({0.0, 0.0}) + f(z0));
  for (int s = 1; s < kSteps; ++s) acc += f((static_cast<double>(s) / kSteps) * z0);
  const Complex coarse = acc * (z0 / static_cast<double>(kSteps));
  CHECK(std::abs(fine - coarse) / std::abs(fine) < 1e-7);
}

TEST_CASE("integrate_path: radial basics") {
  const PathSpec path = radial_path({{0.5, 0.0}});
  const QuadratureResult dz_int =
      integrate_path([](Complex, Complex dz) { return dz; }, path);
  CHECK(std::abs(dz_int.value - Complex{0.5, 0.0}) < 1e-12);

  // arclength of the same path via modulus mode
  const QuadratureResult len = integrate_path([](Complex, Complex dz) { return dz; },
                                              path, kDefaultQuadTol, PathMode::modulus);
  CHECK(len.value.real() == Approx(0.5).margin(1e-12));
  CHECK(len.value.imag() == Approx(0.0).margin(1e-15));

  const PathSpec slanted = radial_path({{0.3, 0.4}});
  const QuadratureResult zint =
      integrate_path([](Complex z, Complex dz) { return z * dz; }, slanted);
  CHECK(std::abs(zint.value - Complex{0.3, 0.4} * Complex{0.3, 0.4} * 0.5) < 1e-12);
  const QuadratureResult alen = integrate_path([](Complex, Complex dz) { return dz; },
                                               slanted, kDefaultQuadTol, PathMode::modulus);
  CHECK(alen.value.real() == Approx(0.5).margin(1e-12));
}

namespace {

// curved spiral path without an evaluator: resolution limited by its nodes
PathSpec spiral_nodes(std::size_t n) {
  PathSpec path;
  path.kind = PathKind::custom;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(n - 1);
    const Complex rot = std::polar(1.0, kPi / 4.0 * t);
    path.nodes.push_back({t, 0.5 * t * rot, 0.5 * rot + 0.5 * t * Complex{0.0, kPi / 4.0} * rot});
  }
  return path;
}

}  // namespace

TEST_CASE("integrate_path: node-only paths interpolate and report model error") {
  const PathSpec path = spiral_nodes(65);
  const QuadratureResult r =
      integrate_path([](Complex, Complex dz) { return dz; }, path, 1e-8);
  const Complex exact = 0.5 * std::polar(1.0, kPi / 4.0);
  CHECK(std::abs(r.value - exact) < 1e-8);
  CHECK(r.err_estimate <= 1e-8);

  // doubling the node count moves the result by less than 4x the coarse
  // run's error estimate
  const PathSpec fine = spiral_nodes(129);
  const QuadratureResult r2 =
      integrate_path([](Complex, Complex dz) { return dz; }, fine, 1e-8);
  CHECK(std::abs(r2.value - r.value) < 4.0 * r.err_estimate);
}

TEST_CASE("integrate_path: invalid paths are rejected") {
  PathSpec bad;
  bad.nodes = {{0.0, {0.0, 0.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(integrate_path([](Complex, Complex dz) { return dz; }, bad), invalid_path);

  bad.nodes = {{0.0, {0.0, 0.0}, {1.0, 0.0}}, {0.5, {0.2, 0.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(integrate_path([](Complex, Complex dz) { return dz; }, bad), invalid_path);

  bad.nodes = {{0.0, {0.0, 0.0}, {1.0, 0.0}},
               {0.6, {1.2, 0.0}, {1.0, 0.0}},
               {1.0, {0.5, 0.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(integrate_path([](Complex, Complex dz) { return dz; }, bad), invalid_path);

  bad.nodes = {{0.0, {0.0, 0.0}, {1.0, 0.0}},
               {0.6, {0.3, 0.0}, {1.0, 0.0}},
               {0.4, {0.2, 0.0}, {1.0, 0.0}},
               {1.0, {0.5, 0.0}, {1.0, 0.0}}};
  CHECK_THROWS_AS(integrate_path([](Complex, Complex dz) { return dz; }, bad), invalid_path);
}

TEST_CASE("newton_continue: trivial linear target gives the radial path") {
  std::vector<double> grid;
  for (int k = 0; k <= 10; ++k) grid.push_back(k / 10.0);
  const PathSpec path = newton_continue(
      [](Complex z) { return z; }, [](Complex) { return Complex{1.0, 0.0}; },
      [](double t) { return Complex{0.5 * t, 0.0}; },
      [](double) { return Complex{0.5, 0.0}; }, {0.0, 0.0}, grid);
  REQUIRE(path.nodes.size() == grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(path.nodes[k].z - Complex{0.5 * grid[k], 0.0}) < 1e-12);
    CHECK(std::abs(path.nodes[k].dz - Complex{0.5, 0.0}) < 1e-12);
  }
  CHECK(std::abs(path.nodes.back().z - Complex{0.5, 0.0}) < 1e-10);
}

TEST_CASE("newton_continue: closed-form starlike inverse") {
  // target G0(z) = z/sqrt(1-z^2) with rhs t*G0(1/2); the solution is
  // z(t) = w/sqrt(1+w^2) at w = t*G0(1/2), so z(1/2) = 1/sqrt(13)
  auto g0 = [](Complex z) { return z / std::sqrt(1.0 - z * z); };
  auto dg0 = [](Complex z) {
    const Complex s = std::sqrt(1.0 - z * z);
    return 1.0 / (s * s * s);
  };
  const Complex target_end = g0({0.5, 0.0});
  std::vector<double> grid{0.001};
  for (int k = 1; k <= 64; ++k) grid.push_back(k / 64.0);
  const PathSpec path = newton_continue(
      g0, dg0, [&](double t) { return t * target_end; },
      [&](double) { return target_end; }, 0.001 * target_end, grid, 1e-13);
  Complex z_half;
  for (const auto& n : path.nodes)
    if (n.t == 0.5) z_half = n.z;
  CHECK(std::abs(z_half - Complex{0.2773500981126146, 0.0}) < 1e-10);
  CHECK(std::abs(path.nodes.back().z - Complex{0.5, 0.0}) < 1e-10);
}

TEST_CASE("newton_continue: leaving the disk is an error") {
  std::vector<double> grid{0.0, 0.5, 1.0};
  CHECK_THROWS_AS(
      newton_continue([](Complex z) { return z; },
                      [](Complex) { return Complex{1.0, 0.0}; },
                      [](double t) { return Complex{2.0 * t, 0.0}; },
                      [](double) { return Complex{2.0, 0.0}; }, {0.0, 0.0}, grid),
      left_disk);
}
