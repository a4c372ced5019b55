#pragma once

#include <array>
#include <string_view>

#include "varreg/core.hpp"

namespace varreg {

/// Bundled (z0, lambda, mu) parameter sets, two per figure 1..6, left/right.
struct FigurePreset {
  std::string_view id;
  Complex z0;
  Complex lambda;
  Complex mu;
};

inline constexpr std::array<FigurePreset, 12> kFigurePresets{{
    {"1L", {-0.173777, 0.0869191}, {-0.196029, 0.480913}, {32796.0, 64560.2}},
    {"1R", {-0.713811, -0.0997298}, {-0.225338, 0.323073}, {69097.4, 83886.6}},
    {"2L", {-0.734426, 0.61942}, {-0.0564481, -0.00656122}, {54025.0, -5108.28}},
    {"2R", {-0.69693, -0.601351}, {-0.0416728, -0.683999}, {23944.2, 50613.5}},
    {"3L", {0.0150249, 0.994594}, {-0.219752, -0.256693}, {16828.1, -35690.8}},
    {"3R", {0.378332, -0.90135}, {0.366791, -0.600223}, {5006.59, -46769.8}},
    {"4L", {0.80351, 0.549035}, {-0.55886, 0.0419296}, {83278.8, -90464.3}},
    {"4R", {0.691568, 0.644823}, {0.126172, 0.137643}, {47178.4, 83497.8}},
    {"5L", {0.737135, 0.496542}, {-0.00646307, -0.0167039}, {14038.5, 9544.66}},
    {"5R", {-0.00588894, -0.00496324}, {-0.0472837, 0.0970889}, {25447.1, -2011.7}},
    {"6L", {0.556307, -0.814404}, {0.226895, -0.384635}, {13589.3, -25797.8}},
    {"6R", {0.880992, -0.328223}, {-0.0326596, 0.656304}, {39935.5, 11412.0}},
}};

inline const FigurePreset* find_preset(std::string_view id) {
  for (const auto& p : kFigurePresets)
    if (p.id == id) return &p;
  return nullptr;
}

}  // namespace varreg
