#pragma once

// Umbrella header.

#include "varreg/core.hpp"
#include "varreg/quadrature.hpp"
#include "varreg/extremal.hpp"
#include "varreg/region.hpp"
#include "varreg/bounds.hpp"
#include "varreg/samplers.hpp"
#include "varreg/presets.hpp"

namespace varreg {
inline constexpr const char* kVersion = "0.1.0";
}
