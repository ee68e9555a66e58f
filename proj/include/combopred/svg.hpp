#pragma once

#include <string>

#include "combopred/types.hpp"

namespace combopred {

// Minimal static line chart of a predicted waterfall (point estimate plus
// band edges when present) as an SVG string. No external renderer.
std::string waterfall_svg(const PredictedBand& band, const std::string& title);

} // namespace combopred
