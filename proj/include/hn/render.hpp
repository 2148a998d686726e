#pragma once

#include <string>

#include "hn/polygon.hpp"

namespace hn {

// CSV with header "t,P": exact-rational abscissa, decimal height.
std::string polygon_csv(const Polygon& p, int digits);

// Fixed-layout SVG (no randomized placement), byte-stable for a fixed
// input and digit count.
std::string polygon_svg(const Polygon& p, int digits);

}  // namespace hn
