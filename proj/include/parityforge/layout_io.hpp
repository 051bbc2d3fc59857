#pragma once

#include <string>

#include "parityforge/layout.hpp"

namespace pf {

// JSON export per the layout file schema; import reproduces the layout
// bit-exactly (composite groups are reconstructed from part order).
std::string export_layout_json(const UnfoldedLayout& layout);
UnfoldedLayout import_layout_json(const std::string& text);

// Vector drawing: labelled qubit circles, bulk plaquettes, boundary parts.
std::string export_layout_svg(const UnfoldedLayout& layout);

bool layouts_equal(const UnfoldedLayout& a, const UnfoldedLayout& b);

}  // namespace pf
