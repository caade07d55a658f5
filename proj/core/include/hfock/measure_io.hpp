#pragma once

#include <filesystem>
#include <string_view>

#include "hfock/measure.hpp"

namespace hfock {

/// Parses a JSON measure specification:
///
///   {"type": "atomic", "atoms": [{"x": 0, "y": 0, "w": 1}, ...]}
///   {"type": "lattice_weighted", "lattice": {"r": 1, "extent": 2, "weights": [...]}}
///   {"type": "density", "density": {"family": "gaussian_bump",
///                                   "params": {...}, "support_radius": 8}}
///
/// Density families and their params:
///   constant             {c}
///   gaussian_bump        {amplitude, center: {x, y}, width}
///   disk_indicator       {center: {x, y}, radius, height}
///   annulus              {center: {x, y}, r_inner, r_outer, height}
///   radial_poly_gaussian {coefficients: [...], decay}
///
/// Optional `center` objects default to the origin. Throws ParseError whose
/// field() names the offending key, e.g. "atoms[0].w".
Measure parse_measure(std::string_view text);

Measure load_measure(const std::filesystem::path& path);

}  // namespace hfock
