#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convbody/inequalities.hpp"
#include "convbody/thetabody.hpp"

namespace convbody {

/// Structured text (JSON) for a radial body. The grid is stored by kind,
/// size and seed and rebuilt on load. Unbounded radii are written as null.
std::string radial_body_to_text(const RadialBody& rb, uint64_t seed);
RadialBody radial_body_from_text(const std::string& text);

/// Header lines shared by every CSV output: tool version, seed, grid and
/// the tolerance set, each prefixed by '#'.
std::string csv_header(uint64_t seed, const std::string& grid_description);
std::string describe_grid(const SphereGrid& grid);

std::string reports_to_csv(const std::vector<InequalityReport>& reports);
std::string reports_to_json(const std::vector<InequalityReport>& reports, uint64_t seed,
                            const std::string& grid_description);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace convbody
