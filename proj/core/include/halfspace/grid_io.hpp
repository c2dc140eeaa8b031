#pragma once

#include <string>

#include "halfspace/grid.hpp"

namespace halfspace {

/// Write one row per node as "x1,x2,x3,value", x3 fastest, 17 significant
/// digits (shortest representation that round-trips).
void write_grid_csv(const GridField& field, const std::string& path);

/// Write the raw 64-bit values row-major (x3 fastest) to `path_prefix.bin`
/// plus a JSON sidecar `path_prefix.json` describing the dimensions.
void write_grid_binary(const GridField& field, const std::string& path_prefix);

/// Shortest round-trip decimal form of a double, capped at 17 significant
/// digits. Shared by every emitter so outputs are byte-reproducible.
std::string format_double(double v);

} // namespace halfspace
