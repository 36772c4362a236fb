#pragma once

#include <string>

#include "hiha/grid.hpp"

namespace hiha {

/// Field files are flat little-endian float32 in (level, lat, lon) C order.
/// Metadata lives in a sidecar JSON named "<path>.json" holding
/// {shape, variable_name, units, frame_index}.
void write_grd(const std::string& path, const GridField& field);
GridField read_grd(const std::string& path);

/// Climatologies reuse the field layout; frame_index is ignored and the
/// sidecar's variable_name doubles as the epoch label.
void write_climatology(const std::string& path, const Climatology& clim);
Climatology read_climatology(const std::string& path);

}  // namespace hiha
