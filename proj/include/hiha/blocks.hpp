#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>

#include "hiha/grid.hpp"
#include "hiha/siren.hpp"

namespace hiha {

/// Half-open index ranges per (level, lat, lon) axis.
struct IndexBox {
    std::array<int, 3> lo{0, 0, 0};
    std::array<int, 3> hi{0, 0, 0};

    static IndexBox whole(const GridShape& s) {
        return IndexBox{{0, 0, 0}, {s.levels, s.lats, s.lons}};
    }
    int extent(int axis) const { return hi[axis] - lo[axis]; }
    size_t voxels() const {
        return static_cast<size_t>(std::max(0, extent(0))) * std::max(0, extent(1)) *
               std::max(0, extent(2));
    }
    bool empty() const { return extent(0) <= 0 || extent(1) <= 0 || extent(2) <= 0; }
    GridShape shape() const { return GridShape{extent(0), extent(1), extent(2)}; }
    bool operator==(const IndexBox&) const = default;
    std::string to_string() const;
};

/// Values inside the box as a 1xN row (flat C order within the box).
RowX<float> gather_values(const GridField& field, const IndexBox& box);

/// Coordinate columns for the box voxels, same ordering as gather_values.
MatX<float> gather_coords(const CoordinateTensor& coords, const IndexBox& box);

/// Adds a 1xN row back into the field at the box voxels.
void scatter_add(GridField& field, const IndexBox& box, const RowX<float>& values);

/// Copies a box out into its own field.
GridField crop(const GridField& field, const IndexBox& box);

/// RMSE between two fields restricted to a box, 64-bit accumulation.
double block_rmse(const GridField& a, const GridField& b, const IndexBox& box);

}  // namespace hiha
