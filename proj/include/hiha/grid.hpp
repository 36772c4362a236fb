#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hiha/errors.hpp"

namespace hiha {

/// Grid extents in (level, lat, lon) order; data is stored C-ordered with
/// longitude fastest.
struct GridShape {
    int levels = 0;
    int lats = 0;
    int lons = 0;

    size_t voxels() const {
        return static_cast<size_t>(levels) * static_cast<size_t>(lats) *
               static_cast<size_t>(lons);
    }
    bool operator==(const GridShape&) const = default;
    std::string to_string() const;
};

/// A single-variable 3D scalar field. Values are 32-bit; anything that
/// aggregates over voxels (means, norms) accumulates in 64-bit.
struct GridField {
    GridShape shape;
    std::vector<float> values;
    std::string variable_name;
    std::string units;
    int frame_index = 0;

    GridField() = default;
    GridField(GridShape s, float fill = 0.0f)
        : shape(s), values(s.voxels(), fill) {}

    size_t index(int level, int lat, int lon) const {
        return (static_cast<size_t>(level) * shape.lats + lat) * shape.lons + lon;
    }
    float at(int level, int lat, int lon) const { return values[index(level, lat, lon)]; }
    float& at(int level, int lat, int lon) { return values[index(level, lat, lon)]; }

    /// Throws ShapeError if extents don't match the value count or any value
    /// is NaN/Inf.
    void validate() const;
};

struct NormalizationParams {
    double v_min = 0.0;
    double v_max = 0.0;
    std::string climatology_id;  // empty = none

    /// Constant source field; normalization mapped it to all-zero.
    bool degenerate() const { return !(v_min < v_max); }

    double center() const { return 0.5 * (v_min + v_max); }
    double half_range() const { return 0.5 * (v_max - v_min); }
};

struct Climatology {
    GridShape shape;
    std::vector<float> values;
    std::string epoch_label;
};

/// Per-voxel (x, y, z, p_norm) network inputs, voxel-major and contiguous so
/// they can be viewed as a 4xN column-major matrix without copying.
struct CoordinateTensor {
    GridShape shape;
    std::vector<float> xyzp;  // 4 floats per voxel

    size_t voxel_count() const { return xyzp.size() / 4; }
    const float* voxel(size_t i) const { return xyzp.data() + 4 * i; }
};

/// Elementwise Y - climatology. With no climatology the scalar field mean is
/// subtracted instead and recorded via the returned id ("scalar-mean").
GridField subtract_climatology(const GridField& field, const Climatology* clim,
                               std::string* climatology_id_out = nullptr);

/// Undo of subtract_climatology for reconstruction output.
GridField add_climatology(const GridField& anomaly, const Climatology* clim,
                          double scalar_mean_fallback);

/// Scalar mean of a field in 64-bit accumulation.
double field_mean(const GridField& field);

/// Min-max map onto [-1, 1]. A constant field maps to all-zero and the params
/// flag it degenerate (v_min == v_max).
std::pair<GridField, NormalizationParams> normalize(const GridField& field);

/// Exact inverse of normalize up to one 32-bit ulp.
GridField denormalize(const GridField& normed, const NormalizationParams& params);

/// Unit-sphere embedding plus normalized pressure.
///   lat index i -> theta = -pi/2 + pi*i/(n_lat-1)   (poles included)
///   lon index j -> phi   = 2*pi*j/n_lon             (periodic, no endpoint)
///   level index k -> p_norm affine onto [-1, 1]
/// Single-extent axes map to angle 0 / p_norm 0.
CoordinateTensor build_coordinates(const GridShape& shape);

}  // namespace hiha
