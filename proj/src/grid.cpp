#include "hiha/grid.hpp"

#include <cmath>
#include <limits>

namespace hiha {

std::string GridShape::to_string() const {
    return "(" + std::to_string(levels) + ", " + std::to_string(lats) + ", " +
           std::to_string(lons) + ")";
}

void GridField::validate() const {
    if (shape.levels < 1 || shape.lats < 1 || shape.lons < 1) {
        throw ShapeError("grid shape " + shape.to_string() + " has a nonpositive extent");
    }
    if (values.size() != shape.voxels()) {
        throw ShapeError("grid shape " + shape.to_string() + " declares " +
                         std::to_string(shape.voxels()) + " voxels but holds " +
                         std::to_string(values.size()));
    }
    for (float v : values) {
        if (!std::isfinite(v)) throw ShapeError("grid field contains non-finite values");
    }
}

static void require_same_shape(const GridShape& a, const GridShape& b, const char* what) {
    if (a == b) return;
    std::string axis;
    if (a.levels != b.levels) axis = "level";
    else if (a.lats != b.lats) axis = "lat";
    else axis = "lon";
    throw ShapeError(std::string(what) + ": shape mismatch on " + axis + " axis, " +
                     a.to_string() + " vs " + b.to_string());
}

double field_mean(const GridField& field) {
    double acc = 0.0;
    for (float v : field.values) acc += v;
    return field.values.empty() ? 0.0 : acc / static_cast<double>(field.values.size());
}

GridField subtract_climatology(const GridField& field, const Climatology* clim,
                               std::string* climatology_id_out) {
    GridField anomaly = field;
    if (clim) {
        require_same_shape(field.shape, clim->shape, "subtract_climatology");
        for (size_t i = 0; i < anomaly.values.size(); ++i) {
            anomaly.values[i] = field.values[i] - clim->values[i];
        }
        if (climatology_id_out) *climatology_id_out = clim->epoch_label;
    } else {
        const float mean = static_cast<float>(field_mean(field));
        for (float& v : anomaly.values) v -= mean;
        if (climatology_id_out) *climatology_id_out = "scalar-mean";
    }
    return anomaly;
}

GridField add_climatology(const GridField& anomaly, const Climatology* clim,
                          double scalar_mean_fallback) {
    GridField out = anomaly;
    if (clim) {
        require_same_shape(anomaly.shape, clim->shape, "add_climatology");
        for (size_t i = 0; i < out.values.size(); ++i) {
            out.values[i] = anomaly.values[i] + clim->values[i];
        }
    } else {
        const float mean = static_cast<float>(scalar_mean_fallback);
        for (float& v : out.values) v += mean;
    }
    return out;
}

std::pair<GridField, NormalizationParams> normalize(const GridField& field) {
    field.validate();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (float v : field.values) {
        lo = std::min(lo, static_cast<double>(v));
        hi = std::max(hi, static_cast<double>(v));
    }
    NormalizationParams params{lo, hi, ""};
    GridField out = field;
    if (params.degenerate()) {
        for (float& v : out.values) v = 0.0f;
        return {std::move(out), params};
    }
    const double c = params.center();
    const double s = params.half_range();
    for (float& v : out.values) {
        v = static_cast<float>((static_cast<double>(v) - c) / s);
    }
    return {std::move(out), params};
}

GridField denormalize(const GridField& normed, const NormalizationParams& params) {
    GridField out = normed;
    if (params.degenerate()) {
        for (float& v : out.values) v = static_cast<float>(params.v_min);
        return out;
    }
    const double c = params.center();
    const double s = params.half_range();
    for (float& v : out.values) {
        v = static_cast<float>(static_cast<double>(v) * s + c);
    }
    return out;
}

CoordinateTensor build_coordinates(const GridShape& shape) {
    if (shape.levels < 1 || shape.lats < 1 || shape.lons < 1) {
        throw ShapeError("build_coordinates: zero extent in shape " + shape.to_string());
    }
    CoordinateTensor t;
    t.shape = shape;
    t.xyzp.resize(shape.voxels() * 4);

    const double pi = 3.14159265358979323846;
    std::vector<double> cos_theta(shape.lats), sin_theta(shape.lats);
    for (int i = 0; i < shape.lats; ++i) {
        const double theta =
            shape.lats == 1 ? 0.0 : -pi / 2 + pi * static_cast<double>(i) / (shape.lats - 1);
        cos_theta[i] = std::cos(theta);
        sin_theta[i] = std::sin(theta);
        // Exact pole rows: cos(theta) must be exactly zero so all longitudes
        // collapse to the same point.
        if (shape.lats > 1 && (i == 0 || i == shape.lats - 1)) {
            cos_theta[i] = 0.0;
            sin_theta[i] = i == 0 ? -1.0 : 1.0;
        }
    }
    std::vector<double> cos_phi(shape.lons), sin_phi(shape.lons);
    for (int j = 0; j < shape.lons; ++j) {
        const double phi = 2.0 * pi * static_cast<double>(j) / shape.lons;
        cos_phi[j] = std::cos(phi);
        sin_phi[j] = std::sin(phi);
    }

    size_t w = 0;
    for (int k = 0; k < shape.levels; ++k) {
        const float p_norm =
            shape.levels == 1
                ? 0.0f
                : static_cast<float>(-1.0 + 2.0 * static_cast<double>(k) / (shape.levels - 1));
        for (int i = 0; i < shape.lats; ++i) {
            for (int j = 0; j < shape.lons; ++j) {
                t.xyzp[w++] = static_cast<float>(cos_theta[i] * cos_phi[j]);
                t.xyzp[w++] = static_cast<float>(cos_theta[i] * sin_phi[j]);
                t.xyzp[w++] = static_cast<float>(sin_theta[i]);
                t.xyzp[w++] = p_norm;
            }
        }
    }
    return t;
}

}  // namespace hiha
