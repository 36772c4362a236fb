#include "hiha/blocks.hpp"

#include <cmath>

namespace hiha {

std::string IndexBox::to_string() const {
    auto range = [](int a, int b) { return "[" + std::to_string(a) + "," + std::to_string(b) + ")"; };
    return range(lo[0], hi[0]) + "x" + range(lo[1], hi[1]) + "x" + range(lo[2], hi[2]);
}

RowX<float> gather_values(const GridField& field, const IndexBox& box) {
    RowX<float> out(box.voxels());
    Eigen::Index w = 0;
    for (int k = box.lo[0]; k < box.hi[0]; ++k) {
        for (int i = box.lo[1]; i < box.hi[1]; ++i) {
            const size_t base = field.index(k, i, 0);
            for (int j = box.lo[2]; j < box.hi[2]; ++j) {
                out(w++) = field.values[base + j];
            }
        }
    }
    return out;
}

MatX<float> gather_coords(const CoordinateTensor& coords, const IndexBox& box) {
    MatX<float> out(4, box.voxels());
    const GridShape& s = coords.shape;
    Eigen::Index w = 0;
    for (int k = box.lo[0]; k < box.hi[0]; ++k) {
        for (int i = box.lo[1]; i < box.hi[1]; ++i) {
            const size_t row = (static_cast<size_t>(k) * s.lats + i) * s.lons;
            for (int j = box.lo[2]; j < box.hi[2]; ++j) {
                const float* v = coords.xyzp.data() + 4 * (row + j);
                out(0, w) = v[0];
                out(1, w) = v[1];
                out(2, w) = v[2];
                out(3, w) = v[3];
                ++w;
            }
        }
    }
    return out;
}

void scatter_add(GridField& field, const IndexBox& box, const RowX<float>& values) {
    Eigen::Index w = 0;
    for (int k = box.lo[0]; k < box.hi[0]; ++k) {
        for (int i = box.lo[1]; i < box.hi[1]; ++i) {
            const size_t base = field.index(k, i, 0);
            for (int j = box.lo[2]; j < box.hi[2]; ++j) {
                field.values[base + j] += values(w++);
            }
        }
    }
}

GridField crop(const GridField& field, const IndexBox& box) {
    GridField out(box.shape());
    out.variable_name = field.variable_name;
    out.units = field.units;
    out.frame_index = field.frame_index;
    Eigen::Index w = 0;
    for (int k = box.lo[0]; k < box.hi[0]; ++k) {
        for (int i = box.lo[1]; i < box.hi[1]; ++i) {
            const size_t base = field.index(k, i, 0);
            for (int j = box.lo[2]; j < box.hi[2]; ++j) {
                out.values[w++] = field.values[base + j];
            }
        }
    }
    return out;
}

double block_rmse(const GridField& a, const GridField& b, const IndexBox& box) {
    if (!(a.shape == b.shape)) {
        throw ShapeError("block_rmse: shape mismatch " + a.shape.to_string() + " vs " +
                         b.shape.to_string());
    }
    if (box.empty()) return 0.0;
    double acc = 0.0;
    for (int k = box.lo[0]; k < box.hi[0]; ++k) {
        for (int i = box.lo[1]; i < box.hi[1]; ++i) {
            const size_t base = a.index(k, i, 0);
            for (int j = box.lo[2]; j < box.hi[2]; ++j) {
                const double d = static_cast<double>(a.values[base + j]) -
                                 static_cast<double>(b.values[base + j]);
                acc += d * d;
            }
        }
    }
    return std::sqrt(acc / static_cast<double>(box.voxels()));
}

}  // namespace hiha
