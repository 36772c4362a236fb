#pragma once

#include <cstdint>
#include <vector>

#include "hiha/grid.hpp"

namespace hiha {

/// Outlier-selection policy for the high band: keep the top (1-q) fraction by
/// magnitude, or everything at or above an absolute threshold.
struct SparsifyPolicy {
    enum class Mode : uint8_t { Quantile, Absolute };
    Mode mode = Mode::Quantile;
    double quantile = 0.999;
    double threshold = 0.0;

    static SparsifyPolicy by_quantile(double q) { return {Mode::Quantile, q, 0.0}; }
    static SparsifyPolicy by_threshold(double tau) { return {Mode::Absolute, 0.0, tau}; }
};

/// CSR storage of kept high-band voxels. Rows are (level, lat) pairs flattened
/// level-major; columns are longitude. Stored values are bit-exact copies.
struct SparseHighBand {
    GridShape shape;
    std::vector<uint64_t> row_ptr;  // length levels*lats + 1
    std::vector<uint32_t> col_idx;
    std::vector<float> values;
    float threshold_used = 0.0f;
    double kept_fraction = 0.0;

    size_t nnz() const { return values.size(); }
    /// Wire size in bytes: 16-byte head + 8*len(row_ptr) + 4*(len(col_idx)+len(values)).
    size_t byte_size() const {
        return 16 + 8 * row_ptr.size() + 4 * (col_idx.size() + values.size());
    }
};

/// Keeps voxels with |v| >= threshold. Under the quantile policy the
/// threshold is chosen so that exactly ceil((1-q)*N) voxels are kept, ties
/// broken by flat index order.
SparseHighBand sparsify(const GridField& high, const SparsifyPolicy& policy);

/// Zeros everywhere except the stored entries (bit-exact). Malformed
/// row_ptr/col_idx structures are rejected with an index diagnostic.
GridField densify(const SparseHighBand& sparse);

}  // namespace hiha
