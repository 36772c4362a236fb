#include "hiha/ssm.hpp"

#include <algorithm>
#include <cmath>

namespace hiha {

SparseHighBand sparsify(const GridField& high, const SparsifyPolicy& policy) {
    high.validate();
    const GridShape s = high.shape;
    const size_t n = s.voxels();
    const size_t n_rows = static_cast<size_t>(s.levels) * s.lats;

    SparseHighBand out;
    out.shape = s;
    out.row_ptr.assign(n_rows + 1, 0);

    std::vector<char> keep(n, 0);
    double threshold = 0.0;
    if (policy.mode == SparsifyPolicy::Mode::Absolute) {
        threshold = policy.threshold;
        for (size_t i = 0; i < n; ++i) {
            if (std::abs(static_cast<double>(high.values[i])) >= threshold) keep[i] = 1;
        }
    } else {
        if (!(policy.quantile >= 0.0 && policy.quantile <= 1.0)) {
            throw ConfigError("sparsify: quantile must lie in [0, 1]");
        }
        const size_t k = static_cast<size_t>(
            std::ceil((1.0 - policy.quantile) * static_cast<double>(n)));
        if (k >= n) {
            std::fill(keep.begin(), keep.end(), 1);
            threshold = 0.0;
        } else if (k > 0) {
            // Stable top-k: order by magnitude descending, flat index ascending.
            std::vector<uint32_t> idx(n);
            for (size_t i = 0; i < n; ++i) idx[i] = static_cast<uint32_t>(i);
            auto better = [&](uint32_t a, uint32_t b) {
                const float ma = std::abs(high.values[a]);
                const float mb = std::abs(high.values[b]);
                return ma > mb || (ma == mb && a < b);
            };
            std::nth_element(idx.begin(), idx.begin() + k - 1, idx.end(), better);
            threshold = std::abs(high.values[idx[k - 1]]);
            for (size_t i = 0; i < k; ++i) keep[idx[i]] = 1;
        }
    }

    // CSR assembly in flat order keeps col_idx strictly increasing per row.
    size_t kept = 0;
    for (size_t r = 0; r < n_rows; ++r) {
        out.row_ptr[r] = kept;
        const size_t base = r * s.lons;
        for (int c = 0; c < s.lons; ++c) {
            if (keep[base + c]) {
                out.col_idx.push_back(static_cast<uint32_t>(c));
                out.values.push_back(high.values[base + c]);
                ++kept;
            }
        }
    }
    out.row_ptr[n_rows] = kept;
    out.threshold_used = static_cast<float>(threshold);
    out.kept_fraction = n == 0 ? 0.0 : static_cast<double>(kept) / static_cast<double>(n);
    return out;
}

GridField densify(const SparseHighBand& sparse) {
    const GridShape s = sparse.shape;
    const size_t n_rows = static_cast<size_t>(s.levels) * s.lats;
    if (sparse.row_ptr.size() != n_rows + 1) {
        throw ShapeError("densify: row_ptr length " + std::to_string(sparse.row_ptr.size()) +
                         " does not match " + std::to_string(n_rows + 1) + " for shape " +
                         s.to_string());
    }
    if (sparse.row_ptr.front() != 0 || sparse.row_ptr.back() != sparse.values.size() ||
        sparse.col_idx.size() != sparse.values.size()) {
        throw ShapeError("densify: row_ptr endpoints disagree with stored entry count");
    }
    GridField out(s, 0.0f);
    for (size_t r = 0; r < n_rows; ++r) {
        const uint64_t begin = sparse.row_ptr[r];
        const uint64_t end = sparse.row_ptr[r + 1];
        if (end < begin || end > sparse.values.size()) {
            throw ShapeError("densify: row_ptr not nondecreasing at row " + std::to_string(r));
        }
        uint32_t prev_col = 0;
        for (uint64_t e = begin; e < end; ++e) {
            const uint32_t c = sparse.col_idx[e];
            if (c >= static_cast<uint32_t>(s.lons)) {
                throw ShapeError("densify: column " + std::to_string(c) + " out of range at row " +
                                 std::to_string(r));
            }
            if (e > begin && c <= prev_col) {
                throw ShapeError("densify: columns not strictly increasing at row " +
                                 std::to_string(r));
            }
            prev_col = c;
            out.values[r * s.lons + c] = sparse.values[e];
        }
    }
    return out;
}

}  // namespace hiha
