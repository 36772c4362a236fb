#pragma once

#include <string>

#include "hiha/grid.hpp"

namespace hiha {

/// sqrt(mean((a-b)^2)) with 64-bit accumulation. Shapes must match.
double rmse(const GridField& a, const GridField& b);

/// RMSE measured in the normalized [-1,1] space: raw rmse divided by the
/// params' half range. Degenerate params (v_min == v_max) fall back to the
/// plain rmse.
double normalized_rmse(const GridField& a, const GridField& b,
                       const NormalizationParams& norm);

/// 20*log10(range(a)/rmse(a,b)) where a is ground truth. rmse of 0 reports
/// the +inf sentinel. A constant ground truth has no defined peak and is
/// rejected.
double psnr(const GridField& a, const GridField& b);

struct EvalReport {
    double rmse = 0.0;
    double normalized_rmse = 0.0;
    double psnr = 0.0;
    double compression_ratio = 0.0;  // 0 when no archive was given
    /// key=value lines followed by a JSON block.
    std::string to_text() const;
};

}  // namespace hiha
