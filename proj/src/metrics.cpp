#include "hiha/metrics.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

namespace hiha {

static void require_shapes(const GridField& a, const GridField& b, const char* what) {
    if (!(a.shape == b.shape)) {
        throw ShapeError(std::string(what) + ": shape mismatch " + a.shape.to_string() + " vs " +
                         b.shape.to_string());
    }
}

double rmse(const GridField& a, const GridField& b) {
    require_shapes(a, b, "rmse");
    double acc = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        const double d = static_cast<double>(a.values[i]) - static_cast<double>(b.values[i]);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.values.size()));
}

double normalized_rmse(const GridField& a, const GridField& b,
                       const NormalizationParams& norm) {
    const double raw = rmse(a, b);
    if (norm.degenerate()) return raw;
    return raw / norm.half_range();
}

double psnr(const GridField& a, const GridField& b) {
    require_shapes(a, b, "psnr");
    float lo = a.values[0], hi = a.values[0];
    for (float v : a.values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo < hi)) throw ShapeError("psnr: constant ground truth has no defined peak range");
    const double err = rmse(a, b);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 20.0 * std::log10((static_cast<double>(hi) - static_cast<double>(lo)) / err);
}

std::string EvalReport::to_text() const {
    auto num = [](double v) {
        if (std::isinf(v)) return std::string("inf");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.8g", v);
        return std::string(buf);
    };
    std::string text;
    text += "rmse=" + num(rmse) + "\n";
    text += "norm_rmse=" + num(normalized_rmse) + "\n";
    text += "psnr_db=" + num(psnr) + "\n";
    if (compression_ratio > 0.0) text += "ratio=" + num(compression_ratio) + "\n";
    nlohmann::json j;
    j["rmse"] = rmse;
    j["norm_rmse"] = normalized_rmse;
    if (std::isinf(psnr)) j["psnr_db"] = nullptr;  // sentinel: identical fields
    else j["psnr_db"] = psnr;
    if (compression_ratio > 0.0) j["ratio"] = compression_ratio;
    text += j.dump() + "\n";
    return text;
}

}  // namespace hiha
