#include "hiha/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>

namespace hiha {

double base_frequency(double omega, int n_c) {
    if (!(omega > 0.0)) throw ConfigError("base_frequency: omega must be positive");
    if (n_c < 1) throw ConfigError("base_frequency: n_c must be >= 1");
    return omega * std::sqrt(6.0 / static_cast<double>(n_c));
}

BandThresholds BandThresholds::make(double omega, int n_c, FreqUnit unit) {
    BandThresholds t;
    t.omega = omega;
    t.n_c = n_c;
    t.base_freq = base_frequency(omega, n_c);
    t.freq_unit = unit;
    return t;
}

namespace {

// FFTW's planner is not thread-safe; plan creation/destruction is serialized.
std::mutex g_planner_mutex;

struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~PlanPair() {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

struct TransformLayout {
    bool level_transformed = false;
    bool lat_transformed = false;
    bool lon_transformed = false;
    std::vector<std::string> warnings;
};

TransformLayout plan_layout(const GridShape& s) {
    TransformLayout l;
    l.level_transformed = s.levels >= 4;
    l.lat_transformed = s.lats >= 2;
    l.lon_transformed = s.lons >= 2;
    if (!l.level_transformed) {
        l.warnings.push_back(s.levels == 1
                                 ? "level axis has extent 1; contributes 0 to rho"
                                 : "level axis extent < 4; transform is 2D per level");
    }
    if (!l.lat_transformed) l.warnings.push_back("lat axis has extent 1; contributes 0 to rho");
    if (!l.lon_transformed) l.warnings.push_back("lon axis has extent 1; contributes 0 to rho");
    return l;
}

PlanPair make_plans(const GridShape& s, const TransformLayout& l, fftw_complex* in,
                    fftw_complex* out) {
    // C-order strides: lon fastest.
    const int stride_lon = 1;
    const int stride_lat = s.lons;
    const int stride_level = s.lats * s.lons;

    std::vector<fftw_iodim> dims, howmany;
    auto add = [](std::vector<fftw_iodim>& v, int n, int stride) {
        v.push_back(fftw_iodim{n, stride, stride});
    };
    if (l.level_transformed) add(dims, s.levels, stride_level);
    else add(howmany, s.levels, stride_level);
    if (l.lat_transformed) add(dims, s.lats, stride_lat);
    else add(howmany, s.lats, stride_lat);
    if (l.lon_transformed) add(dims, s.lons, stride_lon);
    else add(howmany, s.lons, stride_lon);

    // FFTW_UNALIGNED keeps the plans valid for new-array execution on
    // std::vector storage of any alignment.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    p.forward = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(),
                                   static_cast<int>(howmany.size()), howmany.data(), in, out,
                                   FFTW_FORWARD, flags);
    p.backward = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(),
                                    static_cast<int>(howmany.size()), howmany.data(), in, out,
                                    FFTW_BACKWARD, flags);
    if (!p.forward || !p.backward) throw Error("fftw plan creation failed");
    return p;
}

/// Signed mode index after Nyquist folding: k -> k for k <= n/2, else k - n.
inline int fold(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

SpectralBands decompose(const GridField& field, const BandThresholds& thresholds) {
    field.validate();
    const GridShape s = field.shape;
    const size_t n = s.voxels();
    const TransformLayout layout = plan_layout(s);

    std::vector<std::complex<double>> buf(n), spectrum(n);
    auto* buf_c = reinterpret_cast<fftw_complex*>(buf.data());
    auto* spec_c = reinterpret_cast<fftw_complex*>(spectrum.data());
    PlanPair plans = make_plans(s, layout, buf_c, spec_c);

    for (size_t i = 0; i < n; ++i) buf[i] = field.values[i];
    fftw_execute_dft(plans.forward, buf_c, spec_c);

    // One masked spectrum per band; every mode goes to exactly one.
    std::vector<std::complex<double>> masked[3];
    for (auto& m : masked) m.assign(n, {0.0, 0.0});

    const double unit_scale =
        thresholds.freq_unit == FreqUnit::Angular ? 3.14159265358979323846 : 1.0;
    const double base = thresholds.base_freq;
    const double mid_hi = thresholds.mid_upper();

    size_t w = 0;
    for (int k = 0; k < s.levels; ++k) {
        const double mp = layout.level_transformed ? fold(k, s.levels) : 0;
        for (int i = 0; i < s.lats; ++i) {
            const double mt = layout.lat_transformed ? fold(i, s.lats) : 0;
            const double base_sq = mp * mp + mt * mt;
            for (int j = 0; j < s.lons; ++j, ++w) {
                const double mf = layout.lon_transformed ? fold(j, s.lons) : 0;
                const double rho = unit_scale * std::sqrt(base_sq + mf * mf);
                const int band = rho < base ? 0 : (rho < mid_hi ? 1 : 2);
                masked[band][w] = spectrum[w];
            }
        }
    }

    double norm = 1.0;
    if (layout.level_transformed) norm *= s.levels;
    if (layout.lat_transformed) norm *= s.lats;
    if (layout.lon_transformed) norm *= s.lons;
    const double inv_norm = 1.0 / norm;

    SpectralBands bands;
    bands.thresholds = thresholds;
    bands.warnings = layout.warnings;
    GridField* out[3] = {&bands.low, &bands.mid, &bands.high};
    for (int b = 0; b < 3; ++b) {
        auto* m_c = reinterpret_cast<fftw_complex*>(masked[b].data());
        fftw_execute_dft(plans.backward, m_c, buf_c);
        GridField& g = *out[b];
        g.shape = s;
        g.variable_name = field.variable_name;
        g.units = field.units;
        g.frame_index = field.frame_index;
        g.values.resize(n);
        for (size_t i = 0; i < n; ++i) {
            g.values[i] = static_cast<float>(buf[i].real() * inv_norm);
        }
    }
    return bands;
}

GridField recombine(const SpectralBands& bands) {
    if (!(bands.low.shape == bands.mid.shape && bands.mid.shape == bands.high.shape)) {
        throw ShapeError("recombine: band shapes disagree: low " + bands.low.shape.to_string() +
                         ", mid " + bands.mid.shape.to_string() + ", high " +
                         bands.high.shape.to_string());
    }
    GridField out = bands.low;
    for (size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = bands.low.values[i] + bands.mid.values[i] + bands.high.values[i];
    }
    return out;
}

double field_energy(const GridField& field) {
    double acc = 0.0;
    for (float v : field.values) acc += static_cast<double>(v) * static_cast<double>(v);
    return acc;
}

}  // namespace hiha
