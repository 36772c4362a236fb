#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hiha/grid.hpp"

namespace hiha {

/// One superposed harmonic: a * sin(2*pi*(m.X/n) + phase) where m are integer
/// FFT mode indices per (level, lat, lon) axis. Keeping frequencies on the
/// mode lattice makes band membership exactly controllable.
struct Harmonic {
    double amplitude = 0.0;
    std::array<int, 3> mode{0, 0, 0};
    double phase = 0.0;
};

/// Single-voxel spike standing in for a localized extreme event.
struct Singularity {
    std::array<int, 3> voxel{0, 0, 0};
    double magnitude = 0.0;
};

struct HarmonicSpec {
    std::vector<Harmonic> harmonics;
    std::vector<Singularity> singularities;
    double constant_offset = 0.0;
    uint64_t seed = 0;

    /// Draws `count` spike positions uniformly; magnitude defaults to
    /// 10x the harmonic-sum standard deviation when `magnitude` is 0.
    void add_random_singularities(const GridShape& shape, int count, double magnitude = 0.0);

    std::string to_json() const;
    static HarmonicSpec from_json(const std::string& text);
};

/// Y = sum_i a_i sin(2*pi*(m_i . idx / n) + beta_i) + sum spikes + C.
/// Rejects modes beyond the grid Nyquist.
GridField gen_field(const GridShape& shape, const HarmonicSpec& spec);

struct FrameSeries {
    std::vector<GridField> frames;
    GridShape shape;
};

/// Frame t uses phases beta_i + t*drift_i; spike positions are resampled per
/// frame (high-band churn), magnitudes kept.
FrameSeries gen_series(const GridShape& shape, const HarmonicSpec& spec, int n_frames,
                       const std::vector<double>& drift);

}  // namespace hiha
