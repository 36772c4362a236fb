#include "hiha/synthgen.hpp"

#include <cmath>

#include <json.hpp>

#include "hiha/util.hpp"

namespace hiha {

using nlohmann::json;

namespace {

void check_mode(const GridShape& s, const std::array<int, 3>& m) {
    const int nyq[3] = {s.levels / 2, s.lats / 2, s.lons / 2};
    const char* names[3] = {"level", "lat", "lon"};
    for (int a = 0; a < 3; ++a) {
        if (std::abs(m[a]) > nyq[a]) {
            throw ShapeError(std::string("harmonic mode ") + std::to_string(m[a]) +
                             " exceeds Nyquist " + std::to_string(nyq[a]) + " on the " +
                             names[a] + " axis");
        }
    }
}

double harmonic_std(const std::vector<Harmonic>& hs) {
    double var = 0.0;
    for (const auto& h : hs) {
        if (h.mode[0] == 0 && h.mode[1] == 0 && h.mode[2] == 0) continue;  // pure phase offset
        var += 0.5 * h.amplitude * h.amplitude;
    }
    return std::sqrt(var);
}

}  // namespace

void HarmonicSpec::add_random_singularities(const GridShape& shape, int count,
                                            double magnitude) {
    Rng rng(derive_seed(seed, 0x51affe11ull));
    double mag = magnitude;
    if (mag == 0.0) mag = 10.0 * harmonic_std(harmonics);
    for (int i = 0; i < count; ++i) {
        Singularity s;
        s.voxel = {static_cast<int>(rng.next_below(shape.levels)),
                   static_cast<int>(rng.next_below(shape.lats)),
                   static_cast<int>(rng.next_below(shape.lons))};
        s.magnitude = (i % 2 == 0) ? mag : -mag;
        singularities.push_back(s);
    }
}

GridField gen_field(const GridShape& shape, const HarmonicSpec& spec) {
    if (shape.levels < 1 || shape.lats < 1 || shape.lons < 1) {
        throw ShapeError("gen_field: nonpositive extent in " + shape.to_string());
    }
    for (const auto& h : spec.harmonics) check_mode(shape, h.mode);

    GridField field(shape, static_cast<float>(spec.constant_offset));
    field.variable_name = "synthetic";
    field.units = "1";

    const double two_pi = 2.0 * 3.14159265358979323846;
    for (const auto& h : spec.harmonics) {
        // Per-axis phase increments; evaluated as one lattice mode so the
        // harmonic occupies exactly +/-m in FFT space.
        const double wl = two_pi * h.mode[0] / shape.levels;
        const double wt = two_pi * h.mode[1] / shape.lats;
        const double wf = two_pi * h.mode[2] / shape.lons;
        size_t w = 0;
        for (int k = 0; k < shape.levels; ++k) {
            for (int i = 0; i < shape.lats; ++i) {
                const double base = wl * k + wt * i + h.phase;
                for (int j = 0; j < shape.lons; ++j, ++w) {
                    field.values[w] += static_cast<float>(h.amplitude * std::sin(base + wf * j));
                }
            }
        }
    }
    for (const auto& s : spec.singularities) {
        if (s.voxel[0] < 0 || s.voxel[0] >= shape.levels || s.voxel[1] < 0 ||
            s.voxel[1] >= shape.lats || s.voxel[2] < 0 || s.voxel[2] >= shape.lons) {
            throw ShapeError("singularity voxel out of grid bounds");
        }
        field.at(s.voxel[0], s.voxel[1], s.voxel[2]) += static_cast<float>(s.magnitude);
    }
    return field;
}

FrameSeries gen_series(const GridShape& shape, const HarmonicSpec& spec, int n_frames,
                       const std::vector<double>& drift) {
    if (n_frames < 1) throw ConfigError("gen_series: need at least one frame");
    FrameSeries series;
    series.shape = shape;
    series.frames.reserve(n_frames);
    for (int t = 0; t < n_frames; ++t) {
        HarmonicSpec frame_spec = spec;
        for (size_t i = 0; i < frame_spec.harmonics.size(); ++i) {
            const double d = i < drift.size() ? drift[i] : (drift.empty() ? 0.0 : drift.back());
            frame_spec.harmonics[i].phase += t * d;
        }
        // Re-seed spike placement per frame so the high band churns.
        if (!frame_spec.singularities.empty() && t > 0) {
            std::vector<double> mags;
            for (const auto& s : frame_spec.singularities) mags.push_back(s.magnitude);
            frame_spec.singularities.clear();
            frame_spec.seed = derive_seed(spec.seed, 0xf00d0000ull + static_cast<uint64_t>(t));
            Rng rng(derive_seed(frame_spec.seed, 0x51affe11ull));
            for (double m : mags) {
                Singularity s;
                s.voxel = {static_cast<int>(rng.next_below(shape.levels)),
                           static_cast<int>(rng.next_below(shape.lats)),
                           static_cast<int>(rng.next_below(shape.lons))};
                s.magnitude = m;
                frame_spec.singularities.push_back(s);
            }
        }
        GridField f = gen_field(shape, frame_spec);
        f.frame_index = t;
        series.frames.push_back(std::move(f));
    }
    return series;
}

std::string HarmonicSpec::to_json() const {
    json j;
    j["seed"] = seed;
    j["constant_offset"] = constant_offset;
    j["harmonics"] = json::array();
    for (const auto& h : harmonics) {
        j["harmonics"].push_back(
            {{"amplitude", h.amplitude}, {"mode", h.mode}, {"phase", h.phase}});
    }
    j["singularities"] = json::array();
    for (const auto& s : singularities) {
        j["singularities"].push_back({{"voxel", s.voxel}, {"magnitude", s.magnitude}});
    }
    return j.dump(2);
}

HarmonicSpec HarmonicSpec::from_json(const std::string& text) {
    HarmonicSpec spec;
    json j;
    try {
        j = json::parse(text);
        spec.seed = j.value("seed", 0ull);
        spec.constant_offset = j.value("constant_offset", 0.0);
        for (const auto& h : j.value("harmonics", json::array())) {
            Harmonic out;
            out.amplitude = h.at("amplitude").get<double>();
            const auto& m = h.at("mode");
            out.mode = {m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>()};
            out.phase = h.value("phase", 0.0);
            spec.harmonics.push_back(out);
        }
        for (const auto& s : j.value("singularities", json::array())) {
            Singularity out;
            const auto& v = s.at("voxel");
            out.voxel = {v.at(0).get<int>(), v.at(1).get<int>(), v.at(2).get<int>()};
            out.magnitude = s.at("magnitude").get<double>();
            spec.singularities.push_back(out);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad harmonic spec JSON: ") + e.what());
    }
    return spec;
}

}  // namespace hiha
