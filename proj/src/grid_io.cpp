#include "hiha/grid_io.hpp"

#include <fstream>

#include <json.hpp>

namespace hiha {

using nlohmann::json;

static void write_raw(const std::string& path, const std::vector<float>& values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
    if (!out) throw Error("short write to " + path);
}

static std::vector<float> read_raw(const std::string& path, size_t expected_voxels) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw Error("cannot open " + path);
    const auto bytes = static_cast<size_t>(in.tellg());
    if (bytes != expected_voxels * sizeof(float)) {
        throw Error(path + ": expected " + std::to_string(expected_voxels * sizeof(float)) +
                    " bytes per sidecar shape, found " + std::to_string(bytes));
    }
    std::vector<float> values(expected_voxels);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw Error("short read from " + path);
    return values;
}

static json read_sidecar(const std::string& path) {
    std::ifstream in(path + ".json");
    if (!in) throw Error("missing sidecar " + path + ".json");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("bad sidecar " + path + ".json: " + e.what());
    }
    return j;
}

void write_grd(const std::string& path, const GridField& field) {
    field.validate();
    write_raw(path, field.values);
    json j = {
        {"shape", {field.shape.levels, field.shape.lats, field.shape.lons}},
        {"variable_name", field.variable_name},
        {"units", field.units},
        {"frame_index", field.frame_index},
    };
    std::ofstream out(path + ".json");
    if (!out) throw Error("cannot open " + path + ".json for writing");
    out << j.dump(2) << "\n";
}

GridField read_grd(const std::string& path) {
    const json j = read_sidecar(path);
    GridField field;
    try {
        const auto& s = j.at("shape");
        field.shape = {s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()};
        field.variable_name = j.value("variable_name", "");
        field.units = j.value("units", "");
        field.frame_index = j.value("frame_index", 0);
    } catch (const json::exception& e) {
        throw Error("bad sidecar " + path + ".json: " + e.what());
    }
    if (field.shape.levels < 1 || field.shape.lats < 1 || field.shape.lons < 1) {
        throw Error(path + ": sidecar declares nonpositive extent " + field.shape.to_string());
    }
    field.values = read_raw(path, field.shape.voxels());
    field.validate();
    return field;
}

void write_climatology(const std::string& path, const Climatology& clim) {
    GridField as_field;
    as_field.shape = clim.shape;
    as_field.values = clim.values;
    as_field.variable_name = clim.epoch_label;
    write_grd(path, as_field);
}

Climatology read_climatology(const std::string& path) {
    GridField f = read_grd(path);
    return Climatology{f.shape, std::move(f.values), f.variable_name};
}

}  // namespace hiha
