#include "halfspace/grid_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace halfspace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_or_throw(const std::string& path, std::ios::openmode mode) {
    std::ofstream out(path, mode);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    return out;
}

} // namespace

void write_grid_csv(const GridField& field, const std::string& path) {
    std::ofstream out = open_or_throw(path, std::ios::out);
    out << "x1,x2,x3,value\n";
    const int n = field.grid.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Point3 p = field.grid.node(i, j, k);
                out << format_double(p.x1) << ',' << format_double(p.x2) << ','
                    << format_double(p.x3) << ',' << format_double(field.at(i, j, k))
                    << '\n';
            }
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

void write_grid_binary(const GridField& field, const std::string& path_prefix) {
    {
        std::ofstream out = open_or_throw(path_prefix + ".bin", std::ios::binary);
        out.write(reinterpret_cast<const char*>(field.values.data()),
                  static_cast<std::streamsize>(field.values.size() * sizeof(double)));
        if (!out)
            throw std::runtime_error("write failed: " + path_prefix + ".bin");
    }

    nlohmann::ordered_json sidecar;
    sidecar["schema_version"] = 1;
    sidecar["dtype"] = "float64";
    sidecar["layout"] = "row-major";
    sidecar["axes"] = {"x1", "x2", "x3"}; // x3 varies fastest
    sidecar["shape"] = {field.grid.n, field.grid.n, field.grid.n};
    sidecar["half_width"] = field.grid.half_width;
    sidecar["spacing"] = field.grid.spacing();

    std::ofstream out = open_or_throw(path_prefix + ".json", std::ios::out);
    out << sidecar.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path_prefix + ".json");
}

} // namespace halfspace
