#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "halfspace/geometry.hpp"
#include "halfspace/grid_io.hpp"

namespace halfspace::cli {

using Json = nlohmann::ordered_json;

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNonConvergence = 3;

inline std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size() || !std::isfinite(v))
            throw std::invalid_argument("malformed number in list: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty number list");
    return out;
}

inline Point3 parse_point(const std::string& text) {
    const auto v = parse_doubles(text);
    if (v.size() != 3)
        throw std::invalid_argument("expected 3 comma-separated coordinates, got '" +
                                    text + "'");
    return {v[0], v[1], v[2]};
}

inline Json point_json(const Point3& p) { return Json::array({p.x1, p.x2, p.x3}); }
inline Json vec_json(const Vec3& v) { return Json::array({v.x1, v.x2, v.x3}); }

/// Write the artifact to --output (or stdout); nothing else ever goes to the
/// output stream.
inline void emit_text(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot open output file: " + output_path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + output_path);
}

inline void emit_json(const Json& doc, const std::string& output_path) {
    emit_text(doc.dump(2) + "\n", output_path);
}

/// Load a JSON config file and reject keys outside the command's schema.
inline Json load_config(const std::string& path,
                        const std::vector<std::string>& allowed_keys) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw std::invalid_argument("config root must be an object");
    for (const auto& [key, value] : cfg.items()) {
        bool ok = false;
        for (const auto& k : allowed_keys) ok = ok || k == key;
        if (!ok)
            throw std::invalid_argument("config key not in this command's schema: '" +
                                        key + "'");
    }
    return cfg;
}

} // namespace halfspace::cli
