#include "ob/io.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace ob {

Polygon load_polygon_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open polygon file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad polygon JSON in " + path + ": " + e.what());
    }
    if (!j.is_array()) throw ValidationError("polygon JSON must be an array of [x, y] pairs");
    std::vector<Vec2> pts;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw ValidationError("polygon JSON entries must be [x, y] number pairs");
        pts.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    return validate_polygon(std::move(pts));
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(probe, "%lf", &back);
        if (back == v) return probe;
    }
    return buf;
}

} // namespace ob
