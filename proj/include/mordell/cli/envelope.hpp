#pragma once

// JSON envelope shared by every CLI command:
//   {"command": ..., "exact": bool, "inputs": {...}, "result": {...}}
// nlohmann::json objects keep keys sorted, and rationals are always rendered
// as canonical "p/q" strings, so serialization is deterministic.

#include <json.hpp>

#include <string>
#include <vector>

#include "mordell/arith.hpp"
#include "mordell/curve.hpp"
#include "mordell/heights.hpp"
#include "mordell/point.hpp"

namespace mordell::cli {

using json = nlohmann::json;

struct Envelope {
    std::string command;
    json inputs = json::object();
    json result = json::object();
    bool exact = true;

    json to_json() const { return {{"command", command}, {"inputs", inputs}, {"result", result}, {"exact", exact}}; }

    static Envelope from_json(json const& j) {
        for (char const* key : {"command", "inputs", "result", "exact"})
            if (!j.contains(key)) throw ParseError(std::string("envelope is missing '") + key + "'");
        return {j.at("command").get<std::string>(), j.at("inputs"), j.at("result"), j.at("exact").get<bool>()};
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }

    friend bool operator==(Envelope const&, Envelope const&) = default;
};

inline json rational_to_json(Rational const& r) { return to_string(r); }

inline Rational rational_from_json(json const& j) { return parse_rational(j.get<std::string>()); }

/// "O" or ["x", "y"].
inline json point_to_json(Point const& p) {
    if (p.is_infinity()) return "O";
    return json::array({to_string(p.x()), to_string(p.y())});
}

inline Point point_from_json(json const& j) {
    if (j.is_string() && j.get<std::string>() == "O") return Point::infinity();
    if (!j.is_array() || j.size() != 2) throw ParseError("point JSON must be \"O\" or [x, y]");
    return Point::affine(rational_from_json(j[0]), rational_from_json(j[1]));
}

inline json points_to_json(std::vector<Point> const& points) {
    json arr = json::array();
    for (auto const& p : points) arr.push_back(point_to_json(p));
    return arr;
}

inline json height_to_json(HeightValue const& h) { return {{"H", to_string(h.magnitude)}, {"h", h.log_value}}; }

inline json curve_to_json(ParsedCurve const& c) {
    if (c.is_short_input) return {{"A", to_string(c.curve.a4())}, {"B", to_string(c.curve.a6())}};
    return {{"a1", to_string(c.curve.a1())}, {"a2", to_string(c.curve.a2())}, {"a3", to_string(c.curve.a3())},
            {"a4", to_string(c.curve.a4())}, {"a6", to_string(c.curve.a6())}};
}

inline json integers_to_json(std::vector<Integer> const& v) {
    json arr = json::array();
    for (auto const& n : v) arr.push_back(to_string(n));
    return arr;
}

}  // namespace mordell::cli
