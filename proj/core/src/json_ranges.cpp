#include "json_ranges.h"

namespace shallow::detail {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorCode::kMalformedInput, what);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) malformed(std::string("expected a number for ") + what);
    return j.get<double>();
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) malformed("point must be [x, y]");
    const Point2 p{number(j[0], "x"), number(j[1], "y")};
    if (!is_finite(p)) malformed("non-finite coordinate");
    return p;
}

json line_json(const Line2& l) { return json::array({l.a(), l.b(), l.c()}); }

Line2 line_from(const json& j) {
    if (!j.is_array() || j.size() != 3) malformed("line must be [a, b, c]");
    try {
        return Line2::from_unit(number(j[0], "a"), number(j[1], "b"), number(j[2], "c"));
    } catch (const Error&) {
        malformed("degenerate line normal");
    }
}

json range_json(const Range& r) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, FatTriangle>) {
                return {{"type", "fat_triangle"},
                        {"vertices", {point_json(x.v[0]), point_json(x.v[1]), point_json(x.v[2])}},
                        {"alpha", x.alpha}};
            } else if constexpr (std::is_same_v<T, CircularCap>) {
                return {{"type", "cap"},
                        {"center", point_json(x.disk.center)},
                        {"radius", x.disk.radius},
                        {"chord", line_json(x.chord)}};
            } else if constexpr (std::is_same_v<T, Disk>) {
                return {{"type", "disk"}, {"center", point_json(x.circle.center)}, {"radius", x.circle.radius}};
            } else if constexpr (std::is_same_v<T, Halfplane>) {
                return {{"type", "halfplane"}, {"line", line_json(x.line)}};
            } else {
                json sides = json::array();
                for (const Line2& l : x.sides) sides.push_back(line_json(l));
                return {{"type", "clipped_wedge"},
                        {"sides", sides},
                        {"clip", {x.clip.xmin, x.clip.ymin, x.clip.xmax, x.clip.ymax}}};
            }
        },
        r);
}

Range range_from(const json& j) {
    const json& t = field(j, "type");
    if (!t.is_string()) malformed("type must be a string");
    const std::string type = t.get<std::string>();
    if (type == "fat_triangle") {
        const json& v = field(j, "vertices");
        if (!v.is_array() || v.size() != 3) malformed("fat_triangle needs three vertices");
        const double alpha = j.contains("alpha") ? number(j["alpha"], "alpha") : 0.0;
        return FatTriangle::make(point_from(v[0]), point_from(v[1]), point_from(v[2]), alpha);
    }
    if (type == "cap" || type == "disk") {
        const Point2 c = point_from(field(j, "center"));
        const double r = number(field(j, "radius"), "radius");
        if (!(r > 0.0) || !std::isfinite(r)) malformed("radius must be positive");
        if (type == "disk") return Disk{{c, r}};
        return CircularCap{{c, r}, line_from(field(j, "chord"))};
    }
    if (type == "halfplane") return Halfplane{line_from(field(j, "line"))};
    if (type == "clipped_wedge") {
        ClippedWedge w;
        for (const json& s : field(j, "sides")) w.sides.push_back(line_from(s));
        const json& c = field(j, "clip");
        if (!c.is_array() || c.size() != 4) malformed("clip must be [xmin, ymin, xmax, ymax]");
        w.clip = {number(c[0], "clip"), number(c[1], "clip"), number(c[2], "clip"), number(c[3], "clip")};
        return w;
    }
    malformed("unknown range type '" + type + "'");
}

json provenance_json(const Provenance& p) {
    return {{"kind", p.kind}, {"points", p.points}, {"thetas", p.thetas}};
}

Provenance provenance_from(const json& j) {
    Provenance p;
    p.kind = field(j, "kind").get<std::string>();
    p.points = field(j, "points").get<std::vector<std::uint32_t>>();
    p.thetas = field(j, "thetas").get<std::vector<double>>();
    return p;
}

}  // namespace shallow::detail
