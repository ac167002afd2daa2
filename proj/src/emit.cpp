#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cyclesight/errors.hpp"
#include "cyclesight/json_io.hpp"
#include "cyclesight/scene.hpp"

namespace cyclesight {

namespace {

constexpr int kSignificant = 9;
constexpr int kSchemaVersion = 1;

std::string css(const Rgb& c) {
    return "rgb(" + std::to_string(c.r) + "," + std::to_string(c.g) + "," + std::to_string(c.b) + ")";
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorCode::BadRequest, "scene json: " + what);
}

double get_number(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) schema_error(std::string("missing number '") + key + "'");
    return it->get<double>();
}

Json geometry_json(const Geometry& g) {
    Json j = std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, CircleGeom>) {
                return {{"cx", num(v.cx)}, {"cy", num(v.cy)}, {"r", num(v.r)}};
            } else if constexpr (std::is_same_v<T, SegmentGeom>) {
                return {{"x1", num(v.x1)}, {"y1", num(v.y1)}, {"x2", num(v.x2)}, {"y2", num(v.y2)}};
            } else if constexpr (std::is_same_v<T, PointGeom>) {
                return {{"x", num(v.x)}, {"y", num(v.y)}, {"at_infinity", v.at_infinity}};
            } else if constexpr (std::is_same_v<T, EllipseGeom>) {
                return {{"cx", num(v.cx)}, {"cy", num(v.cy)}, {"rx", num(v.rx)}, {"ry", num(v.ry)},
                        {"angle", num(v.angle)}};
            } else {
                return {{"x", num(v.x)}, {"y", num(v.y)}, {"dx", num(v.dx)}, {"dy", num(v.dy)},
                        {"size", num(v.size)}};
            }
        },
        g);
    j["kind"] = std::string(kind_name(g));
    return j;
}

Geometry geometry_from_json(const std::string& kind, const Json& g) {
    if (!g.is_object()) schema_error("geometry must be an object");
    if (auto k = g.find("kind"); k != g.end() && (!k->is_string() || k->get<std::string>() != kind))
        schema_error("geometry kind disagrees with primitive kind");
    if (kind == "circle") return CircleGeom{get_number(g, "cx"), get_number(g, "cy"), get_number(g, "r")};
    if (kind == "line")
        return SegmentGeom{get_number(g, "x1"), get_number(g, "y1"), get_number(g, "x2"), get_number(g, "y2")};
    if (kind == "point") {
        auto it = g.find("at_infinity");
        if (it == g.end() || !it->is_boolean()) schema_error("point needs boolean 'at_infinity'");
        return PointGeom{get_number(g, "x"), get_number(g, "y"), it->get<bool>()};
    }
    if (kind == "ellipse")
        return EllipseGeom{get_number(g, "cx"), get_number(g, "cy"), get_number(g, "rx"), get_number(g, "ry"),
                           get_number(g, "angle")};
    if (kind == "arrowhead")
        return ArrowGeom{get_number(g, "x"), get_number(g, "y"), get_number(g, "dx"), get_number(g, "dy"),
                         get_number(g, "size")};
    schema_error("unknown kind '" + kind + "'");
}

void svg_arrow(std::ostringstream& out, const ArrowGeom& a, const std::string& attrs) {
    // Filled triangle with its tip at (x, y).
    double half_angle = std::numbers::pi / 7.0;
    std::array<std::pair<double, double>, 2> back;
    for (int s = 0; s < 2; ++s) {
        double t = s == 0 ? half_angle : -half_angle;
        double cs = std::cos(t), sn = std::sin(t);
        double ux = cs * a.dx - sn * a.dy;
        double uy = sn * a.dx + cs * a.dy;
        back[s] = {a.x - a.size * ux, a.y - a.size * uy};
    }
    out << "<path d=\"M" << format_number(a.x) << ',' << format_number(a.y) << " L"
        << format_number(back[0].first) << ',' << format_number(back[0].second) << " L"
        << format_number(back[1].first) << ',' << format_number(back[1].second) << " Z\"" << attrs << "/>\n";
}

}  // namespace

std::string format_number(double value) {
    if (!std::isfinite(value)) return value != value ? "nan" : (value > 0 ? "inf" : "-inf");
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, kSignificant);
    std::string s(buf.data(), res.ptr);
    if (s == "-0") s = "0";
    return s;
}

double quantize(double value) {
    if (!std::isfinite(value)) return value;
    std::string s = format_number(value);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

Scene quantized(const Scene& scene) {
    Scene out = scene;
    for (auto& p : out.primitives) {
        p.width = quantize(p.width);
        std::visit(
            [](auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, CircleGeom>) {
                    for (double* x : {&v.cx, &v.cy, &v.r}) *x = quantize(*x);
                } else if constexpr (std::is_same_v<T, SegmentGeom>) {
                    for (double* x : {&v.x1, &v.y1, &v.x2, &v.y2}) *x = quantize(*x);
                } else if constexpr (std::is_same_v<T, PointGeom>) {
                    for (double* x : {&v.x, &v.y}) *x = quantize(*x);
                } else if constexpr (std::is_same_v<T, EllipseGeom>) {
                    for (double* x : {&v.cx, &v.cy, &v.rx, &v.ry, &v.angle}) *x = quantize(*x);
                } else {
                    for (double* x : {&v.x, &v.y, &v.dx, &v.dy, &v.size}) *x = quantize(*x);
                }
            },
            p.geometry);
    }
    return out;
}

Json num(double value) {
    if (std::isnan(value)) return nullptr;
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    double q = quantize(value);
    return q == 0.0 ? 0.0 : q;
}

Json to_json(const Mat2& m) {
    return Json::array({num(m.a), num(m.b), num(m.c), num(m.d)});
}

Mat2 mat2_from_json(const Json& j) {
    auto bad = [] { throw Error(ErrorCode::BadRequest, "matrix must be [a, b, c, d] or [[a, b], [c, d]]"); };
    std::array<double, 4> v{};
    if (j.is_array() && j.size() == 4) {
        for (std::size_t i = 0; i < 4; ++i) {
            if (!j[i].is_number()) bad();
            v[i] = j[i].get<double>();
        }
    } else if (j.is_array() && j.size() == 2 && j[0].is_array() && j[1].is_array() && j[0].size() == 2 &&
               j[1].size() == 2) {
        for (std::size_t i = 0; i < 4; ++i) {
            const Json& x = j[i / 2][i % 2];
            if (!x.is_number()) bad();
            v[i] = x.get<double>();
        }
    } else {
        bad();
    }
    Mat2 m{v[0], v[1], v[2], v[3]};
    if (!m.finite()) throw Error(ErrorCode::BadRequest, "matrix entries must be finite");
    return m;
}

Json to_json(const Scene& scene) {
    Json prims = Json::array();
    for (const auto& p : scene.primitives) {
        prims.push_back({{"kind", std::string(kind_name(p.geometry))},
                         {"geometry", geometry_json(p.geometry)},
                         {"color", Json::array({p.color.r, p.color.g, p.color.b})},
                         {"width", num(p.width)},
                         {"layer", p.layer},
                         {"label", p.label}});
    }
    return {{"version", kSchemaVersion}, {"primitives", prims}};
}

Scene scene_from_json(const Json& j) {
    if (!j.is_object()) schema_error("top level must be an object");
    auto ver = j.find("version");
    if (ver == j.end() || !ver->is_number_integer() || ver->get<int>() != kSchemaVersion)
        schema_error("unsupported or missing version");
    auto prims = j.find("primitives");
    if (prims == j.end() || !prims->is_array()) schema_error("missing 'primitives' array");
    Scene scene;
    for (const auto& p : *prims) {
        if (!p.is_object()) schema_error("primitive must be an object");
        auto kind = p.find("kind");
        auto geom = p.find("geometry");
        auto color = p.find("color");
        auto layer = p.find("layer");
        auto label = p.find("label");
        if (kind == p.end() || !kind->is_string()) schema_error("primitive needs string 'kind'");
        if (geom == p.end()) schema_error("primitive needs 'geometry'");
        if (color == p.end() || !color->is_array() || color->size() != 3) schema_error("color must be [r, g, b]");
        Rgb rgb;
        int* channels[] = {&rgb.r, &rgb.g, &rgb.b};
        for (std::size_t i = 0; i < 3; ++i) {
            const Json& c = (*color)[i];
            if (!c.is_number_integer() || c.get<int>() < 0 || c.get<int>() > 255)
                schema_error("color channels must be integers in [0, 255]");
            *channels[i] = c.get<int>();
        }
        if (layer == p.end() || !layer->is_number_integer()) schema_error("primitive needs integer 'layer'");
        if (label == p.end() || !label->is_string()) schema_error("primitive needs string 'label'");
        scene.primitives.push_back({geometry_from_json(kind->get<std::string>(), *geom), rgb,
                                    get_number(p, "width"), layer->get<int>(), label->get<std::string>()});
    }
    return scene;
}

std::string canonical(const Json& j) {
    return j.dump() + "\n";
}

std::string emit_scene_json(const Scene& scene) {
    return canonical(to_json(scene));
}

Scene parse_scene_json(std::string_view text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) schema_error("not valid JSON");
    return scene_from_json(j);
}

std::string emit_svg(const Scene& scene, const Viewport& vp) {
    const std::string h = format_number(vp.half_extent);
    const std::string w = format_number(2.0 * vp.half_extent);
    const double px = vp.world_per_pixel();
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << vp.pixels << "\" height=\""
        << vp.pixels << "\" viewBox=\"-" << h << " -" << h << " " << w << " " << w << "\">\n"
        << "<rect x=\"-" << h << "\" y=\"-" << h << "\" width=\"" << w << "\" height=\"" << w << "\" fill=\""
        << css(palette::background) << "\"/>\n"
        << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\">\n";

    std::vector<const Primitive*> order;
    for (const auto& p : scene.primitives) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->layer < b->layer; });

    for (const Primitive* p : order) {
        const std::string color = css(p->color);
        const std::string stroke = " stroke=\"" + color + "\" stroke-width=\"" + format_number(p->width * px) +
                                   "\" class=\"" + escape_xml(p->label) + "\"";
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, CircleGeom>) {
                    out << "<circle cx=\"" << format_number(v.cx) << "\" cy=\"" << format_number(v.cy) << "\" r=\""
                        << format_number(v.r) << "\"" << stroke << "/>\n";
                } else if constexpr (std::is_same_v<T, SegmentGeom>) {
                    out << "<line x1=\"" << format_number(v.x1) << "\" y1=\"" << format_number(v.y1) << "\" x2=\""
                        << format_number(v.x2) << "\" y2=\"" << format_number(v.y2) << "\"" << stroke << "/>\n";
                } else if constexpr (std::is_same_v<T, PointGeom>) {
                    if (v.at_infinity) {
                        out << "<!-- " << escape_xml(p->label) << ": point at infinity -->\n";
                    } else {
                        out << "<circle cx=\"" << format_number(v.x) << "\" cy=\"" << format_number(v.y) << "\" r=\""
                            << format_number(3.0 * px) << "\" fill=\"" << color << "\" stroke=\"none\" class=\""
                            << escape_xml(p->label) << "\"/>\n";
                    }
                } else if constexpr (std::is_same_v<T, EllipseGeom>) {
                    out << "<ellipse cx=\"0\" cy=\"0\" rx=\"" << format_number(v.rx) << "\" ry=\""
                        << format_number(v.ry) << "\" transform=\"translate(" << format_number(v.cx) << ","
                        << format_number(v.cy) << ") rotate(" << format_number(v.angle * 180.0 / std::numbers::pi)
                        << ")\"" << stroke << "/>\n";
                } else {
                    svg_arrow(out, v, " fill=\"" + color + "\" stroke=\"none\" class=\"" + escape_xml(p->label) + "\"");
                }
            },
            p->geometry);
    }
    out << "</g>\n</svg>\n";
    return out.str();
}

}  // namespace cyclesight
