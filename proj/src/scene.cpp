#include "cyclesight/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "cyclesight/errors.hpp"

namespace cyclesight {

namespace {

constexpr double kArrowFraction = 0.06;  // arrowhead size relative to the half extent

Vec2 rotate(Vec2 v, double angle) {
    double cs = std::cos(angle);
    double sn = std::sin(angle);
    return {cs * v.x - sn * v.y, sn * v.x + cs * v.y};
}

// Liang-Barsky clip of the line through `origin` along unit `dir`.
std::optional<std::pair<Vec2, Vec2>> clip_line(Vec2 origin, Vec2 dir, double half) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    auto slab = [&](double o, double d) {
        if (std::abs(d) < 1e-15) return std::abs(o) <= half;
        double t1 = (-half - o) / d;
        double t2 = (half - o) / d;
        if (t1 > t2) std::swap(t1, t2);
        lo = std::max(lo, t1);
        hi = std::min(hi, t2);
        return lo <= hi;
    };
    if (!slab(origin.x, dir.x) || !slab(origin.y, dir.y)) return std::nullopt;
    if (!(hi > lo)) return std::nullopt;
    return std::make_pair(origin + lo * dir, origin + hi * dir);
}

struct Anchor {
    Vec2 at;
    Vec2 tangent;
};

class Builder {
public:
    Builder(const Viewport& vp, const Tolerances& tol) : vp_(vp), tol_(tol) {}

    void add(Geometry g, Rgb color, double width, std::string label) {
        scene_.primitives.push_back({std::move(g), color, width, layer_, std::move(label)});
    }
    void next_layer() { ++layer_; }
    Scene take() { return std::move(scene_); }

    // Adds the cycle and returns where an arrowhead can sit on it.
    std::optional<Anchor> add_cycle(const LiePoint& p, Rgb color, double width, const std::string& label) {
        OrientedCycle cycle = lie_to_cycle(p, tol_);
        if (std::holds_alternative<PointAtInfinity>(cycle)) {
            add(PointGeom{0.0, 0.0, true}, color, width, label);
            return std::nullopt;
        }
        if (auto* pt = std::get_if<PointCycle>(&cycle)) {
            add(PointGeom{pt->center.x, pt->center.y, false}, color, width, label);
            return std::nullopt;
        }
        if (auto* c = std::get_if<Circle>(&cycle)) {
            add(CircleGeom{c->center.x, c->center.y, c->radius}, color, width, label);
            Vec2 top{c->center.x, c->center.y + c->radius};
            return Anchor{top, oriented_tangent(cycle, top)};
        }
        const auto& line = std::get<Line>(cycle);
        double len = line.normal.norm();
        Vec2 n{line.normal.x / len, line.normal.y / len};
        Vec2 dir = oriented_tangent(cycle, {});
        auto seg = clip_line((line.offset / len) * n, dir, vp_.half_extent);
        if (!seg) return std::nullopt;
        auto [p1, p2] = *seg;
        add(SegmentGeom{p1.x, p1.y, p2.x, p2.y}, color, width, label);
        // Highest end of the visible segment, pulled 20% back inside.
        bool second_higher = p2.y > p1.y || (p2.y == p1.y && p2.x > p1.x);
        Vec2 hi = second_higher ? p2 : p1;
        Vec2 lo = second_higher ? p1 : p2;
        return Anchor{lo + 0.8 * (hi - lo), dir};
    }

    void add_arrow(const Anchor& a, Vec2 direction, Rgb color, double width, std::string label) {
        add(ArrowGeom{a.at.x, a.at.y, direction.x, direction.y, kArrowFraction * vp_.half_extent},
            color, width, std::move(label));
    }

    void add_figure(const Mat2& m, Model model, Rgb color, double width, const std::string& tag) {
        MatrixFigure fig = figure_of(m, model, tol_);
        if (auto* pair = std::get_if<CyclePair>(&fig)) {
            std::string suffix = pair->coincident ? ":coincident" : "";
            for (auto [lie, part] : {std::pair{pair->cycle, "C"}, std::pair{pair->partner, "partner"}}) {
                std::string label = tag + "." + part + suffix;
                if (auto anchor = add_cycle(lie, color, width, label))
                    add_arrow(*anchor, anchor->tangent, color, width, label + ".arrow");
            }
            return;
        }
        const auto& tl = std::get<ThetaLine>(fig);
        std::string label = tag + ".L";
        if (auto anchor = add_cycle(tl.line, color, width, label)) {
            double approach = 0.5 * std::numbers::pi * (1.0 + tl.theta);
            add_arrow(*anchor, rotate(anchor->tangent, approach), color, width, label + ".arrow+");
            add_arrow(*anchor, rotate(anchor->tangent, -approach), color, width, label + ".arrow-");
        }
    }

private:
    Viewport vp_;
    Tolerances tol_;
    Scene scene_;
    int layer_ = 0;
};

std::string iterate_tag(std::size_t k) {
    return "iter" + std::to_string(k);
}

}  // namespace

Rgb fade_color(std::size_t k, std::size_t n) {
    double t = n <= 1 ? 0.0 : static_cast<double>(k - 1) / static_cast<double>(n - 1);
    t = std::clamp(t, 0.0, 1.0);
    auto lerp = [t](int from, int to) {
        return static_cast<int>(std::lround(from + t * (to - from)));
    };
    return {lerp(palette::first_iterate.r, palette::white.r), lerp(palette::first_iterate.g, palette::white.g),
            lerp(palette::first_iterate.b, palette::white.b)};
}

std::string_view kind_name(const Geometry& g) {
    static constexpr std::string_view names[] = {"circle", "line", "point", "ellipse", "arrowhead"};
    return names[g.index()];
}

Ellipse ellipse_of(const Mat2& m, const Tolerances& tol) {
    double scale = m.max_abs();
    double slack = tol.psd * scale;
    if (std::abs(m.b - m.c) > slack)
        throw Error(ErrorCode::NotPSD, "ellipse_of: matrix is not symmetric: " + to_string(m));
    double off = 0.5 * (m.b + m.c);
    double mean = 0.5 * (m.a + m.d);
    double radius = std::hypot(0.5 * (m.a - m.d), off);
    double small = mean - radius;
    if (small < -slack)
        throw Error(ErrorCode::NotPSD, "ellipse_of: matrix has a negative eigenvalue: " + to_string(m));

    Ellipse e;
    e.semi_major = std::max(mean + radius, 0.0);
    e.semi_minor = std::max(small, 0.0);
    e.angle = radius > 0.0 ? 0.5 * std::atan2(2.0 * off, m.a - m.d) : 0.0;
    if (e.angle <= -0.5 * std::numbers::pi) e.angle += std::numbers::pi;
    return e;
}

Scene scene_v1(const std::vector<Mat2>& matrices, V1Mode mode, const Tolerances& tol) {
    Scene scene;
    const std::size_t n = matrices.empty() ? 0 : matrices.size() - 1;
    for (std::size_t k = 0; k < matrices.size(); ++k) {
        Ellipse e;
        try {
            e = ellipse_of(matrices[k], tol);
        } catch (const Error& err) {
            throw Error(err.code(), "matrix " + std::to_string(k) + ": " + err.what());
        }
        Rgb color;
        std::string label;
        if (mode == V1Mode::Compare) {
            static constexpr Rgb colors[] = {palette::v1_input, palette::v1_lr, palette::v1_qr};
            static const char* names[] = {"input", "lr", "qr"};
            color = colors[std::min<std::size_t>(k, 2)];
            label = k < 3 ? names[k] : "extra" + std::to_string(k);
        } else {
            color = k == 0 ? palette::v1_input : fade_color(k, n);
            label = k == 0 ? "input" : iterate_tag(k);
        }
        scene.primitives.push_back({EllipseGeom{0.0, 0.0, e.semi_major, e.semi_minor, e.angle}, color,
                                    k == 0 ? 2.5 : 1.5, static_cast<int>(k), label});
    }
    if (mode == V1Mode::Fade) {
        // Input on top: whitest iterate at the bottom, input last.
        std::reverse(scene.primitives.begin(), scene.primitives.end());
        for (std::size_t i = 0; i < scene.primitives.size(); ++i) scene.primitives[i].layer = static_cast<int>(i);
    }
    return scene;
}

Scene scene_v2(const std::vector<Mat2>& trajectory, Model model, const Viewport& vp, const Tolerances& tol) {
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        if (trajectory[k].is_zero())
            throw Error(ErrorCode::ZeroMatrix, "scene_v2: iterate " + std::to_string(k) + " is the zero matrix");
    }

    Builder b(vp, tol);
    LiePoint base = base_cycle(model);
    if (model == Model::UnitDisk) {
        b.add(CircleGeom{0.0, 0.0, 1.0}, palette::base_blue, 1.0, "base");
    } else {
        b.add_cycle(base, palette::base_blue, 1.0, "base");
    }

    const std::size_t n = trajectory.empty() ? 0 : trajectory.size() - 1;
    for (std::size_t k = n; k >= 1; --k) {
        b.next_layer();
        b.add_figure(trajectory[k], model, fade_color(k, n), 1.5, iterate_tag(k));
    }
    if (!trajectory.empty()) {
        b.next_layer();
        b.add_figure(trajectory[0], model, palette::input_red, 2.5, "input");
    }
    return b.take();
}

}  // namespace cyclesight
