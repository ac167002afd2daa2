#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cyclesight/errors.hpp"
#include "cyclesight/json_io.hpp"
#include "cyclesight/scene.hpp"
#include "oracles.hpp"

using namespace cyclesight;
using std::numbers::pi;

namespace {

const Primitive* find(const Scene& s, std::string_view label) {
    for (const auto& p : s.primitives)
        if (p.label == label) return &p;
    return nullptr;
}

std::size_t count_prefix(const Scene& s, std::string_view prefix) {
    return std::count_if(s.primitives.begin(), s.primitives.end(),
                         [&](const Primitive& p) { return p.label.starts_with(prefix); });
}

Scene random_scene(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-5, 5);
    std::uniform_int_distribution<int> c(0, 255), kind(0, 4), layer(0, 9);
    Scene s;
    int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < n; ++i) {
        Geometry g;
        switch (kind(rng)) {
            case 0: g = CircleGeom{u(rng), u(rng), std::abs(u(rng))}; break;
            case 1: g = SegmentGeom{u(rng), u(rng), u(rng), u(rng)}; break;
            case 2: g = PointGeom{u(rng), u(rng), i % 5 == 0}; break;
            case 3: g = EllipseGeom{u(rng), u(rng), std::abs(u(rng)), std::abs(u(rng)), u(rng) / 4}; break;
            default: g = ArrowGeom{u(rng), u(rng), 0.6, -0.8, 0.18};
        }
        s.primitives.push_back({g, Rgb{c(rng), c(rng), c(rng)}, std::abs(u(rng)), layer(rng), "p" + std::to_string(i)});
    }
    return s;
}

}  // namespace

TEST(EllipseOf, Examples) {
    Ellipse e = ellipse_of(Mat2::identity());
    EXPECT_DOUBLE_EQ(e.semi_major, 1.0);
    EXPECT_DOUBLE_EQ(e.semi_minor, 1.0);
    e = ellipse_of(Mat2::diag(1, 3));
    EXPECT_DOUBLE_EQ(e.semi_major, 3.0);
    EXPECT_DOUBLE_EQ(e.semi_minor, 1.0);
    EXPECT_NEAR(std::abs(e.angle), pi / 2, 1e-15);
    e = ellipse_of({1, 1, 1, 1});
    EXPECT_NEAR(e.semi_major, 2.0, 1e-15);
    EXPECT_NEAR(e.semi_minor, 0.0, 1e-15);
    EXPECT_NEAR(e.angle, pi / 4, 1e-15);
    EXPECT_THROW(ellipse_of(Mat2::diag(1, -1)), Error);
}

TEST(EllipseOf, ImageOfUnitCircleLiesOnEllipse) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = u(rng);
        // A^T A is symmetric PSD.
        double c = u(rng), d = u(rng);
        Mat2 m{a * a + c * c, a * b + c * d, a * b + c * d, b * b + d * d};
        Ellipse e = ellipse_of(m);
        if (e.semi_minor < 1e-3) continue;
        for (int k = 0; k < 16; ++k) {
            double t = 2 * pi * k / 16;
            Vec2 p = m.apply({std::cos(t), std::sin(t)});
            double x = std::cos(e.angle) * p.x + std::sin(e.angle) * p.y;
            double y = -std::sin(e.angle) * p.x + std::cos(e.angle) * p.y;
            EXPECT_NEAR(x * x / (e.semi_major * e.semi_major) + y * y / (e.semi_minor * e.semi_minor), 1.0, 1e-9);
        }
    }
}

TEST(FadeColor, MonotoneTowardWhite) {
    EXPECT_EQ(fade_color(1, 10), palette::first_iterate);
    EXPECT_EQ(fade_color(10, 10), palette::white);
    for (std::size_t n : {2u, 5u, 30u, 60u})
        for (std::size_t k = 1; k < n; ++k) EXPECT_LE(fade_color(k, n).lightness(), fade_color(k + 1, n).lightness());
}

TEST(SceneV1, CompareColours) {
    Scene s = scene_v1({Mat2::identity(), Mat2::diag(2, 1), Mat2::diag(1, 2)}, V1Mode::Compare);
    ASSERT_EQ(s.primitives.size(), 3u);
    EXPECT_EQ(s.primitives[0].color, palette::v1_input);
    EXPECT_EQ(s.primitives[1].color, palette::v1_lr);
    EXPECT_EQ(s.primitives[2].color, palette::v1_qr);
    for (const auto& p : s.primitives) EXPECT_EQ(kind_name(p.geometry), "ellipse");
}

TEST(SceneV1, FadeDrawsInputLast) {
    std::vector<Mat2> ms{Mat2::diag(3, 1), Mat2::diag(2, 1), Mat2::diag(1.5, 1), Mat2::diag(1.2, 1)};
    Scene s = scene_v1(ms, V1Mode::Fade);
    ASSERT_EQ(s.primitives.size(), 4u);
    EXPECT_EQ(s.primitives.back().label, "input");
    EXPECT_EQ(s.primitives.back().color, palette::v1_input);
    for (std::size_t i = 0; i + 1 < s.primitives.size(); ++i)
        EXPECT_LT(s.primitives[i].layer, s.primitives[i + 1].layer);
}

TEST(SceneV1, NamesOffendingIndex) {
    try {
        scene_v1({Mat2::identity(), Mat2::diag(1, -1)}, V1Mode::Compare);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPSD);
        EXPECT_NE(std::string(e.what()).find("matrix 1"), std::string::npos);
    }
}

TEST(SceneV2, IdentityExample) {
    Scene s = scene_v2({Mat2::identity()}, Model::UnitDisk);
    const Primitive* base = find(s, "base");
    ASSERT_NE(base, nullptr);
    EXPECT_EQ(base->color, palette::base_blue);
    EXPECT_EQ(std::get<CircleGeom>(base->geometry), (CircleGeom{0, 0, 1}));
    const Primitive* c = find(s, "input.C");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->color, palette::input_red);
    auto g = std::get<CircleGeom>(c->geometry);
    EXPECT_NEAR(g.r, 1.0, 1e-12);
    EXPECT_NEAR(std::hypot(g.cx, g.cy), 0.0, 1e-12);
    EXPECT_NE(find(s, "input.C.arrow"), nullptr);
    EXPECT_NE(find(s, "input.partner"), nullptr);
}

TEST(SceneV2, NegativeDeterminantExample) {
    Scene s = scene_v2({Mat2::diag(1, -1)}, Model::UnitDisk);
    const Primitive* line = find(s, "input.L");
    ASSERT_NE(line, nullptr);
    auto seg = std::get<SegmentGeom>(line->geometry);
    EXPECT_NEAR(seg.y1, 0.0, 1e-12);
    EXPECT_NEAR(seg.y2, 0.0, 1e-12);
    auto plus = std::get<ArrowGeom>(find(s, "input.L.arrow+")->geometry);
    auto minus = std::get<ArrowGeom>(find(s, "input.L.arrow-")->geometry);
    // theta = 0: both arrowheads perpendicular to the line, pointing opposite ways.
    EXPECT_NEAR(plus.dx * (seg.x2 - seg.x1), 0.0, 1e-12);
    EXPECT_NEAR(plus.dx * minus.dx + plus.dy * minus.dy, -1.0, 1e-12);
}

TEST(SceneV2, ArrowheadAngleEncodesTheta) {
    std::mt19937_64 rng(52);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        auto o = oracle::random_matrix(rng);
        Mat2 m{o.a, o.b, o.c, o.d};
        if (m.det() > -0.1) continue;
        Scene s = scene_v2({m}, Model::UnitDisk);
        const Primitive* plus = find(s, "input.L.arrow+");
        if (!plus) continue;
        ThetaLine t = neg_det_figure(m, Model::UnitDisk);
        auto a = std::get<ArrowGeom>(plus->geometry);
        Vec2 tangent = oriented_tangent(lie_to_cycle(t.line), {a.x, a.y});
        double cosine = (a.dx * tangent.x + a.dy * tangent.y) / tangent.norm();
        EXPECT_NEAR(std::acos(std::clamp(cosine, -1.0, 1.0)), pi / 2 * (1 + t.theta), 1e-9);
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(SceneV2, FadeOrderAndBaseKept) {
    Trajectory t = trajectory({2, 0, 1, 1}, 10, Algo::QR);
    Scene s = scene_v2(t.iterates, Model::UnitDisk);
    EXPECT_EQ(s.primitives.front().label, "base");
    EXPECT_EQ(s.primitives.front().layer, 0);
    for (int k = 1; k <= 10; ++k) EXPECT_GT(count_prefix(s, "iter" + std::to_string(k) + "."), 0u);
    // Input is drawn last; iterates whitest first.
    EXPECT_TRUE(s.primitives.back().label.starts_with("input"));
    int last_light = 3 * 255;
    for (const auto& p : s.primitives) {
        if (!p.label.starts_with("iter")) continue;
        EXPECT_LE(p.color.lightness(), last_light);
        last_light = p.color.lightness();
    }
    for (std::size_t i = 0; i + 1 < s.primitives.size(); ++i)
        EXPECT_LE(s.primitives[i].layer, s.primitives[i + 1].layer);
}

TEST(SceneV2, CoincidentPairFlagged) {
    Scene s = scene_v2({{1, 1, 1, 1}}, Model::UnitDisk);
    EXPECT_NE(find(s, "input.C:coincident"), nullptr);
    EXPECT_NE(find(s, "input.partner:coincident"), nullptr);
}

TEST(SceneV2, ZeroIterateRejected) {
    try {
        scene_v2({Mat2::identity(), Mat2{}}, Model::UnitDisk);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroMatrix);
        EXPECT_NE(std::string(e.what()).find("iterate 1"), std::string::npos);
    }
}

TEST(SceneV2, AxisModelPointCycle) {
    Scene s = scene_v2({{0, -1, 1, 0}}, Model::XAxis);
    auto p = std::get<PointGeom>(find(s, "input.C")->geometry);
    EXPECT_FALSE(p.at_infinity);
    EXPECT_NEAR(p.y, 1.0, 1e-12);
}

TEST(SceneJson, EmptyScene) {
    EXPECT_EQ(emit_scene_json(Scene{}), "{\"primitives\":[],\"version\":1}\n");
    EXPECT_EQ(parse_scene_json("{\"primitives\":[],\"version\":1}"), Scene{});
}

TEST(SceneJson, RejectsSchemaViolations) {
    EXPECT_THROW(parse_scene_json("{\"primitives\":[],\"version\":2}"), Error);
    EXPECT_THROW(parse_scene_json("{\"version\":1}"), Error);
    EXPECT_THROW(parse_scene_json("not json"), Error);
    EXPECT_THROW(parse_scene_json(R"({"version":1,"primitives":[{"kind":"blob","geometry":{},"color":[0,0,0],)"
                                  R"("width":1,"layer":0,"label":""}]})"),
                 Error);
}

TEST(SceneJson, RoundTripRandomScenes) {
    std::mt19937_64 rng(53);
    for (int i = 0; i < 300; ++i) {
        Scene s = random_scene(rng);
        std::string text = emit_scene_json(s);
        Scene back = parse_scene_json(text);
        EXPECT_EQ(back, quantized(s));
        EXPECT_EQ(emit_scene_json(back), text);
    }
}

TEST(SceneJson, RoundTripTrajectoryScene) {
    Trajectory t = trajectory({1.5, 0.3, 0.7, -0.5}, 30, Algo::QR, QrConvention::NegDetFlip);
    Scene s = scene_v2(t.iterates, Model::UnitDisk);
    EXPECT_EQ(parse_scene_json(emit_scene_json(s)), quantized(s));
}

TEST(Svg, DeterministicAndWellFormed) {
    Trajectory t = trajectory({2, 0, 1, 1}, 30, Algo::QR);
    Scene s = scene_v2(t.iterates, Model::UnitDisk);
    std::string a = emit_svg(s), b = emit_svg(scene_v2(t.iterates, Model::UnitDisk));
    EXPECT_EQ(a, b);
    EXPECT_TRUE(a.starts_with("<?xml"));
    EXPECT_NE(a.find("version=\"1.1\""), std::string::npos);
    EXPECT_NE(a.find("viewBox=\"-3 -3 6 6\""), std::string::npos);
    EXPECT_NE(a.find("<circle cx=\"0\" cy=\"0\" r=\"1\" stroke=\"rgb(30,50,150)\""), std::string::npos);
    EXPECT_TRUE(a.ends_with("</svg>\n"));
    EXPECT_EQ(a.find("-0\""), std::string::npos);
}

TEST(Svg, PointAtInfinityIsComment) {
    Scene s;
    s.primitives.push_back({PointGeom{0, 0, true}, palette::white, 1, 0, "far"});
    std::string svg = emit_svg(s);
    EXPECT_NE(svg.find("<!-- far: point at infinity -->"), std::string::npos);
}

TEST(Numbers, FormatAndQuantize) {
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(0.1 + 0.2), "0.3");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
    EXPECT_EQ(quantize(1.0 / 3.0), 0.333333333);
    EXPECT_EQ(quantize(quantize(2.0 / 3.0)), quantize(2.0 / 3.0));
}
