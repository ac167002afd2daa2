#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cyclesight/liegeom.hpp"
#include "cyclesight/mat2.hpp"
#include "cyclesight/tolerances.hpp"

namespace cyclesight {

struct Rgb {
    int r = 0;
    int g = 0;
    int b = 0;
    int lightness() const { return r + g + b; }
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

namespace palette {
inline constexpr Rgb input_red{230, 20, 20};
inline constexpr Rgb first_iterate{120, 180, 255};
inline constexpr Rgb white{255, 255, 255};
inline constexpr Rgb base_blue{30, 50, 150};
inline constexpr Rgb background{16, 16, 24};
// v1 comparison mode
inline constexpr Rgb v1_input{0, 0, 255};
inline constexpr Rgb v1_lr{0, 100, 0};
inline constexpr Rgb v1_qr{255, 0, 0};
}  // namespace palette

/// Colour of iterate k (1-based) out of n: light blue at k = 1, white at k = n.
Rgb fade_color(std::size_t k, std::size_t n);

struct CircleGeom {
    double cx = 0.0, cy = 0.0, r = 0.0;
    friend bool operator==(const CircleGeom&, const CircleGeom&) = default;
};
/// A line clipped to the viewport, running in the direction of its orientation.
struct SegmentGeom {
    double x1 = 0.0, y1 = 0.0, x2 = 0.0, y2 = 0.0;
    friend bool operator==(const SegmentGeom&, const SegmentGeom&) = default;
};
struct PointGeom {
    double x = 0.0, y = 0.0;
    bool at_infinity = false;
    friend bool operator==(const PointGeom&, const PointGeom&) = default;
};
struct EllipseGeom {
    double cx = 0.0, cy = 0.0, rx = 0.0, ry = 0.0, angle = 0.0;
    friend bool operator==(const EllipseGeom&, const EllipseGeom&) = default;
};
/// Tip at (x, y) pointing along the unit vector (dx, dy).
struct ArrowGeom {
    double x = 0.0, y = 0.0, dx = 1.0, dy = 0.0, size = 0.1;
    friend bool operator==(const ArrowGeom&, const ArrowGeom&) = default;
};

using Geometry = std::variant<CircleGeom, SegmentGeom, PointGeom, EllipseGeom, ArrowGeom>;

/// "circle" | "line" | "point" | "ellipse" | "arrowhead"
std::string_view kind_name(const Geometry& g);

struct Primitive {
    Geometry geometry;
    Rgb color;
    double width = 1.0;  // stroke width in pixels
    int layer = 0;
    std::string label;
    friend bool operator==(const Primitive&, const Primitive&) = default;
};

struct Scene {
    std::vector<Primitive> primitives;
    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Square world window centred at the origin.
struct Viewport {
    double half_extent = 3.0;
    int pixels = 512;
    double world_per_pixel() const { return 2.0 * half_extent / pixels; }
};

struct Ellipse {
    double semi_major = 0.0;
    double semi_minor = 0.0;
    double angle = 0.0;  // of the major axis, in (-pi/2, pi/2]
};

/// Image of the unit circle under a symmetric PSD M. Throws Error(NotPSD).
Ellipse ellipse_of(const Mat2& m, const Tolerances& tol = {});

enum class V1Mode { Compare, Fade };

/// Compare: [input, LR step, QR step] in blue, green, red. Fade: input blue,
/// then fading iterates. Throws Error(NotPSD) naming the offending index.
Scene scene_v1(const std::vector<Mat2>& matrices, V1Mode mode, const Tolerances& tol = {});

/// Base cycle, every iterate's figure (whitest first) and the red input
/// figure on top. Throws Error(ZeroMatrix) naming the offending index.
Scene scene_v2(const std::vector<Mat2>& trajectory, Model model, const Viewport& vp = {},
               const Tolerances& tol = {});

/// Deterministic SVG 1.1, numbers with 9 significant digits.
std::string emit_svg(const Scene& scene, const Viewport& vp = {});

/// Canonical JSON (sorted keys, 9 significant digits), schema version 1.
std::string emit_scene_json(const Scene& scene);
/// Throws Error(BadRequest) on schema violations.
Scene parse_scene_json(std::string_view text);

/// Rounds every float to the precision the emitters write.
Scene quantized(const Scene& scene);
double quantize(double value);
/// %.9g-style text, locale independent, "-0" folded to "0".
std::string format_number(double value);

}  // namespace cyclesight
