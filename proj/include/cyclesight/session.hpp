#pragma once

#include <optional>
#include <variant>

#include "cyclesight/liegeom.hpp"
#include "cyclesight/mat2.hpp"
#include "cyclesight/scene.hpp"

namespace cyclesight {

enum class Mode { CyclePair, ThetaLine };
std::string_view name(Mode mode);

/// Which of the pair is the draggable one. Only the cycle is; the partner
/// always follows as its conjugate.
enum class Handle { Cycle, Partner };

struct Translate {
    double dx = 0.0, dy = 0.0;
};
/// Circles scale about their centre; lines move their offset about the origin.
struct Scale {
    double factor = 1.0;
};
struct ReverseOrientation {};
struct MoveEndpoint {
    int which = 1;  // 1: lambda1 eigendirection, 2: lambda2
    double dphi = 0.0;
};
struct SetTheta {
    double theta = 0.0;
};
struct SetSteps {
    std::size_t steps = 30;
};
struct SetMatrix {
    Mat2 matrix;
};
struct SetOptions {
    std::optional<Algo> algo;
    std::optional<QrConvention> conv;
    std::optional<ShiftStrategy> shift;
    std::optional<Model> model;
};

using Gesture = std::variant<Translate, Scale, ReverseOrientation, MoveEndpoint, SetTheta, SetSteps, SetMatrix,
                             SetOptions>;

inline constexpr std::size_t kMaxSessionSteps = 10000;

struct SessionState {
    Mode mode = Mode::CyclePair;
    Mat2 matrix = Mat2::identity();
    std::size_t steps = 30;
    Algo algo = Algo::QR;
    QrConvention conv = QrConvention::NegDetFlip;
    ShiftStrategy shift = ShiftStrategy::None;
    Model model = Model::UnitDisk;
    Handle handle = Handle::Cycle;
    Trajectory trajectory;
    Scene scene;
};

/// Validates the settings and computes trajectory and scene.
/// Throws Error(ZeroMatrix), Error(BadRequest).
SessionState make_state(const Mat2& matrix, std::size_t steps = 30, Algo algo = Algo::QR,
                        QrConvention conv = QrConvention::NegDetFlip, ShiftStrategy shift = ShiftStrategy::None,
                        Model model = Model::UnitDisk, const Tolerances& tol = {});

/// The cycle the user is dragging, in the session's model.
LiePoint handle_cycle(const SessionState& s, const Tolerances& tol = {});

/// M = P diag(l1, l2) P^-1 with l1 - l2 = 2, l1 + l2 = 2 sin(pi theta / 2),
/// P = [from | to], scaled to Frobenius norm 1. Its figure has theta_oracle
/// = theta and endpoints from, to. Throws Error(DegenerateFigure).
Mat2 matrix_from_theta_line(const ProjPoint& from, const ProjPoint& to, double theta, const Tolerances& tol = {});

/// Pure: returns the new state; `s` is never modified. Throws
/// Error(InvalidGestureForMode), Error(DegenerateFigure), Error(BadRequest).
SessionState apply_gesture(const SessionState& s, const Gesture& g, const Tolerances& tol = {});

}  // namespace cyclesight
