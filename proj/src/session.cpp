#include "cyclesight/session.hpp"

#include <cmath>
#include <numbers>

#include "cyclesight/errors.hpp"

namespace cyclesight {

namespace {

Mode mode_of(const Mat2& m, const Tolerances& tol) {
    double scale = m.max_abs();
    return m.det() < -tol.predicate * scale * scale ? Mode::ThetaLine : Mode::CyclePair;
}

[[noreturn]] void wrong_mode(std::string_view gesture, Mode mode) {
    throw Error(ErrorCode::InvalidGestureForMode,
                std::string(gesture) + " is not available in " + std::string(name(mode)) + " mode");
}

double wrap_angle(double phi) {
    return std::remainder(phi, 2.0 * std::numbers::pi);
}

// Rebuilds the state around a gestured cycle, keeping the handle on whichever
// member of the new pair it became.
SessionState with_cycle(const SessionState& s, const OrientedCycle& moved, const Tolerances& tol) {
    LiePoint lie = cycle_to_lie(moved);
    Mat2 m = matrix_of_cycle(lie, s.model, tol);
    SessionState out = make_state(m, s.steps, s.algo, s.conv, s.shift, s.model, tol);
    CyclePair pair = cycle_pair_of(m, s.model, tol);
    out.handle = projective_distance(lie, pair.cycle) <= projective_distance(lie, pair.partner) ? Handle::Cycle
                                                                                                 : Handle::Partner;
    return out;
}

SessionState with_matrix(const SessionState& s, const Mat2& m, const Tolerances& tol) {
    return make_state(m, s.steps, s.algo, s.conv, s.shift, s.model, tol);
}

OrientedCycle translated(const OrientedCycle& cycle, Vec2 d) {
    if (auto* c = std::get_if<Circle>(&cycle)) return Circle{c->center + d, c->radius, c->orientation};
    if (auto* p = std::get_if<PointCycle>(&cycle)) return PointCycle{p->center + d};
    if (auto* l = std::get_if<Line>(&cycle)) return Line{l->normal, l->offset + l->normal.dot(d)};
    throw Error(ErrorCode::DegenerateFigure, "translate: the point at infinity cannot be moved");
}

OrientedCycle scaled(const OrientedCycle& cycle, double factor, const Tolerances& tol) {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw Error(ErrorCode::BadRequest, "scale: factor must be a positive number");
    if (auto* c = std::get_if<Circle>(&cycle)) {
        double r = c->radius * factor;
        if (r < tol.degenerate) throw Error(ErrorCode::DegenerateFigure, "scale: the cycle would collapse");
        return Circle{c->center, r, c->orientation};
    }
    if (auto* l = std::get_if<Line>(&cycle)) return Line{l->normal, l->offset * factor};
    throw Error(ErrorCode::DegenerateFigure, "scale: a point cycle has no radius to scale");
}

}  // namespace

std::string_view name(Mode mode) {
    return mode == Mode::CyclePair ? "cycle_pair" : "theta_line";
}

SessionState make_state(const Mat2& matrix, std::size_t steps, Algo algo, QrConvention conv, ShiftStrategy shift,
                        Model model, const Tolerances& tol) {
    if (!matrix.finite()) throw Error(ErrorCode::BadRequest, "matrix entries must be finite");
    if (matrix.is_zero()) throw Error(ErrorCode::ZeroMatrix, "the session matrix must be nonzero");
    if (steps > kMaxSessionSteps)
        throw Error(ErrorCode::BadRequest, "steps must be at most " + std::to_string(kMaxSessionSteps));
    SessionState s;
    s.mode = mode_of(matrix, tol);
    s.matrix = matrix;
    s.steps = steps;
    s.algo = algo;
    s.conv = conv;
    s.shift = shift;
    s.model = model;
    s.handle = Handle::Cycle;
    s.trajectory = trajectory(matrix, steps, algo, conv, shift, tol);
    s.scene = scene_v2(s.trajectory.iterates, model, Viewport{}, tol);
    return s;
}

LiePoint handle_cycle(const SessionState& s, const Tolerances& tol) {
    if (s.mode != Mode::CyclePair) wrong_mode("handle_cycle", s.mode);
    CyclePair pair = cycle_pair_of(s.matrix, s.model, tol);
    return s.handle == Handle::Cycle ? pair.cycle : pair.partner;
}

Mat2 matrix_from_theta_line(const ProjPoint& from, const ProjPoint& to, double theta, const Tolerances& tol) {
    if (!(std::abs(theta) < 1.0))
        throw Error(ErrorCode::DegenerateFigure, "theta must lie strictly inside (-1, 1)");
    double det_p = from.x() * to.y() - to.x() * from.y();
    if (std::abs(det_p) < tol.degenerate)
        throw Error(ErrorCode::DegenerateFigure, "the two endpoints coincide");
    double s = std::sin(0.5 * std::numbers::pi * theta);
    double l1 = s + 1.0;
    double l2 = s - 1.0;
    // P diag(l1, l2) P^-1 with P = [from | to].
    Mat2 p{from.x(), to.x(), from.y(), to.y()};
    Mat2 p_inv = (1.0 / det_p) * Mat2{p.d, -p.b, -p.c, p.a};
    Mat2 m = p * Mat2::diag(l1, l2) * p_inv;
    return (1.0 / m.frobenius()) * m;
}

SessionState apply_gesture(const SessionState& s, const Gesture& g, const Tolerances& tol) {
    return std::visit(
        [&](const auto& gesture) -> SessionState {
            using T = std::decay_t<decltype(gesture)>;
            if constexpr (std::is_same_v<T, Translate>) {
                if (s.mode != Mode::CyclePair) wrong_mode("translate", s.mode);
                if (!std::isfinite(gesture.dx) || !std::isfinite(gesture.dy))
                    throw Error(ErrorCode::BadRequest, "translate: offsets must be finite");
                OrientedCycle c = lie_to_cycle(handle_cycle(s, tol), tol);
                return with_cycle(s, translated(c, {gesture.dx, gesture.dy}), tol);
            } else if constexpr (std::is_same_v<T, Scale>) {
                if (s.mode != Mode::CyclePair) wrong_mode("scale", s.mode);
                OrientedCycle c = lie_to_cycle(handle_cycle(s, tol), tol);
                return with_cycle(s, scaled(c, gesture.factor, tol), tol);
            } else if constexpr (std::is_same_v<T, ReverseOrientation>) {
                if (s.mode != Mode::CyclePair) wrong_mode("reverse_orientation", s.mode);
                LiePoint flipped = reverse_orientation(handle_cycle(s, tol));
                return with_cycle(s, lie_to_cycle(flipped, tol), tol);
            } else if constexpr (std::is_same_v<T, MoveEndpoint>) {
                if (s.mode != Mode::ThetaLine) wrong_mode("move_endpoint", s.mode);
                if (gesture.which != 1 && gesture.which != 2)
                    throw Error(ErrorCode::BadRequest, "move_endpoint: which must be 1 or 2");
                if (!std::isfinite(gesture.dphi))
                    throw Error(ErrorCode::BadRequest, "move_endpoint: dphi must be finite");
                ThetaLine fig = neg_det_figure(s.matrix, s.model, tol);
                double phi1 = fig.from.disk_angle();
                double phi2 = fig.to.disk_angle();
                (gesture.which == 1 ? phi1 : phi2) += gesture.dphi;
                if (std::abs(wrap_angle(phi1 - phi2)) < tol.degenerate)
                    throw Error(ErrorCode::DegenerateFigure, "move_endpoint: the endpoints would coincide");
                Mat2 m = matrix_from_theta_line(ProjPoint::from_disk_angle(phi1), ProjPoint::from_disk_angle(phi2),
                                                fig.theta, tol);
                return with_matrix(s, m, tol);
            } else if constexpr (std::is_same_v<T, SetTheta>) {
                if (s.mode != Mode::ThetaLine) wrong_mode("set_theta", s.mode);
                if (!(std::abs(gesture.theta) <= 1.0))
                    throw Error(ErrorCode::BadRequest, "set_theta: theta must lie in [-1, 1]");
                ThetaLine fig = neg_det_figure(s.matrix, s.model, tol);
                return with_matrix(s, matrix_from_theta_line(fig.from, fig.to, gesture.theta, tol), tol);
            } else if constexpr (std::is_same_v<T, SetSteps>) {
                SessionState out = make_state(s.matrix, gesture.steps, s.algo, s.conv, s.shift, s.model, tol);
                out.handle = s.handle;
                return out;
            } else if constexpr (std::is_same_v<T, SetMatrix>) {
                return with_matrix(s, gesture.matrix, tol);
            } else {
                SessionState out = make_state(s.matrix, s.steps, gesture.algo.value_or(s.algo),
                                              gesture.conv.value_or(s.conv), gesture.shift.value_or(s.shift),
                                              gesture.model.value_or(s.model), tol);
                out.handle = s.handle;
                return out;
            }
        },
        g);
}

}  // namespace cyclesight
