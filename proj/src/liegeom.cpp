#include "cyclesight/liegeom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cyclesight/errors.hpp"

namespace cyclesight {

namespace {

using cplx = std::complex<double>;

struct CMat {
    cplx a, b, c, d;
};

CMat mul(const CMat& m, const CMat& k) {
    return {m.a * k.a + m.b * k.c, m.a * k.b + m.b * k.d,
            m.c * k.a + m.d * k.c, m.c * k.b + m.d * k.d};
}

CMat adjoint(const CMat& m) {
    return {std::conj(m.a), std::conj(m.c), std::conj(m.b), std::conj(m.d)};
}

LiePoint negate_x2(const LiePoint& p) {
    LiePoint q = p;
    q[1] = -q[1];
    return q;
}

void require_on_quadric(const LiePoint& p, const Tolerances& tol, const char* op) {
    if (!(p.norm() > 0.0))
        throw Error(ErrorCode::NotOnQuadric, std::string(op) + ": zero Lie vector");
    double r = quadric_residual(p);
    if (std::abs(r) > tol.quadric)
        throw Error(ErrorCode::NotOnQuadric,
                    std::string(op) + ": point is off the Lie quadric, |Q| = " + std::to_string(std::abs(r)));
}

}  // namespace

std::string_view name(Model model) {
    return model == Model::XAxis ? "axis" : "disk";
}

Model parse_model(std::string_view text) {
    if (text == "axis" || text == "xaxis") return Model::XAxis;
    if (text == "disk" || text == "unitdisk") return Model::UnitDisk;
    throw Error(ErrorCode::BadRequest, "unknown model: " + std::string(text));
}

double LiePoint::norm() const {
    double s = 0.0;
    for (double v : x_) s += v * v;
    return std::sqrt(s);
}

LiePoint LiePoint::normalized(double eps) const {
    double n = norm();
    if (!(n > 0.0)) return *this;
    std::array<double, 5> y{};
    for (std::size_t i = 0; i < 5; ++i) y[i] = x_[i] / n;
    for (double v : y) {
        if (std::abs(v) > eps) {
            if (v < 0.0)
                for (double& w : y) w = -w;
            break;
        }
    }
    for (double& w : y) w += 0.0;
    return LiePoint(y);
}

double quadric(const LiePoint& p) {
    return -p[0] * p[0] - p[1] * p[1] + p[2] * p[2] + p[3] * p[4];
}

double quadric_residual(const LiePoint& p) {
    return quadric(p.normalized());
}

double projective_distance(const LiePoint& p, const LiePoint& q) {
    LiePoint u = p.normalized();
    LiePoint v = q.normalized();
    double plus = 0.0;
    double minus = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        plus += (u[i] + v[i]) * (u[i] + v[i]);
        minus += (u[i] - v[i]) * (u[i] - v[i]);
    }
    return std::sqrt(std::min(plus, minus));
}

double lie_form(const LiePoint& p, const LiePoint& q) {
    LiePoint u = p.normalized();
    LiePoint v = q.normalized();
    return -u[0] * v[0] - u[1] * v[1] + u[2] * v[2] + 0.5 * (u[3] * v[4] + u[4] * v[3]);
}

OrientedCycle lie_to_cycle(const LiePoint& p, const Tolerances& tol) {
    require_on_quadric(p, tol, "lie_to_cycle");
    LiePoint x = p.normalized();
    const double eps = tol.coordinate;

    if (std::abs(x[4]) > eps) {
        Vec2 center{x[0] / x[4], x[1] / x[4]};
        double signed_radius = x[2] / x[4];
        if (std::abs(x[2]) <= eps) return PointCycle{center};
        return Circle{center, std::abs(signed_radius),
                      signed_radius < 0.0 ? Orientation::Inside : Orientation::Outside};
    }
    if (std::abs(x[2]) > eps) {
        // [n : 1 : x4 : 0] is the half-plane n.p <= x4/2.
        Vec2 n{x[0] / x[2], x[1] / x[2]};
        double h = 0.5 * x[3] / x[2];
        double len = n.norm();
        return Line{{-n.x / len, -n.y / len}, -h / len};
    }
    return PointAtInfinity{};
}

LiePoint cycle_to_lie(const OrientedCycle& cycle) {
    struct Visitor {
        LiePoint operator()(const PointAtInfinity&) const { return {0.0, 0.0, 0.0, 1.0, 0.0}; }
        LiePoint operator()(const PointCycle& pt) const {
            Vec2 c = pt.center;
            return LiePoint(c.x, c.y, 0.0, c.dot(c), 1.0).normalized();
        }
        LiePoint operator()(const Circle& circ) const {
            Vec2 c = circ.center;
            double x3 = circ.orientation == Orientation::Inside ? -circ.radius : circ.radius;
            return LiePoint(c.x, c.y, x3, c.dot(c) - circ.radius * circ.radius, 1.0).normalized();
        }
        LiePoint operator()(const Line& line) const {
            double len = line.normal.norm();
            Vec2 n{-line.normal.x / len, -line.normal.y / len};
            double h = -line.offset / len;
            return LiePoint(n.x, n.y, 1.0, 2.0 * h, 0.0).normalized();
        }
    };
    return std::visit(Visitor{}, cycle);
}

double cycle_distance(const OrientedCycle& p, const OrientedCycle& q) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (p.index() != q.index()) return inf;
    if (std::holds_alternative<PointAtInfinity>(p)) return 0.0;
    if (auto* a = std::get_if<PointCycle>(&p)) {
        auto& b = std::get<PointCycle>(q);
        return (a->center - b.center).norm();
    }
    if (auto* a = std::get_if<Circle>(&p)) {
        auto& b = std::get<Circle>(q);
        if (a->orientation != b.orientation) return inf;
        return std::max((a->center - b.center).norm(), std::abs(a->radius - b.radius));
    }
    auto& a = std::get<Line>(p);
    auto& b = std::get<Line>(q);
    double la = a.normal.norm();
    double lb = b.normal.norm();
    Vec2 na{a.normal.x / la, a.normal.y / la};
    Vec2 nb{b.normal.x / lb, b.normal.y / lb};
    return std::max((na - nb).norm(), std::abs(a.offset / la - b.offset / lb));
}

std::string describe(const OrientedCycle& cycle_in) {
    // Adding 0.0 folds -0 into 0 so the text is stable.
    OrientedCycle cycle = cycle_in;
    if (auto* p = std::get_if<PointCycle>(&cycle)) p->center = {p->center.x + 0.0, p->center.y + 0.0};
    if (auto* c = std::get_if<Circle>(&cycle)) c->center = {c->center.x + 0.0, c->center.y + 0.0};
    if (auto* l = std::get_if<Line>(&cycle)) *l = Line{{l->normal.x + 0.0, l->normal.y + 0.0}, l->offset + 0.0};
    char buf[160];
    if (std::holds_alternative<PointAtInfinity>(cycle)) return "point at infinity";
    if (auto* p = std::get_if<PointCycle>(&cycle)) {
        std::snprintf(buf, sizeof buf, "point (%.9g, %.9g)", p->center.x, p->center.y);
    } else if (auto* c = std::get_if<Circle>(&cycle)) {
        std::snprintf(buf, sizeof buf, "circle centre (%.9g, %.9g) radius %.9g %s", c->center.x,
                      c->center.y, c->radius,
                      c->orientation == Orientation::Inside ? "inside" : "outside");
    } else {
        auto& l = std::get<Line>(cycle);
        std::snprintf(buf, sizeof buf, "half-plane %.9g x + %.9g y >= %.9g", l.normal.x, l.normal.y,
                      l.offset);
    }
    return buf;
}

LiePoint reverse_orientation(const LiePoint& p) {
    LiePoint q = p;
    q[2] = -q[2] + 0.0;
    return q;
}

LiePoint conjugate_figure(const LiePoint& p, Model model) {
    if (model == Model::XAxis) return negate_x2(p);
    return cayley(negate_x2(cayley(p, CayleyDirection::ToAxis)), CayleyDirection::ToDisk);
}

LiePoint spear_between(Vec2 from, Vec2 to) {
    const double x = from.x, y = from.y, u = to.x, v = to.y;
    return {-x * v - y * u, 0.0, x * v - y * u, -2.0 * x * u, -2.0 * y * v};
}

LiePoint spear_between(const ProjPoint& from, const ProjPoint& to) {
    return spear_between(from.vec(), to.vec());
}

LiePoint spear_of(const Mat2& m, const ProjPoint& p, const Tolerances& tol) {
    Vec2 image = m.apply(p.vec());
    if (image.norm() <= tol.coordinate * m.max_abs() || m.is_zero())
        throw Error(ErrorCode::NullDirection, "spear_of: direction lies in the null space of M");
    return spear_between(p.vec(), image);
}

CyclePair cycle_pair_of(const Mat2& m, Model model, const Tolerances& tol) {
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "cycle_pair_of: zero matrix");
    double scale = m.max_abs();
    double det = m.det();
    if (det < -tol.predicate * scale * scale)
        throw Error(ErrorCode::NegativeDeterminant, "cycle_pair_of: det < 0 for " + to_string(m));

    double root = std::sqrt(std::max(det, 0.0));
    LiePoint c(m.a - m.d, 2.0 * root, m.a + m.d, -2.0 * m.b, 2.0 * m.c);
    CyclePair pair{c, negate_x2(c), det <= tol.predicate * scale * scale};
    if (model == Model::UnitDisk) {
        pair.cycle = cayley(pair.cycle, CayleyDirection::ToDisk);
        pair.partner = cayley(pair.partner, CayleyDirection::ToDisk);
    }
    return pair;
}

Mat2 matrix_of_cycle(const LiePoint& c, Model model, const Tolerances& tol) {
    require_on_quadric(c, tol, "matrix_of_cycle");
    LiePoint x = (model == Model::UnitDisk ? cayley(c, CayleyDirection::ToAxis) : c).normalized();

    Mat2 m{0.5 * (x[0] + x[2]), -0.5 * x[3], 0.5 * x[4], 0.5 * (x[2] - x[0])};
    double f = m.frobenius();
    if (!(f > tol.coordinate))
        throw Error(ErrorCode::DegeneratePoint, "matrix_of_cycle: cycle reads as the zero matrix");
    m = (1.0 / f) * m;
    double tr = m.trace();
    if (tr < -tol.predicate || (std::abs(tr) <= tol.predicate && x[1] < 0.0)) m = -1.0 * m;
    return m;
}

ThetaLine neg_det_figure(const Mat2& m, Model model, const Tolerances& tol) {
    double det = m.det();
    if (!(det < 0.0))
        throw Error(ErrorCode::NonNegativeDeterminant, "neg_det_figure: det >= 0 for " + to_string(m));

    // det < 0 keeps the discriminant positive: two real eigenvalues of opposite sign.
    double half_tr = 0.5 * m.trace();
    double half_gap = 0.5 * (m.a - m.d);
    double s = std::sqrt(half_gap * half_gap + m.b * m.c);
    double big = half_tr + std::copysign(s, half_tr);
    double small = det / big;

    ThetaLine fig;
    fig.lambda1 = std::max(big, small);
    fig.lambda2 = std::min(big, small);
    fig.from = eigendirection(m, fig.lambda1);
    fig.to = eigendirection(m, fig.lambda2);

    LiePoint line = spear_between(fig.from, fig.to);
    ProjPoint probe(fig.from.x() + fig.to.x(), fig.from.y() + fig.to.y());
    auto alpha = inversive_angle(spear_of(m, probe, tol), line, tol);
    if (!alpha) throw std::logic_error("neg_det_figure: spear misses the eigen line");

    fig.theta = std::clamp(2.0 * *alpha / std::numbers::pi - 1.0, -1.0, 1.0);
    double ratio = std::clamp((fig.lambda1 + fig.lambda2) / (fig.lambda1 - fig.lambda2), -1.0, 1.0);
    fig.theta_formula = -1.0 + (2.0 / std::numbers::pi) * std::asin(ratio);
    fig.line = to_model(line, model).normalized();
    return fig;
}

MatrixFigure figure_of(const Mat2& m, Model model, const Tolerances& tol) {
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "figure_of: zero matrix");
    double scale = m.max_abs();
    if (m.det() < -tol.predicate * scale * scale) return neg_det_figure(m, model, tol);
    return cycle_pair_of(m, model, tol);
}

HermitianCycle to_hermitian(const LiePoint& p) {
    return {p[4], {-p[0], -p[1]}, p[3], p[2]};
}

LiePoint from_hermitian(const HermitianCycle& h) {
    return {-h.h12.real(), -h.h12.imag(), h.star, h.h22, h.h11};
}

LiePoint moebius_apply(const CMat2& g, const LiePoint& p) {
    cplx det = g.det();
    double scale = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)});
    if (!(std::abs(det) > 1e-14 * scale * scale))
        throw Error(ErrorCode::SingularTransform, "moebius_apply: singular transformation");

    CMat inv{g.d / det, -g.b / det, -g.c / det, g.a / det};
    HermitianCycle h = to_hermitian(p);
    CMat hm{h.h11, h.h12, std::conj(h.h12), h.h22};
    CMat out = mul(mul(adjoint(inv), hm), inv);

    HermitianCycle hp;
    hp.h11 = out.a.real();
    hp.h22 = out.d.real();
    hp.h12 = 0.5 * (out.b + std::conj(out.c));
    hp.star = h.star / std::abs(det);
    return repair_quadric(from_hermitian(hp));
}

std::optional<double> inversive_angle(const LiePoint& p, const LiePoint& q, const Tolerances& tol) {
    LiePoint u = p.normalized();
    LiePoint v = q.normalized();
    if (std::abs(u[2]) <= tol.coordinate || std::abs(v[2]) <= tol.coordinate)
        throw Error(ErrorCode::PointCycle, "inversive_angle: point cycles carry no angle");
    double b = -u[0] * v[0] - u[1] * v[1] + u[2] * v[2] + 0.5 * (u[3] * v[4] + u[4] * v[3]);
    double cosine = 1.0 - b / (u[2] * v[2]);
    if (std::abs(cosine) > 1.0 + 1e-9) return std::nullopt;
    return std::acos(std::clamp(cosine, -1.0, 1.0));
}

CMat2 cayley_matrix(CayleyDirection direction) {
    const cplx i{0.0, 1.0};
    if (direction == CayleyDirection::ToDisk) return {-i, 1.0, i, 1.0};
    return {1.0, -1.0, -i, -i};  // adjugate of the forward map
}

LiePoint cayley(const LiePoint& p, CayleyDirection direction) {
    return moebius_apply(cayley_matrix(direction), p);
}

Vec2 cayley_point(const ProjPoint& p) {
    double phi = p.disk_angle();
    return {std::cos(phi), std::sin(phi)};
}

LiePoint to_model(const LiePoint& axis_point, Model model) {
    return model == Model::XAxis ? axis_point : cayley(axis_point, CayleyDirection::ToDisk);
}

LiePoint base_cycle(Model model) {
    if (model == Model::XAxis) return LiePoint(0.0, 1.0, 1.0, 0.0, 0.0).normalized();
    return LiePoint(0.0, 0.0, 1.0, -1.0, 1.0).normalized();
}

LiePoint repair_quadric(const LiePoint& p) {
    LiePoint x = p.normalized();
    double q = quadric(x);
    if (std::abs(q) > 1e-15) {
        std::array<double, 5> grad{-2.0 * x[0], -2.0 * x[1], 2.0 * x[2], x[4], x[3]};
        double g2 = 0.0;
        for (double g : grad) g2 += g * g;
        if (g2 > 0.0) {
            for (std::size_t i = 0; i < 5; ++i) x[i] -= q / g2 * grad[i];
        }
        x = x.normalized();
    }
    return x;
}

BaseIntersection unit_circle_intersections(const OrientedCycle& cycle, double tangency) {
    BaseIntersection out;
    // Chord of the unit circle at signed distance `a` along unit direction `dir`.
    auto chord = [&](Vec2 dir, double a) {
        double h2 = 1.0 - a * a;
        if (h2 < -tangency) return;
        if (h2 <= tangency) {
            out.points.push_back(a * dir);
            return;
        }
        double h = std::sqrt(h2);
        Vec2 perp{-dir.y, dir.x};
        out.points.push_back(a * dir + h * perp);
        out.points.push_back(a * dir - h * perp);
    };

    if (auto* pt = std::get_if<PointCycle>(&cycle)) {
        if (std::abs(pt->center.norm() - 1.0) <= tangency) out.points.push_back(pt->center);
    } else if (auto* c = std::get_if<Circle>(&cycle)) {
        double d = c->center.norm();
        if (d <= tangency) {
            out.coincident = std::abs(c->radius - 1.0) <= tangency;
        } else {
            Vec2 dir{c->center.x / d, c->center.y / d};
            chord(dir, (d * d + 1.0 - c->radius * c->radius) / (2.0 * d));
        }
    } else if (auto* l = std::get_if<Line>(&cycle)) {
        double len = l->normal.norm();
        chord({l->normal.x / len, l->normal.y / len}, l->offset / len);
    }
    return out;
}

Vec2 oriented_tangent(const OrientedCycle& cycle, Vec2 at) {
    if (auto* c = std::get_if<Circle>(&cycle)) {
        Vec2 radial = at - c->center;
        double r = radial.norm();
        Vec2 ccw{-radial.y / r, radial.x / r};
        return c->orientation == Orientation::Inside ? ccw : -1.0 * ccw;
    }
    if (auto* l = std::get_if<Line>(&cycle)) {
        double len = l->normal.norm();
        return {l->normal.y / len, -l->normal.x / len};
    }
    return {0.0, 0.0};
}

}  // namespace cyclesight
