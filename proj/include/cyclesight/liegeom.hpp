#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cyclesight/mat2.hpp"
#include "cyclesight/projective.hpp"
#include "cyclesight/tolerances.hpp"

namespace cyclesight {

/// Where the projective real line lives: the x-axis, or (after the Cayley
/// map z -> (1 - iz)/(1 + iz)) the unit circle.
enum class Model { XAxis, UnitDisk };

std::string_view name(Model model);
Model parse_model(std::string_view text);  // "axis" | "disk"

/// Homogeneous point [x1 : ... : x5] of RP^4. Oriented cycles are the points
/// of the Lie quadric -x1^2 - x2^2 + x3^2 + x4 x5 = 0.
class LiePoint {
public:
    LiePoint() = default;
    LiePoint(double x1, double x2, double x3, double x4, double x5) : x_{x1, x2, x3, x4, x5} {}
    explicit LiePoint(const std::array<double, 5>& x) : x_(x) {}

    double operator[](std::size_t i) const { return x_[i]; }
    double& operator[](std::size_t i) { return x_[i]; }
    const std::array<double, 5>& coords() const { return x_; }

    double norm() const;
    /// Unit Euclidean norm, first coordinate with |x_i| > eps made positive.
    LiePoint normalized(double eps = Tolerances{}.coordinate) const;

    friend bool operator==(const LiePoint&, const LiePoint&) = default;

private:
    std::array<double, 5> x_{};
};

/// Q(x) on the raw coordinates.
double quadric(const LiePoint& p);
/// Q(x) after normalization; what quadric-membership checks compare.
double quadric_residual(const LiePoint& p);
/// min(|p^ - q^|, |p^ + q^|) on unit representatives; 0 iff projectively equal.
double projective_distance(const LiePoint& p, const LiePoint& q);

/// B(p, q) = -p1 q1 - p2 q2 + p3 q3 + (p4 q5 + p5 q4)/2 on canonical
/// normalizations, so B(p, p) = Q(p). Zero iff oriented tangency.
double lie_form(const LiePoint& p, const LiePoint& q);

enum class Orientation { Inside, Outside };

struct PointAtInfinity {
    friend bool operator==(const PointAtInfinity&, const PointAtInfinity&) = default;
};
struct PointCycle {
    Vec2 center;
    friend bool operator==(const PointCycle&, const PointCycle&) = default;
};
struct Circle {
    Vec2 center;
    double radius = 1.0;
    Orientation orientation = Orientation::Outside;
    friend bool operator==(const Circle&, const Circle&) = default;
};
/// The half-plane normal . (x, y) >= offset.
struct Line {
    Vec2 normal{0.0, 1.0};
    double offset = 0.0;
    friend bool operator==(const Line&, const Line&) = default;
};

using OrientedCycle = std::variant<PointAtInfinity, PointCycle, Circle, Line>;

/// Throws Error(NotOnQuadric) if |Q(p^)| exceeds tol.quadric.
OrientedCycle lie_to_cycle(const LiePoint& p, const Tolerances& tol = {});
LiePoint cycle_to_lie(const OrientedCycle& cycle);
/// Max coordinate gap between two realizations of the same kind; infinity
/// when the kinds or orientations differ.
double cycle_distance(const OrientedCycle& p, const OrientedCycle& q);
std::string describe(const OrientedCycle& cycle);

/// Negates x3. Points (x3 = 0) are fixed.
LiePoint reverse_orientation(const LiePoint& p);

/// The involution pairing a matrix's two cycles: RI (x2 -> -x2) on the
/// x-axis model, ORI on the disk model (RI conjugated by the Cayley map).
LiePoint conjugate_figure(const LiePoint& p, Model model);

/// Spear from `from` to `to` on the x-axis model:
/// [-xv - yu : 0 : xv - yu : -2xu : -2yv] for from = (x, y), to = (u, v).
LiePoint spear_between(Vec2 from, Vec2 to);
LiePoint spear_between(const ProjPoint& from, const ProjPoint& to);

/// The hyperbolic spear from p to M.p (x-axis model), not normalized.
/// Throws Error(NullDirection) when M p = 0.
LiePoint spear_of(const Mat2& m, const ProjPoint& p, const Tolerances& tol = {});

/// det M >= 0: the pair {C, conj(C)} every spear of M is tangent to.
struct CyclePair {
    LiePoint cycle;
    LiePoint partner;
    bool coincident = false;  // singular M: both are the same unoriented cycle
};

/// det M < 0: the hyperbolic line through the two eigendirections, plus the
/// continuous orientation theta in [-1, 1].
struct ThetaLine {
    LiePoint line;            // oriented from the lambda1 eigendirection to the lambda2 one
    double theta = 0.0;       // measured: 2 alpha / pi - 1, alpha = angle(spear, line)
    double theta_formula = 0.0;  // -1 + (2/pi) asin((l1 + l2)/(l1 - l2)), for comparison
    ProjPoint from = ProjPoint::infinity();  // lambda1 eigendirection
    ProjPoint to = ProjPoint::zero();        // lambda2 eigendirection
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

using MatrixFigure = std::variant<CyclePair, ThetaLine>;

/// C = [a - d : 2 sqrt(ad - bc) : a + d : -2b : 2c] on the x-axis model, and
/// its Cayley image on the disk model. Throws NegativeDeterminant, ZeroMatrix.
CyclePair cycle_pair_of(const Mat2& m, Model model, const Tolerances& tol = {});

/// Inverse reading of cycle_pair_of, normalized to Frobenius norm 1 with
/// trace >= 0 (x2-slot sign breaks the tie at trace 0). Throws NotOnQuadric,
/// DegeneratePoint.
Mat2 matrix_of_cycle(const LiePoint& c, Model model, const Tolerances& tol = {});

/// Throws NonNegativeDeterminant.
ThetaLine neg_det_figure(const Mat2& m, Model model, const Tolerances& tol = {});

/// det >= 0 (up to the singular tolerance) -> CyclePair, otherwise ThetaLine.
MatrixFigure figure_of(const Mat2& m, Model model, const Tolerances& tol = {});

/// Complex 2x2 matrix acting as a Moebius transformation.
struct CMat2 {
    std::complex<double> a{1.0}, b{0.0}, c{0.0}, d{1.0};
    std::complex<double> det() const { return a * d - b * c; }
    std::complex<double> apply(std::complex<double> z) const { return (a * z + b) / (c * z + d); }
};

/// Hermitian form of a cycle: (z, 1)^* H (z, 1) = 0 on the cycle. The hidden
/// coordinate x3 = star * sqrt(-det H) is carried separately.
struct HermitianCycle {
    double h11 = 0.0;                   // x5
    std::complex<double> h12{0.0, 0.0};  // -(x1 + i x2)
    double h22 = 0.0;                   // x4
    double star = 0.0;                  // x3
};

HermitianCycle to_hermitian(const LiePoint& p);
LiePoint from_hermitian(const HermitianCycle& h);

/// H' = (g^-1)^* H g^-1 with x3 -> x3 / |det g|. Preserves oriented
/// tangency and the side of each cycle. Throws Error(SingularTransform).
LiePoint moebius_apply(const CMat2& g, const LiePoint& p);

/// Intersection angle in [0, pi] of two oriented non-point cycles:
/// cos alpha = 1 - B(p, q)/(p3 q3). nullopt when they do not meet.
/// Throws Error(PointCycle).
std::optional<double> inversive_angle(const LiePoint& p, const LiePoint& q,
                                      const Tolerances& tol = {});

enum class CayleyDirection { ToDisk, ToAxis };

CMat2 cayley_matrix(CayleyDirection direction);
LiePoint cayley(const LiePoint& p, CayleyDirection direction);
/// Image of an x-axis point on the unit circle.
Vec2 cayley_point(const ProjPoint& p);

/// Expresses an x-axis-model Lie point in `model`.
LiePoint to_model(const LiePoint& axis_point, Model model);

/// The model's base cycle: the x-axis or the unit circle.
LiePoint base_cycle(Model model);

/// One Newton step toward Q = 0 along grad Q, then normalization.
LiePoint repair_quadric(const LiePoint& p);

struct BaseIntersection {
    bool coincident = false;  // the cycle is the unit circle itself
    std::vector<Vec2> points;
};

/// Where a disk-model cycle meets the unit circle. Tangency (one point) is
/// declared when the chord half-length squared is within `tangency`.
BaseIntersection unit_circle_intersections(const OrientedCycle& cycle, double tangency = 1e-9);

/// Unit tangent of the oriented cycle at a point on it; the oriented side
/// lies to the left of the direction of travel.
Vec2 oriented_tangent(const OrientedCycle& cycle, Vec2 at);

}  // namespace cyclesight
