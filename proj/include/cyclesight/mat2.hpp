#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyclesight/projective.hpp"
#include "cyclesight/tolerances.hpp"

namespace cyclesight {

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diag(double x, double y) { return {x, 0.0, 0.0, y}; }
    static Mat2 rotation(double angle);

    constexpr double trace() const { return a + d; }
    constexpr double det() const { return a * d - b * c; }
    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    double max_abs() const;
    double frobenius() const;
    bool is_zero() const { return a == 0.0 && b == 0.0 && c == 0.0 && d == 0.0; }
    bool finite() const;

    constexpr Vec2 apply(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    friend constexpr Mat2 operator+(const Mat2& m, const Mat2& k) { return {m.a + k.a, m.b + k.b, m.c + k.c, m.d + k.d}; }
    friend constexpr Mat2 operator-(const Mat2& m, const Mat2& k) { return {m.a - k.a, m.b - k.b, m.c - k.c, m.d - k.d}; }
    friend constexpr Mat2 operator*(double s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
    friend constexpr Mat2 operator*(const Mat2& m, const Mat2& k) {
        return {m.a * k.a + m.b * k.c, m.a * k.b + m.b * k.d,
                m.c * k.a + m.d * k.c, m.c * k.b + m.d * k.d};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// max |m - k| entrywise.
double max_abs_diff(const Mat2& m, const Mat2& k);

std::string to_string(const Mat2& m);

enum class JordanKind { RealDistinct, RealDefective, ComplexPair, Scalar };
enum class QrConvention { Plain, NegDetFlip };
enum class ShiftStrategy { None, Rayleigh, Wilkinson };
enum class Algo { QR, LR };

std::string_view name(JordanKind kind);
std::string_view name(QrConvention conv);
std::string_view name(ShiftStrategy shift);
std::string_view name(Algo algo);

// Parsers accept the CLI spellings ("plain", "negdetflip", "none", "rayleigh",
// "wilkinson", "qr", "lr"), case-insensitively. Throw Error(BadRequest).
QrConvention parse_convention(std::string_view text);
ShiftStrategy parse_shift(std::string_view text);
Algo parse_algo(std::string_view text);

struct EigenInfo {
    std::complex<double> lambda1;  // real case: lambda1 >= lambda2
    std::complex<double> lambda2;
    std::vector<ProjPoint> eigendirs;  // real eigendirections; empty for Scalar and ComplexPair
    JordanKind kind = JordanKind::RealDistinct;
};

struct QrFactors {
    Mat2 q;
    Mat2 r;
};

struct Predicates {
    bool upper_tri = false;
    bool lower_tri = false;
    bool diagonal = false;
    bool symmetric = false;
    bool orthogonal = false;
    bool singular = false;
    bool psd = false;
};

// All of the following throw Error(ZeroMatrix) on the zero matrix.

JordanKind classify_jordan(const Mat2& m, const Tolerances& tol = {});
EigenInfo eig2(const Mat2& m, const Tolerances& tol = {});

/// M = QR with R upper triangular and nonnegative diagonal. Q is a rotation
/// when det M >= 0 and a reflection when det M < 0. A zero first column gives
/// Q = I; otherwise the leading Givens rotation annihilates c.
QrFactors qr_factor(const Mat2& m);

/// One (shifted) QR step: M - sI = QR, return RQ + sI. Under NegDetFlip with
/// det M < 0 the factors become Q diag(-1,1) and diag(-1,1) R first.
/// Throws Error(ShiftSingularity) if M - sI vanishes.
Mat2 qr_step(const Mat2& m, QrConvention conv = QrConvention::Plain,
             ShiftStrategy shift = ShiftStrategy::None, const Tolerances& tol = {});

/// The shift a strategy picks for M.
double shift_of(const Mat2& m, ShiftStrategy shift, const Tolerances& tol = {});

/// Cholesky LR step on a symmetric PSD matrix: M = L L^T, return L^T L.
/// Throws Error(NotPSD).
Mat2 lr_step_psd(const Mat2& m, const Tolerances& tol = {});

Predicates predicates(const Mat2& m, const Tolerances& tol = {});

/// sigma_max / sigma_min, +infinity for singular M.
double cond2(const Mat2& m, const Tolerances& tol = {});

/// Singular values, largest first.
std::pair<double, double> singular_values(const Mat2& m);

struct TrajectoryFailure {
    std::size_t index = 0;  // index of the iterate the failing step was applied to
    std::string code;
    std::string message;
};

struct Trajectory {
    std::vector<Mat2> iterates;  // iterates[0] is the input
    std::optional<TrajectoryFailure> failure;
};

/// n steps of the chosen algorithm. Stops early only when a step throws; the
/// failure is recorded rather than rethrown.
Trajectory trajectory(const Mat2& m0, std::size_t n, Algo algo,
                      QrConvention conv = QrConvention::Plain,
                      ShiftStrategy shift = ShiftStrategy::None, const Tolerances& tol = {});

}  // namespace cyclesight

namespace cyclesight {

/// Null direction of M - lambda I for a real eigenvalue lambda.
ProjPoint eigendirection(const Mat2& m, double lambda);

}  // namespace cyclesight
