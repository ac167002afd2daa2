#include "cyclesight/mat2.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cyclesight/errors.hpp"

namespace cyclesight {

namespace {

void require_nonzero(const Mat2& m, const char* op) {
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, std::string(op) + ": zero matrix");
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

// (a - d)^2 + 4bc: the discriminant tr^2 - 4 det without the cancellation.
double discriminant(const Mat2& m) {
    double half_gap = 0.5 * (m.a - m.d);
    return 4.0 * (half_gap * half_gap + m.b * m.c);
}

}  // namespace

// Null vector of M - lambda I, picking the better conditioned row.
ProjPoint eigendirection(const Mat2& m, double lambda) {
    Vec2 from_row1{m.b, lambda - m.a};
    Vec2 from_row2{lambda - m.d, m.c};
    Vec2 v = from_row1.norm() >= from_row2.norm() ? from_row1 : from_row2;
    if (v.norm() == 0.0) return ProjPoint::infinity();
    return {v.x, v.y};
}

Mat2 Mat2::rotation(double angle) {
    double cs = std::cos(angle);
    double sn = std::sin(angle);
    return {cs, -sn, sn, cs};
}

double Mat2::max_abs() const {
    return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
}

double Mat2::frobenius() const {
    return std::hypot(std::hypot(a, b), std::hypot(c, d));
}

bool Mat2::finite() const {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
}

double max_abs_diff(const Mat2& m, const Mat2& k) {
    return (m - k).max_abs();
}

std::string to_string(const Mat2& m) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[[%.9g, %.9g], [%.9g, %.9g]]", m.a, m.b, m.c, m.d);
    return buf;
}

std::string_view name(JordanKind kind) {
    switch (kind) {
        case JordanKind::RealDistinct: return "RealDistinct";
        case JordanKind::RealDefective: return "RealDefective";
        case JordanKind::ComplexPair: return "ComplexPair";
        case JordanKind::Scalar: return "Scalar";
    }
    return "?";
}

std::string_view name(QrConvention conv) {
    return conv == QrConvention::Plain ? "plain" : "negdetflip";
}

std::string_view name(ShiftStrategy shift) {
    switch (shift) {
        case ShiftStrategy::None: return "none";
        case ShiftStrategy::Rayleigh: return "rayleigh";
        case ShiftStrategy::Wilkinson: return "wilkinson";
    }
    return "?";
}

std::string_view name(Algo algo) {
    return algo == Algo::QR ? "qr" : "lr";
}

QrConvention parse_convention(std::string_view text) {
    auto s = lower(text);
    if (s == "plain") return QrConvention::Plain;
    if (s == "negdetflip") return QrConvention::NegDetFlip;
    throw Error(ErrorCode::BadRequest, "unknown QR convention: " + std::string(text));
}

ShiftStrategy parse_shift(std::string_view text) {
    auto s = lower(text);
    if (s == "none") return ShiftStrategy::None;
    if (s == "rayleigh") return ShiftStrategy::Rayleigh;
    if (s == "wilkinson") return ShiftStrategy::Wilkinson;
    throw Error(ErrorCode::BadRequest, "unknown shift strategy: " + std::string(text));
}

Algo parse_algo(std::string_view text) {
    auto s = lower(text);
    if (s == "qr") return Algo::QR;
    if (s == "lr") return Algo::LR;
    throw Error(ErrorCode::BadRequest, "unknown algorithm: " + std::string(text));
}

JordanKind classify_jordan(const Mat2& m, const Tolerances& tol) {
    require_nonzero(m, "classify_jordan");
    double scale = m.max_abs();
    double eps = tol.predicate * scale;
    double disc = discriminant(m);
    if (disc > tol.predicate * scale * scale) return JordanKind::RealDistinct;
    if (disc < -tol.predicate * scale * scale) return JordanKind::ComplexPair;
    if (std::abs(m.b) <= eps && std::abs(m.c) <= eps && std::abs(m.a - m.d) <= eps)
        return JordanKind::Scalar;
    return JordanKind::RealDefective;
}

EigenInfo eig2(const Mat2& m, const Tolerances& tol) {
    EigenInfo info;
    info.kind = classify_jordan(m, tol);
    double half_tr = 0.5 * m.trace();

    switch (info.kind) {
        case JordanKind::RealDistinct: {
            double s = 0.5 * std::sqrt(discriminant(m));
            double big = half_tr + std::copysign(s, half_tr);
            double small = m.det() / big;
            info.lambda1 = std::max(big, small);
            info.lambda2 = std::min(big, small);
            info.eigendirs = {eigendirection(m, info.lambda1.real()),
                              eigendirection(m, info.lambda2.real())};
            break;
        }
        case JordanKind::RealDefective:
            info.lambda1 = info.lambda2 = half_tr;
            info.eigendirs = {eigendirection(m, half_tr)};
            break;
        case JordanKind::Scalar:
            info.lambda1 = info.lambda2 = half_tr;
            break;
        case JordanKind::ComplexPair: {
            double im = 0.5 * std::sqrt(-discriminant(m));
            info.lambda1 = {half_tr, im};
            info.lambda2 = {half_tr, -im};
            break;
        }
    }
    return info;
}

QrFactors qr_factor(const Mat2& m) {
    require_nonzero(m, "qr_factor");
    double r = std::hypot(m.a, m.c);
    if (r == 0.0) return {Mat2::identity(), m};

    double cs = m.a / r;
    double sn = m.c / r;
    Mat2 q{cs, -sn, sn, cs};
    Mat2 rr{r, cs * m.b + sn * m.d, 0.0, -sn * m.b + cs * m.d};
    if (rr.d < 0.0) {
        // Flip the second column of Q to keep the diagonal of R nonnegative.
        q.b = -q.b;
        q.d = -q.d;
        rr.d = -rr.d;
    }
    return {q, rr};
}

double shift_of(const Mat2& m, ShiftStrategy shift, const Tolerances& tol) {
    switch (shift) {
        case ShiftStrategy::None: return 0.0;
        case ShiftStrategy::Rayleigh: return m.d;
        case ShiftStrategy::Wilkinson: {
            EigenInfo e = eig2(m, tol);
            if (e.kind == JordanKind::ComplexPair) return e.lambda1.real();
            double l1 = e.lambda1.real();
            double l2 = e.lambda2.real();
            return std::abs(l1 - m.d) <= std::abs(l2 - m.d) ? l1 : l2;
        }
    }
    return 0.0;
}

Mat2 qr_step(const Mat2& m, QrConvention conv, ShiftStrategy shift, const Tolerances& tol) {
    require_nonzero(m, "qr_step");
    double sigma = shift_of(m, shift, tol);
    Mat2 shifted = m - sigma * Mat2::identity();
    if (shifted.max_abs() <= tol.factorization * m.max_abs())
        throw Error(ErrorCode::ShiftSingularity, "qr_step: M - sigma I vanishes for sigma = " +
                                                     std::to_string(sigma));

    auto [q, r] = qr_factor(shifted);
    if (conv == QrConvention::NegDetFlip && m.det() < 0.0) {
        const Mat2 flip = Mat2::diag(-1.0, 1.0);
        q = q * flip;
        r = flip * r;
    }
    return r * q + sigma * Mat2::identity();
}

Mat2 lr_step_psd(const Mat2& m, const Tolerances& tol) {
    require_nonzero(m, "lr_step_psd");
    double scale = m.max_abs();
    double slack = tol.psd * scale;
    if (std::abs(m.b - m.c) > slack)
        throw Error(ErrorCode::NotPSD, "lr_step_psd: matrix is not symmetric: " + to_string(m));
    double off = 0.5 * (m.b + m.c);
    // PSD iff a, d >= 0 and det >= 0 (with slack).
    if (m.a < -slack || m.d < -slack || m.a * m.d - off * off < -slack * scale)
        throw Error(ErrorCode::NotPSD, "lr_step_psd: matrix has a negative eigenvalue: " + to_string(m));

    double l11 = std::sqrt(std::max(m.a, 0.0));
    double l21 = l11 > 0.0 ? off / l11 : 0.0;
    double l22 = std::sqrt(std::max(m.d - l21 * l21, 0.0));
    double cross = l21 * l22;
    return {l11 * l11 + l21 * l21, cross, cross, l22 * l22};
}

Predicates predicates(const Mat2& m, const Tolerances& tol) {
    double scale = m.max_abs();
    double eps = tol.predicate * scale;
    Predicates p;
    p.upper_tri = std::abs(m.c) <= eps;
    p.lower_tri = std::abs(m.b) <= eps;
    p.diagonal = p.upper_tri && p.lower_tri;
    p.symmetric = std::abs(m.b - m.c) <= eps;
    p.orthogonal = max_abs_diff(m.transpose() * m, Mat2::identity()) <= tol.predicate;
    p.singular = std::abs(m.det()) <= tol.predicate * scale * scale;
    double off = 0.5 * (m.b + m.c);
    p.psd = p.symmetric && m.a >= -eps && m.d >= -eps &&
            m.a * m.d - off * off >= -tol.predicate * scale * scale;
    return p;
}

std::pair<double, double> singular_values(const Mat2& m) {
    // M = rotation-like part (E, H) + reflection-like part (F, G).
    double e = 0.5 * (m.a + m.d);
    double f = 0.5 * (m.a - m.d);
    double g = 0.5 * (m.c + m.b);
    double h = 0.5 * (m.c - m.b);
    double q = std::hypot(e, h);
    double r = std::hypot(f, g);
    return {q + r, std::abs(q - r)};
}

double cond2(const Mat2& m, const Tolerances& tol) {
    require_nonzero(m, "cond2");
    auto [smax, smin] = singular_values(m);
    if (smin <= tol.predicate * smax) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

Trajectory trajectory(const Mat2& m0, std::size_t n, Algo algo, QrConvention conv,
                      ShiftStrategy shift, const Tolerances& tol) {
    Trajectory out;
    out.iterates.reserve(n + 1);
    out.iterates.push_back(m0);
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2& cur = out.iterates.back();
        try {
            out.iterates.push_back(algo == Algo::QR ? qr_step(cur, conv, shift, tol)
                                                    : lr_step_psd(cur, tol));
        } catch (const Error& err) {
            out.failure = TrajectoryFailure{k, std::string(code_name(err.code())), err.what()};
            break;
        }
    }
    return out;
}

}  // namespace cyclesight
