#include "cyclesight/errors.hpp"
#include "cyclesight/tolerances.hpp"

#include <charconv>
#include <string>

namespace cyclesight {

std::string_view code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroMatrix: return "zero_matrix";
        case ErrorCode::ShiftSingularity: return "shift_singularity";
        case ErrorCode::NotPSD: return "not_psd";
        case ErrorCode::NotOnQuadric: return "not_on_quadric";
        case ErrorCode::NullDirection: return "null_direction";
        case ErrorCode::NegativeDeterminant: return "negative_determinant";
        case ErrorCode::NonNegativeDeterminant: return "non_negative_determinant";
        case ErrorCode::DegeneratePoint: return "degenerate_point";
        case ErrorCode::SingularTransform: return "singular_transform";
        case ErrorCode::PointCycle: return "point_cycle";
        case ErrorCode::InvalidGestureForMode: return "invalid_gesture_for_mode";
        case ErrorCode::DegenerateFigure: return "degenerate_figure";
        case ErrorCode::BadRequest: return "bad_request";
        case ErrorCode::UnknownPreset: return "unknown_preset";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

Tolerances parse_tolerances(std::string_view text, Tolerances base) {
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (item.empty()) continue;

        auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::BadRequest, "tolerance entry without '=': " + std::string(item));
        std::string_view key = item.substr(0, eq);
        std::string_view val = item.substr(eq + 1);

        double value = 0.0;
        auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), value);
        if (ec != std::errc{} || ptr != val.data() + val.size() || !(value > 0.0))
            throw Error(ErrorCode::BadRequest, "bad tolerance value: " + std::string(item));

        if (key == "predicate") base.predicate = value;
        else if (key == "factorization") base.factorization = value;
        else if (key == "psd") base.psd = value;
        else if (key == "quadric") base.quadric = value;
        else if (key == "coordinate") base.coordinate = value;
        else if (key == "degenerate") base.degenerate = value;
        else throw Error(ErrorCode::BadRequest, "unknown tolerance key: " + std::string(key));
    }
    return base;
}

}  // namespace cyclesight
