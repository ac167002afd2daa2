#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclesight {

enum class ErrorCode {
    ZeroMatrix,
    ShiftSingularity,
    NotPSD,
    NotOnQuadric,
    NullDirection,
    NegativeDeterminant,
    NonNegativeDeterminant,
    DegeneratePoint,
    SingularTransform,
    PointCycle,
    InvalidGestureForMode,
    DegenerateFigure,
    BadRequest,
    UnknownPreset,
    Io,
};

/// snake_case name used on the wire ("zero_matrix", "invalid_gesture_for_mode", ...).
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cyclesight
