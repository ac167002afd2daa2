#include "cyclesight/projective.hpp"

#include <numbers>

#include "cyclesight/errors.hpp"

namespace cyclesight {

ProjPoint::ProjPoint(double x, double y) {
    double n = std::hypot(x, y);
    if (!(n > 0.0) || !std::isfinite(n))
        throw Error(ErrorCode::DegeneratePoint, "projective point [0:0] is undefined");
    x /= n;
    y /= n;
    if (x < 0.0 || (x == 0.0 && y < 0.0)) {
        x = -x;
        y = -y;
    }
    x_ = x + 0.0;  // no negative zeros
    y_ = y + 0.0;
}

// Cayley z -> (1 - iz)/(1 + iz) on [x:y] gives (y - ix)/(y + ix) = exp(-2i atan2(x, y)).
double ProjPoint::disk_angle() const {
    double phi = -2.0 * std::atan2(x_, y_);
    if (phi <= -std::numbers::pi) phi += 2.0 * std::numbers::pi;
    return phi;
}

ProjPoint ProjPoint::from_disk_angle(double phi) {
    return {-std::sin(phi / 2.0), std::cos(phi / 2.0)};
}

}  // namespace cyclesight
