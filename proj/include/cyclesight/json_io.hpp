#pragma once

#include <string>

#include "json.hpp"

#include "cyclesight/mat2.hpp"
#include "cyclesight/scene.hpp"

namespace cyclesight {

using Json = nlohmann::json;

/// Quantized number; +-inf become the strings "inf"/"-inf", NaN becomes null.
Json num(double value);

Json to_json(const Mat2& m);  // [a, b, c, d]
/// Accepts [a, b, c, d] or [[a, b], [c, d]]. Throws Error(BadRequest).
Mat2 mat2_from_json(const Json& j);

Json to_json(const Scene& scene);
Scene scene_from_json(const Json& j);

/// Sorted keys, no whitespace, trailing newline.
std::string canonical(const Json& j);

}  // namespace cyclesight
