#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cyclesight/mat2.hpp"

namespace cyclesight {

/// Bumped whenever a preset's matrix or settings change; golden files record it.
inline constexpr int kPresetTableVersion = 1;

struct Preset {
    std::string name;
    std::string description;
    Mat2 matrix;
    std::size_t steps = 30;
    Algo algo = Algo::QR;
    QrConvention conv = QrConvention::NegDetFlip;
    ShiftStrategy shift = ShiftStrategy::None;
};

const std::vector<Preset>& presets();

/// Throws Error(UnknownPreset).
const Preset& find_preset(std::string_view name);

}  // namespace cyclesight
