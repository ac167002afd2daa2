#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyclesight/liegeom.hpp"
#include "cyclesight/mat2.hpp"
#include "cyclesight/tolerances.hpp"

namespace cyclesight {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitIo = 3 };

struct RunSettings {
    std::size_t steps = 30;
    Algo algo = Algo::QR;
    QrConvention conv = QrConvention::NegDetFlip;
    ShiftStrategy shift = ShiftStrategy::None;
    Model model = Model::UnitDisk;
};

/// The three files a run produces, as canonical text.
struct Artifacts {
    std::string trajectory_json;
    std::string scene_svg;
    std::string report_json;
};

Artifacts build_artifacts(const Mat2& m, const RunSettings& settings, const Tolerances& tol = {},
                          const std::string& preset = {});

/// Writes <dir>/<preset>/{trajectory.json, scene.svg, report.json}.
/// Throws Error(UnknownPreset), Error(Io).
std::filesystem::path write_preset(const std::string& name, const std::filesystem::path& out_dir,
                                   const Tolerances& tol = {});

/// Temp file in the same directory, then rename. Throws Error(Io).
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Parses "a b c d" (spaces and/or commas). Throws Error(BadRequest).
Mat2 parse_matrix(const std::string& text);

/// Entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclesight
