#pragma once

#include <optional>
#include <vector>

#include "cyclesight/json_io.hpp"
#include "cyclesight/liegeom.hpp"
#include "cyclesight/mat2.hpp"

namespace cyclesight {

/// Smallest p <= max_period with X[k] = X[k - p] (to rel * scale) over the
/// last p iterates. Needs at least 2p steps of history.
std::optional<std::size_t> detect_period(const std::vector<Mat2>& iterates, std::size_t max_period = 12,
                                         double rel = 1e-9);

/// Jordan kind, predicates (nested and flattened), eigenvalues, cond, the
/// matrix figure with theta when det < 0, and base-cycle intersections.
Json classification_report(const Mat2& m, Model model = Model::UnitDisk, const Tolerances& tol = {});

/// Subdiagonal decay, convergence, period and regime markers.
Json dynamics_report(const Trajectory& traj, const Tolerances& tol = {});

/// Full report: classification of the input plus dynamics and run settings.
Json run_report(const Trajectory& traj, Algo algo, QrConvention conv, ShiftStrategy shift, Model model,
                const Tolerances& tol = {});

Json trajectory_json(const Trajectory& traj, Algo algo, QrConvention conv, ShiftStrategy shift);

}  // namespace cyclesight
