#include "cyclesight/report.hpp"

#include <algorithm>
#include <cmath>

#include "cyclesight/errors.hpp"

namespace cyclesight {

namespace {

constexpr double kConvergedRel = 1e-8;
constexpr double kNearIdentity = 0.05;
constexpr double kNearlySingular = 0.05;

Json complex_json(std::complex<double> z) {
    return Json::array({num(z.real()), num(z.imag())});
}

Json predicates_json(const Predicates& p) {
    return {{"upper_tri", p.upper_tri}, {"lower_tri", p.lower_tri}, {"diagonal", p.diagonal},
            {"symmetric", p.symmetric}, {"orthogonal", p.orthogonal}, {"singular", p.singular},
            {"psd", p.psd}};
}

Json failure_json(const std::optional<TrajectoryFailure>& f) {
    if (!f) return nullptr;
    return {{"index", f->index}, {"code", f->code}, {"message", f->message}};
}

bool near_scalar(const Mat2& m) {
    double f = m.frobenius();
    double s = m.trace() >= 0.0 ? 1.0 : -1.0;
    Mat2 unit = (1.0 / f) * m;
    Mat2 target = Mat2::diag(s / std::sqrt(2.0), s / std::sqrt(2.0));
    return (unit - target).frobenius() <= kNearIdentity;
}

}  // namespace

std::optional<std::size_t> detect_period(const std::vector<Mat2>& iterates, std::size_t max_period, double rel) {
    if (iterates.empty()) return std::nullopt;
    const std::size_t n = iterates.size() - 1;
    double scale = 0.0;
    for (const auto& m : iterates) scale = std::max(scale, m.max_abs());
    for (std::size_t p = 1; p <= max_period && 2 * p <= n; ++p) {
        bool ok = true;
        for (std::size_t j = 0; j < p && ok; ++j)
            ok = max_abs_diff(iterates[n - j], iterates[n - j - p]) <= rel * scale;
        if (ok) return p;
    }
    return std::nullopt;
}

Json classification_report(const Mat2& m, Model model, const Tolerances& tol) {
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "classify: zero matrix");
    EigenInfo eig = eig2(m, tol);
    Predicates pred = predicates(m, tol);

    Json r;
    r["matrix"] = to_json(m);
    r["trace"] = num(m.trace());
    r["det"] = num(m.det());
    r["jordan"] = std::string(name(eig.kind));
    r["eigenvalues"] = Json::array({complex_json(eig.lambda1), complex_json(eig.lambda2)});
    Json eigendirs = Json::array();
    for (const auto& e : eig.eigendirs) eigendirs.push_back(Json::array({num(e.x()), num(e.y())}));
    r["eigendirections"] = eigendirs;
    Json flags = predicates_json(pred);
    for (auto& [key, value] : flags.items()) r[key] = value;
    r["predicates"] = flags;
    r["cond"] = num(cond2(m, tol));
    r["model"] = std::string(name(model));

    MatrixFigure fig = figure_of(m, model, tol);
    LiePoint main_cycle;
    if (auto* pair = std::get_if<CyclePair>(&fig)) {
        r["figure"] = "cycle_pair";
        r["coincident"] = pair->coincident;
        r["theta_oracle"] = nullptr;
        r["theta_formula"] = nullptr;
        main_cycle = pair->cycle;
        r["cycle"] = describe(lie_to_cycle(pair->cycle, tol));
        r["partner"] = describe(lie_to_cycle(pair->partner, tol));
    } else {
        const auto& tl = std::get<ThetaLine>(fig);
        r["figure"] = "theta_line";
        r["coincident"] = false;
        r["theta_oracle"] = num(tl.theta);
        r["theta_formula"] = num(tl.theta_formula);
        main_cycle = tl.line;
        r["cycle"] = describe(lie_to_cycle(tl.line, tol));
        r["partner"] = nullptr;
    }

    // Where the figure meets the base cycle, counted on the disk model.
    LiePoint disk_cycle = model == Model::UnitDisk ? main_cycle : cayley(main_cycle, CayleyDirection::ToDisk);
    BaseIntersection hits = unit_circle_intersections(lie_to_cycle(repair_quadric(disk_cycle), tol));
    r["base_coincident"] = hits.coincident;
    r["intersections"] = hits.coincident ? Json(nullptr) : Json(hits.points.size());
    return r;
}

Json dynamics_report(const Trajectory& traj, const Tolerances& tol) {
    Json r;
    const auto& it = traj.iterates;
    const std::size_t n = it.empty() ? 0 : it.size() - 1;
    r["steps"] = n;
    r["failure"] = failure_json(traj.failure);

    Json sub = Json::array();
    double scale = 0.0;
    for (const auto& m : it) {
        sub.push_back(num(std::abs(m.c)));
        scale = std::max(scale, m.max_abs());
    }
    r["subdiagonal"] = sub;
    if (it.empty() || scale == 0.0) {
        r["converged"] = false;
        r["upper_triangular_limit"] = false;
        r["period"] = nullptr;
        r["regime"] = "none";
        r["eigenvalue_ratio"] = nullptr;
        r["near_identity"] = false;
        r["nearly_singular"] = false;
        return r;
    }

    const Mat2& last = it.back();
    bool settled = n >= 1 && max_abs_diff(it[n], it[n - 1]) <= kConvergedRel * scale;
    bool triangular = std::abs(last.c) <= kConvergedRel * scale;
    r["converged"] = settled;
    r["upper_triangular_limit"] = triangular;
    auto period = detect_period(it);
    r["period"] = period ? Json(*period) : Json(nullptr);

    const Mat2& m0 = it.front();
    auto [smax, smin] = singular_values(m0);
    r["near_identity"] = near_scalar(m0);
    r["nearly_singular"] = smax > 0.0 && smin / smax <= kNearlySingular;

    EigenInfo eig = eig2(m0, tol);
    std::string regime;
    if (eig.kind == JordanKind::ComplexPair) {
        r["eigenvalue_ratio"] = 1.0;
        regime = period ? "periodic" : "none";
    } else if (eig.kind == JordanKind::Scalar) {
        r["eigenvalue_ratio"] = 1.0;
        regime = "fixed";
    } else {
        double big = std::max(std::abs(eig.lambda1.real()), std::abs(eig.lambda2.real()));
        double small = std::min(std::abs(eig.lambda1.real()), std::abs(eig.lambda2.real()));
        double ratio = small / big;
        r["eigenvalue_ratio"] = num(ratio);
        if (eig.kind == JordanKind::RealDefective) {
            regime = "slow";
        } else if (ratio >= 1.0 - tol.predicate) {
            regime = period ? "periodic" : "none";
        } else if (ratio < 0.1) {
            regime = "fast";
        } else if (ratio > 0.9) {
            regime = "slow";
        } else {
            regime = "moderate";
        }
    }
    r["regime"] = regime;
    return r;
}

Json run_report(const Trajectory& traj, Algo algo, QrConvention conv, ShiftStrategy shift, Model model,
                const Tolerances& tol) {
    if (traj.iterates.empty()) throw Error(ErrorCode::BadRequest, "report: empty trajectory");
    Json r = classification_report(traj.iterates.front(), model, tol);
    r["dynamics"] = dynamics_report(traj, tol);
    r["settings"] = {{"algo", std::string(name(algo))},
                     {"conv", std::string(name(conv))},
                     {"shift", std::string(name(shift))}};
    r["final"] = to_json(traj.iterates.back());
    return r;
}

Json trajectory_json(const Trajectory& traj, Algo algo, QrConvention conv, ShiftStrategy shift) {
    Json iterates = Json::array();
    for (const auto& m : traj.iterates) iterates.push_back(to_json(m));
    return {{"algo", std::string(name(algo))},
            {"conv", std::string(name(conv))},
            {"shift", std::string(name(shift))},
            {"steps", traj.iterates.empty() ? 0 : traj.iterates.size() - 1},
            {"iterates", iterates},
            {"failure", failure_json(traj.failure)}};
}

}  // namespace cyclesight
