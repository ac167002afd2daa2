#include "cyclesight/presets.hpp"

#include "cyclesight/errors.hpp"

namespace cyclesight {

namespace {

Mat2 unit_frobenius(Mat2 m) {
    return (1.0 / m.frobenius()) * m;
}

std::vector<Preset> build() {
    std::vector<Preset> p;
    p.push_back({"case01", "real distinct eigenvalues 2 and 1", {2.0, 0.0, 1.0, 1.0}});
    p.push_back({"case02", "defective: double eigenvalue 1, one eigendirection", {2.0, -1.0, 1.0, 0.0}});
    p.push_back({"case03", "complex pair 1 +- i sqrt(2)", {1.0, -2.0, 1.0, 1.0}});
    p.push_back({"case04", "attractive: well separated eigenvalues", {2.0, 0.5, 0.05, 1.0}});
    // Inverse of case04: the same eigendirections with the roles swapped.
    p.push_back({"case05", "repulsive: inverse of case04", unit_frobenius({1.0, -0.5, -0.05, 2.0})});
    p.push_back({"case06", "near identity: slow convergence", {1.001, 0.001, 0.001, 1.0}, 60});
    p.push_back({"case07", "nearly singular", {1.0, 1.0, 1.0, 1.01}});
    p.push_back({"case08", "eigenvalues exp(+-i pi/3): periodic orbit", {0.0, -2.0, 0.5, 1.0}});
    Mat2 rot = Mat2::rotation(1.0);
    p.push_back({"case09", "perturbed rotation by one radian", rot + Mat2{0.01, 0.0, 0.0, 0.0}});
    p.push_back({"case10", "det < 0, trace < 0", {-1.5, 0.3, 0.7, 0.5}});
    p.push_back({"case11", "det < 0, trace = 0: period 2", {0.5, 0.3, 0.7, -0.5}});
    p.push_back({"case12", "det < 0, trace > 0", {1.5, 0.3, 0.7, -0.5}});
    return p;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = build();
    return table;
}

const Preset& find_preset(std::string_view name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw Error(ErrorCode::UnknownPreset, "unknown preset: " + std::string(name));
}

}  // namespace cyclesight
