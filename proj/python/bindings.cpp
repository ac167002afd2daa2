#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cyclesight/errors.hpp"
#include "cyclesight/json_io.hpp"
#include "cyclesight/liegeom.hpp"
#include "cyclesight/mat2.hpp"
#include "cyclesight/presets.hpp"
#include "cyclesight/protocol.hpp"
#include "cyclesight/report.hpp"
#include "cyclesight/scene.hpp"

namespace py = pybind11;
using namespace cyclesight;

namespace {

Mat2 to_mat(const std::array<double, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
}

std::array<double, 4> from_mat(const Mat2& m) {
    return {m.a, m.b, m.c, m.d};
}

Trajectory run(const std::array<double, 4>& m, std::size_t steps, const std::string& algo, const std::string& conv,
               const std::string& shift) {
    return trajectory(to_mat(m), steps, parse_algo(algo), parse_convention(conv), parse_shift(shift));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Native core: matrix iterations, Lie cycle geometry and scenes";

    static py::exception<Error> error_type(mod, "CyclesightError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object cls = py::reinterpret_borrow<py::object>(error_type.ptr());
            py::object exc = cls(std::string(code_name(e.code())) + ": " + e.what());
            exc.attr("code") = std::string(code_name(e.code()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    mod.def("classify_json", [](const std::array<double, 4>& m, const std::string& model) {
        return canonical(classification_report(to_mat(m), parse_model(model)));
    }, py::arg("matrix"), py::arg("model") = "disk");

    mod.def("qr_step", [](const std::array<double, 4>& m, const std::string& conv, const std::string& shift) {
        return from_mat(qr_step(to_mat(m), parse_convention(conv), parse_shift(shift)));
    }, py::arg("matrix"), py::arg("conv") = "plain", py::arg("shift") = "none");

    mod.def("lr_step", [](const std::array<double, 4>& m) { return from_mat(lr_step_psd(to_mat(m))); },
            py::arg("matrix"));

    mod.def("trajectory", [](const std::array<double, 4>& m, std::size_t steps, const std::string& algo,
                             const std::string& conv, const std::string& shift) {
        std::vector<std::array<double, 4>> out;
        for (const auto& x : run(m, steps, algo, conv, shift).iterates) out.push_back(from_mat(x));
        return out;
    }, py::arg("matrix"), py::arg("steps") = 30, py::arg("algo") = "qr", py::arg("conv") = "negdetflip",
       py::arg("shift") = "none");

    mod.def("figure", [](const std::array<double, 4>& m, const std::string& model) -> py::dict {
        MatrixFigure fig = figure_of(to_mat(m), parse_model(model));
        py::dict d;
        if (auto* pair = std::get_if<CyclePair>(&fig)) {
            d["kind"] = "cycle_pair";
            d["cycle"] = pair->cycle.coords();
            d["partner"] = pair->partner.coords();
            d["coincident"] = pair->coincident;
        } else {
            const auto& tl = std::get<ThetaLine>(fig);
            d["kind"] = "theta_line";
            d["line"] = tl.line.coords();
            d["theta"] = tl.theta;
            d["theta_formula"] = tl.theta_formula;
        }
        return d;
    }, py::arg("matrix"), py::arg("model") = "disk");

    mod.def("scene_json", [](const std::array<double, 4>& m, std::size_t steps, const std::string& model) {
        return emit_scene_json(scene_v2(run(m, steps, "qr", "negdetflip", "none").iterates, parse_model(model)));
    }, py::arg("matrix"), py::arg("steps") = 30, py::arg("model") = "disk");

    mod.def("scene_svg", [](const std::array<double, 4>& m, std::size_t steps, const std::string& model) {
        return emit_svg(scene_v2(run(m, steps, "qr", "negdetflip", "none").iterates, parse_model(model)));
    }, py::arg("matrix"), py::arg("steps") = 30, py::arg("model") = "disk");

    mod.def("preset_names", [] {
        std::vector<std::string> names;
        for (const auto& p : presets()) names.push_back(p.name);
        return names;
    });
    mod.def("preset_matrix", [](const std::string& name) { return from_mat(find_preset(name).matrix); });

    py::class_<Session>(mod, "Session")
        .def(py::init<>())
        .def("handle", &Session::handle_text, py::arg("request"),
             "Handle one protocol request (JSON text) and return the JSON response.");
}
