#include "cyclesight/protocol.hpp"

#include <istream>
#include <ostream>

#include "cyclesight/errors.hpp"
#include "cyclesight/report.hpp"

namespace cyclesight {

namespace {

[[noreturn]] void bad(const std::string& message) {
    throw Error(ErrorCode::BadRequest, message);
}

double number_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) bad(std::string("field '") + key + "' must be a number");
    return it->get<double>();
}

std::optional<std::string> string_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) bad(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::size_t steps_field(const Json& j, std::size_t fallback) {
    auto it = j.find("steps");
    if (it == j.end()) return fallback;
    if (!it->is_number_integer() || it->get<long long>() < 0) bad("field 'steps' must be a nonnegative integer");
    return it->get<std::size_t>();
}

}  // namespace

Gesture gesture_from_json(const Json& j) {
    if (!j.is_object()) bad("gesture must be an object");
    auto kind = string_field(j, "kind");
    if (!kind) bad("gesture needs a 'kind'");
    if (auto target = string_field(j, "target")) {
        if (*target == "partner")
            throw Error(ErrorCode::InvalidGestureForMode, "the partner cycle follows the handle and cannot be moved");
        if (*target != "cycle") bad("unknown gesture target: " + *target);
    }

    if (*kind == "translate") return Translate{number_field(j, "dx"), number_field(j, "dy")};
    if (*kind == "scale") return Scale{number_field(j, "factor")};
    if (*kind == "reverse_orientation") return ReverseOrientation{};
    if (*kind == "move_endpoint") {
        auto which = j.find("which");
        if (which == j.end() || !which->is_number_integer()) bad("field 'which' must be 1 or 2");
        return MoveEndpoint{which->get<int>(), number_field(j, "dphi")};
    }
    if (*kind == "set_theta") return SetTheta{number_field(j, "theta")};
    if (*kind == "set_steps") {
        if (!j.contains("steps")) bad("set_steps needs 'steps'");
        return SetSteps{steps_field(j, 0)};
    }
    if (*kind == "set_matrix") {
        if (!j.contains("matrix")) bad("set_matrix needs 'matrix'");
        return SetMatrix{mat2_from_json(j.at("matrix"))};
    }
    if (*kind == "set_options") {
        SetOptions o;
        if (auto v = string_field(j, "algo")) o.algo = parse_algo(*v);
        if (auto v = string_field(j, "conv")) o.conv = parse_convention(*v);
        if (auto v = string_field(j, "shift")) o.shift = parse_shift(*v);
        if (auto v = string_field(j, "model")) o.model = parse_model(*v);
        return o;
    }
    bad("unknown gesture kind: " + *kind);
}

Json state_json(const SessionState& s) {
    return {{"mode", std::string(name(s.mode))},
            {"matrix", to_json(s.matrix)},
            {"steps", s.steps},
            {"algo", std::string(name(s.algo))},
            {"conv", std::string(name(s.conv))},
            {"shift", std::string(name(s.shift))},
            {"model", std::string(name(s.model))},
            {"handle", s.handle == Handle::Cycle ? "cycle" : "partner"}};
}

Json ok_response(const SessionState& s, const Tolerances& tol) {
    return {{"ok", true},
            {"scene", to_json(s.scene)},
            {"report", run_report(s.trajectory, s.algo, s.conv, s.shift, s.model, tol)},
            {"state", state_json(s)}};
}

Json error_response(std::string_view code, std::string_view message) {
    return {{"ok", false}, {"code", std::string(code)}, {"message", std::string(message)}};
}

SessionState Session::next_state(const Json& request) const {
    if (!request.is_object()) bad("request must be a JSON object");
    auto op = string_field(request, "op");
    if (!op) bad("request needs an 'op'");

    if (*op == "init") {
        if (!request.contains("matrix")) bad("init needs 'matrix'");
        Mat2 m = mat2_from_json(request.at("matrix"));
        auto algo = string_field(request, "algo");
        auto conv = string_field(request, "conv");
        auto shift = string_field(request, "shift");
        auto model = string_field(request, "model");
        return make_state(m, steps_field(request, 30), algo ? parse_algo(*algo) : Algo::QR,
                          conv ? parse_convention(*conv) : QrConvention::NegDetFlip,
                          shift ? parse_shift(*shift) : ShiftStrategy::None,
                          model ? parse_model(*model) : Model::UnitDisk, tol_);
    }
    if (*op == "gesture" || *op == "get") {
        if (!state_) bad("session not initialized; send an init request first");
        if (*op == "get") return *state_;
        if (!request.contains("gesture")) bad("gesture request needs 'gesture'");
        return apply_gesture(*state_, gesture_from_json(request.at("gesture")), tol_);
    }
    bad("unknown op: " + *op);
}

Json Session::handle(const Json& request) {
    try {
        SessionState next = next_state(request);
        Json response = ok_response(next, tol_);
        state_ = std::move(next);
        return response;
    } catch (const Error& e) {
        return error_response(code_name(e.code()), e.what());
    } catch (const Json::exception& e) {
        return error_response(code_name(ErrorCode::BadRequest), e.what());
    }
}

std::string Session::handle_text(std::string_view request) {
    Json j = Json::parse(request, nullptr, false);
    if (j.is_discarded()) return canonical(error_response(code_name(ErrorCode::BadRequest), "request is not valid JSON"));
    return canonical(handle(j));
}

void serve_stdio(std::istream& in, std::ostream& out, const Tolerances& tol) {
    Session session(tol);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out << session.handle_text(line) << std::flush;
    }
}

}  // namespace cyclesight
