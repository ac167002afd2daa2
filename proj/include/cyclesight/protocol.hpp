#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "cyclesight/json_io.hpp"
#include "cyclesight/session.hpp"

namespace cyclesight {

/// Parses a gesture object such as {"kind":"scale","factor":1.5}.
/// Throws Error(BadRequest); a "target":"partner" field is rejected with
/// Error(InvalidGestureForMode).
Gesture gesture_from_json(const Json& j);

Json state_json(const SessionState& s);

/// {"ok":true,"scene":...,"report":...,"state":...}
Json ok_response(const SessionState& s, const Tolerances& tol = {});
Json error_response(std::string_view code, std::string_view message);

/// One protocol endpoint. Requests: {"op":"init","matrix":[a,b,c,d],"steps":n,
/// "algo","conv","shift","model"}, {"op":"gesture","gesture":{...}},
/// {"op":"get"}. A failed request leaves the state untouched.
class Session {
public:
    explicit Session(Tolerances tol = {}) : tol_(tol) {}

    Json handle(const Json& request);
    /// Parses, handles, and returns canonical JSON (with trailing newline).
    std::string handle_text(std::string_view request);

    const std::optional<SessionState>& state() const { return state_; }

private:
    SessionState next_state(const Json& request) const;

    Tolerances tol_;
    std::optional<SessionState> state_;
};

/// Line-delimited request/response loop over one session until EOF.
void serve_stdio(std::istream& in, std::ostream& out, const Tolerances& tol = {});

}  // namespace cyclesight
