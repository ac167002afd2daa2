#pragma once

#include <memory>
#include <optional>
#include <string>

#include "cyclesight/tolerances.hpp"

namespace cyclesight {

/// JSON-over-HTTP bridge:
///   POST /session              -> {"ok":true,"id":"..."}
///   POST /session/{id}/message -> protocol response
///   GET  /health               -> {"ok":true}
/// Requests to one session are serialized; sessions share nothing.
class HttpBridge {
public:
    explicit HttpBridge(Tolerances tol = {}, std::optional<std::string> static_dir = std::nullopt);
    ~HttpBridge();
    HttpBridge(const HttpBridge&) = delete;
    HttpBridge& operator=(const HttpBridge&) = delete;

    /// Binds to host:port (port 0 picks a free one) and returns the port, or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    bool listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace cyclesight
