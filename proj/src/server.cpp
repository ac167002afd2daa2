#include "cyclesight/server.hpp"

#include <map>
#include <mutex>
#include <random>

#include "httplib.h"

#include "cyclesight/errors.hpp"
#include "cyclesight/protocol.hpp"

namespace cyclesight {

namespace {

constexpr const char* kJson = "application/json";

struct Entry {
    std::mutex mu;
    Session session;
    explicit Entry(const Tolerances& tol) : session(tol) {}
};

}  // namespace

struct HttpBridge::Impl {
    Tolerances tol;
    httplib::Server server;
    std::mutex registry_mu;
    std::map<std::string, std::shared_ptr<Entry>> sessions;
    std::mt19937_64 rng{std::random_device{}()};

    std::string create() {
        std::lock_guard lock(registry_mu);
        std::string id;
        do {
            char buf[17];
            std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
            id = buf;
        } while (sessions.count(id));
        sessions.emplace(id, std::make_shared<Entry>(tol));
        return id;
    }

    std::shared_ptr<Entry> find(const std::string& id) {
        std::lock_guard lock(registry_mu);
        auto it = sessions.find(id);
        return it == sessions.end() ? nullptr : it->second;
    }
};

HttpBridge::HttpBridge(Tolerances tol, std::optional<std::string> static_dir) : impl_(std::make_unique<Impl>()) {
    impl_->tol = tol;
    auto& srv = impl_->server;
    Impl* self = impl_.get();

    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(canonical({{"ok", true}}), kJson);
    });
    srv.Post("/session", [self](const httplib::Request&, httplib::Response& res) {
        res.set_content(canonical({{"ok", true}, {"id", self->create()}}), kJson);
    });
    srv.Post(R"(/session/([0-9a-f]+)/message)", [self](const httplib::Request& req, httplib::Response& res) {
        auto entry = self->find(req.matches[1]);
        if (!entry) {
            res.status = 404;
            res.set_content(canonical(error_response("unknown_session", "no such session")), kJson);
            return;
        }
        std::lock_guard lock(entry->mu);
        res.set_content(entry->session.handle_text(req.body), kJson);
    });
    if (static_dir) srv.set_mount_point("/", *static_dir);
}

HttpBridge::~HttpBridge() {
    stop();
}

int HttpBridge::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpBridge::listen() {
    return impl_->server.listen_after_bind();
}

void HttpBridge::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace cyclesight
