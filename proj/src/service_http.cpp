#include "wmsd/service_http.hpp"

#include <cstdio>

#include "httplib.h"
#include "json.hpp"

namespace wmsd {

namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body, kJson);
}

void send_error(httplib::Response& res, int status, const std::string& message) {
    send(res, {status, nlohmann::json{{"error", "MalformedRequest"}, {"message", message}}.dump()});
}

// Pulls the csv/config pair out of a multipart form or a JSON body.
bool read_upload(const httplib::Request& req, httplib::Response& res, std::string& csv, std::string& config) {
    if (req.is_multipart_form_data()) {
        if (!req.has_file("csv") || !req.has_file("config")) {
            send_error(res, 400, "multipart body needs 'csv' and 'config' parts");
            return false;
        }
        csv = req.get_file_value("csv").content;
        config = req.get_file_value("config").content;
        return true;
    }
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object() || !body.contains("csv") || !body.contains("config") ||
        !body.at("csv").is_string()) {
        send_error(res, 400, "body must be multipart (csv, config) or JSON {\"csv\": text, \"config\": object}");
        return false;
    }
    csv = body.at("csv").get<std::string>();
    config = body.at("config").is_string() ? body.at("config").get<std::string>() : body.at("config").dump();
    return true;
}

}  // namespace

void mount_routes(httplib::Server& server, ServiceCore& core) {
    server.Post("/api/session", [&core](const httplib::Request& req, httplib::Response& res) {
        std::string csv;
        std::string config;
        if (read_upload(req, res, csv, config)) send(res, core.create_session(csv, config));
    });
    server.Put("/api/session/:id", [&core](const httplib::Request& req, httplib::Response& res) {
        std::string csv;
        std::string config;
        if (read_upload(req, res, csv, config)) send(res, core.replace_session(req.path_params.at("id"), csv, config));
    });
    server.Get("/api/session/:id/wmsd", [&core](const httplib::Request& req, httplib::Response& res) {
        send(res, core.wmsd(req.path_params.at("id")));
    });
    server.Get("/api/session/:id/boundary", [&core](const httplib::Request& req, httplib::Response& res) {
        send(res, core.boundary(req.path_params.at("id")));
    });
    server.Post("/api/session/:id/rank", [&core](const httplib::Request& req, httplib::Response& res) {
        send(res, core.rank(req.path_params.at("id"), req.body));
    });
    server.Post("/api/session/:id/field", [&core](const httplib::Request& req, httplib::Response& res) {
        send(res, core.field(req.path_params.at("id"), req.body));
    });
    server.Get("/api/session/:id/epsilon-limit", [&core](const httplib::Request& req, httplib::Response& res) {
        send(res, core.epsilon_limit(req.path_params.at("id"), req.get_param_value("kind")));
    });
    server.Post("/api/session/:id/check-property", [&core](const httplib::Request& req, httplib::Response& res) {
        send(res, core.check_property(req.path_params.at("id"), req.body));
    });
}

int run_server(const std::string& host, int port, ServiceCore& core) {
    httplib::Server server;
    mount_routes(server, core);
    if (!server.bind_to_port(host, port)) {
        std::fprintf(stderr, "error: cannot bind %s:%d\n", host.c_str(), port);
        return 1;
    }
    std::fprintf(stderr, "serving on http://%s:%d\n", host.c_str(), port);
    return server.listen_after_bind() ? 0 : 1;
}

}  // namespace wmsd
