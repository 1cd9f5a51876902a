#pragma once

#include <string>

#include "wmsd/service.hpp"

namespace httplib {
class Server;
}

namespace wmsd {

/// POST /api/session                       multipart fields "csv" and "config" (or JSON {"csv", "config"})
/// PUT  /api/session/{id}                  same payload, replaces the session atomically
/// GET  /api/session/{id}/wmsd
/// GET  /api/session/{id}/boundary
/// POST /api/session/{id}/rank             {"spec": {...}}
/// POST /api/session/{id}/field            {"spec", "resolution", "unclipped", "encoding", "window", "component"}
/// GET  /api/session/{id}/epsilon-limit?kind=I|A|R
/// POST /api/session/{id}/check-property   {"spec", "resolution"}
void mount_routes(httplib::Server& server, ServiceCore& core);

/// Blocks serving on host:port until the process is stopped. Returns nonzero when binding fails.
int run_server(const std::string& host, int port, ServiceCore& core);

}  // namespace wmsd
