#pragma once

// JSON over HTTP in front of a SessionManager.
//
//   POST /sessions                   201 {"session-id", "greeting"}
//   POST /sessions/{id}/messages     {"text"} -> BotResponse; 404, 409 (busy or done)
//   GET  /sessions/{id}/model        {"dsl", "model", "state"}
//   GET  /sessions/{id}/artifacts    {"platform", "files"}; 404 before generation
//   GET  /healthz                    {"status": "ok"}
//
// Every error body is {"code", "message"}.

#include <string>

#include "icb/service.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace icb {

nlohmann::ordered_json to_json(const BotResponse& response);
nlohmann::ordered_json to_json(const ContractModel& model);
nlohmann::ordered_json to_json(const GeneratedArtifact& artifact);

void register_routes(httplib::Server& server, SessionManager& sessions);

// Blocks until the server stops. Returns false if the socket cannot be bound.
bool serve(SessionManager& sessions, const std::string& host, int port);

}  // namespace icb
