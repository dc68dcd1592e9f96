#include "icb/http_api.hpp"

#include "httplib.h"
#include "icb/codegen.hpp"

namespace icb {
namespace {

using json = nlohmann::ordered_json;

json params_json(const std::vector<Parameter>& params) {
  json out = json::array();
  for (const auto& p : params) out.push_back({{"name", p.name}, {"type", to_string(p.type)}});
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, std::string>) {
    return *v;
  } else {
    return std::string(to_string(*v));
  }
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, std::string_view message) {
  send(res, status, json{{"code", code}, {"message", message}});
}

int status_for(const std::string& code) {
  if (code == "session-not-found") return 404;
  if (code == "session-busy" || code == "session-done") return 409;
  return 500;
}

// Runs `body`, mapping library errors to their HTTP status.
template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    send_error(res, status_for(e.code()), e.code(), e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal-error", e.what());
  }
}

}  // namespace

json to_json(const BotResponse& r) {
  json artifacts = json::array();
  for (const auto& a : r.artifacts) artifacts.push_back(to_json(a));
  return {{"text", r.text}, {"kind", to_string(r.kind)}, {"suggestions", r.suggestions}, {"artifacts", artifacts}};
}

json to_json(const ContractModel& m) {
  json participants = json::array();
  for (const auto& p : m.participants) {
    participants.push_back({{"name", p.name},
                            {"creator", p.is_creator},
                            {"identifier", optional_json(p.identifier)},
                            {"parameters", params_json(p.params)}});
  }
  json assets = json::array();
  for (const auto& a : m.assets) {
    assets.push_back({{"name", a.name},
                      {"kind", optional_json(a.kind)},
                      {"identifier", optional_json(a.identifier)},
                      {"parameters", params_json(a.params)}});
  }
  json transactions = json::array();
  for (const auto& t : m.transactions) {
    json rels = json::array();
    for (const auto& r : t.relationships) {
      rels.push_back({{"target-kind", to_string(r.target_kind)}, {"target", r.target_name}});
    }
    transactions.push_back({{"name", t.name}, {"parameters", params_json(t.params)}, {"relationships", rels}});
  }
  return {{"contract", optional_json(m.name)},
          {"platform", optional_json(m.platform)},
          {"participants", participants},
          {"assets", assets},
          {"transactions", transactions}};
}

json to_json(const GeneratedArtifact& a) {
  json provenance = json::array();
  for (const auto& p : a.provenance) {
    provenance.push_back({{"first-line", p.first_line}, {"last-line", p.last_line}, {"element", p.element}});
  }
  return {{"filename", a.filename},
          {"platform", to_string(a.platform)},
          {"content", a.content},
          {"provenance", provenance}};
}

void register_routes(httplib::Server& server, SessionManager& sessions) {
  server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { send(res, 200, {{"status", "ok"}}); });

  server.Post("/sessions", [&sessions](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      auto created = sessions.create();
      send(res, 201, {{"session-id", created.record.id}, {"greeting", to_json(created.greeting)}});
    });
  });

  server.Post(R"(/sessions/([^/]+)/messages)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("text") || !body["text"].is_string()) {
        send_error(res, 400, "invalid-request", "expected a JSON object with a string field \"text\"");
        return;
      }
      send(res, 200, to_json(sessions.post_message(req.matches[1], body["text"].get<std::string>())));
    });
  });

  server.Get(R"(/sessions/([^/]+)/model)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto snap = sessions.model(req.matches[1]);
      send(res, 200, {{"dsl", snap.dsl}, {"model", to_json(snap.model)}, {"state", to_string(snap.state)}});
    });
  });

  server.Get(R"(/sessions/([^/]+)/artifacts)", [&sessions](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto artifacts = sessions.artifacts(req.matches[1]);
      if (artifacts.empty()) {
        send_error(res, 404, "no-artifacts", "code has not been generated for this session yet");
        return;
      }
      json files = json::array();
      for (const auto& a : artifacts) files.push_back(to_json(a));
      send(res, 200, {{"platform", to_string(artifacts.front().platform)}, {"files", files}});
    });
  });
}

bool serve(SessionManager& sessions, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, sessions);
  return server.listen(host, port);
}

}  // namespace icb
