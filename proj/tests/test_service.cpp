#include <atomic>
#include <condition_variable>
#include <future>
#include <random>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "icb/http_api.hpp"
#include "icb/model_store.hpp"
#include "icb/service.hpp"
#include "icb/transcript.hpp"
#include "support.hpp"

using namespace icb;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("icb-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

void run(SessionManager& m, const std::string& id, const std::vector<std::string>& lines) {
  for (const auto& line : lines) m.post_message(id, line);
}

}  // namespace

TEST_CASE("a new session is persisted with its greeting") {
  TempDir ws;
  SessionManager m(ws.path);
  auto created = m.create();
  const auto dir = ws.path / created.record.id;
  CHECK(fs::exists(dir / "session.json"));
  CHECK(fs::exists(dir / "transcript.jsonl"));
  CHECK(fs::exists(dir / "model.icb"));
  CHECK(created.greeting.text == m.engine().greeting().text);
  auto meta = json::parse(test::slurp(dir / "session.json"));
  CHECK(meta["session-id"] == created.record.id);
  CHECK(meta["status"] == "Active");
  CHECK(meta["created-at"].get<std::string>().size() == 20);
  CHECK(parse_jsonl(test::slurp(dir / "transcript.jsonl")).size() == 1);
  CHECK(m.session_ids() == std::vector<std::string>{created.record.id});
}

TEST_CASE("unknown sessions are reported") {
  TempDir ws;
  SessionManager m(ws.path);
  CHECK(code_of([&] { m.post_message("nope", "hi"); }) == "session-not-found");
  CHECK(code_of([&] { m.model("nope"); }) == "session-not-found");
  CHECK(code_of([&] { m.artifacts("nope"); }) == "session-not-found");
}

TEST_CASE("a finished session writes its code and refuses further turns") {
  TempDir ws;
  SessionManager m(ws.path);
  const auto id = m.create().record.id;
  run(m, id, test::script("medical_record"));
  CHECK(m.record(id).status == SessionStatus::Done);
  CHECK(fs::exists(ws.path / id / "out" / "solidity" / "MedicalRecord.sol"));
  CHECK(m.artifacts(id).size() == 1);
  CHECK(code_of([&] { m.post_message(id, "hello"); }) == "session-done");
  auto snap = m.model(id);
  CHECK(snap.state == DialogueState::at(Node::Done));
  CHECK(snap.dsl == test::slurp(ws.path / id / "model.icb"));
  CHECK(json::parse(test::slurp(ws.path / id / "session.json"))["status"] == "Done");
}

TEST_CASE("a second message while a turn is in flight is refused") {
  TempDir ws;
  std::mutex mu;
  std::condition_variable cv;
  bool entered = false, release = false;
  SessionManager m(ws.path, Lexicon::builtin(), [&](const std::string&) {
    std::unique_lock lock(mu);
    entered = true;
    cv.notify_all();
    cv.wait(lock, [&] { return release; });
  });
  const auto id = m.create().record.id;
  auto first = std::async(std::launch::async, [&] { return m.post_message(id, "create a contract"); });
  {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return entered; });
  }
  CHECK(code_of([&] { m.post_message(id, "MedicalRecord"); }) == "session-busy");
  {
    std::lock_guard lock(mu);
    release = true;
  }
  cv.notify_all();
  CHECK(first.get().kind == ResponseKind::Prompt);
  CHECK(m.model(id).state == DialogueState::at(Node::AwaitContractName));
}

TEST_CASE("sessions survive a restart") {
  TempDir ws;
  std::string open_id, done_id;
  ModelSnapshot open_snap;
  {
    SessionManager m(ws.path);
    open_id = m.create().record.id;
    done_id = m.create().record.id;
    auto lines = test::script("vehicle_auction");
    run(m, done_id, lines);
    lines.resize(lines.size() / 2);
    run(m, open_id, lines);
    open_snap = m.model(open_id);
  }
  fs::create_directories(ws.path / "junk");
  std::ofstream(ws.path / "junk" / "transcript.jsonl") << "{not json\n";
  fs::create_directories(ws.path / "empty");
  SessionManager m(ws.path);
  std::vector<std::string> skipped;
  CHECK(m.recover(&skipped) == 2);
  CHECK(skipped.size() == 1);
  auto snap = m.model(open_id);
  CHECK(snap.state == open_snap.state);
  CHECK(snap.dsl == open_snap.dsl);
  CHECK(snap.model == open_snap.model);
  CHECK(m.record(done_id).status == SessionStatus::Done);
  CHECK(m.artifacts(done_id).size() == 2);
  CHECK_NOTHROW(m.post_message(open_id, "help"));
}

TEST_CASE("a transcript that no longer replays is skipped") {
  TempDir ws;
  std::string id;
  {
    SessionManager m(ws.path);
    id = m.create().record.id;
    m.post_message(id, "create a contract");
  }
  auto records = parse_jsonl(test::slurp(ws.path / id / "transcript.jsonl"));
  records.back().state_after = "MainMenu";
  std::ofstream(ws.path / id / "transcript.jsonl", std::ios::binary) << to_jsonl(records);
  SessionManager m(ws.path);
  std::vector<std::string> skipped;
  CHECK(m.recover(&skipped) == 0);
  REQUIRE(skipped.size() == 1);
  CHECK(skipped[0].find(id) != std::string::npos);
}

TEST_CASE("write_artifacts lays files out by name") {
  TempDir ws;
  auto s = test::run_script(DialogueEngine(), test::script("digital_certificate"));
  auto paths = write_artifacts(ws.path, s.artifacts);
  REQUIRE(paths.size() == 2);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    CHECK(paths[i] == ws.path / s.artifacts[i].filename);
    CHECK(test::slurp(paths[i]) == s.artifacts[i].content);
  }
}

TEST_CASE("HTTP API") {
  TempDir ws;
  SessionManager m(ws.path);
  httplib::Server server;
  register_routes(server, m);
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  auto get = [&](const std::string& path) { return client.Get(path); };
  auto post = [&](const std::string& path, const std::string& body) {
    return client.Post(path, body, "application/json");
  };
  auto say = [&](const std::string& id, const std::string& text) {
    return post("/sessions/" + id + "/messages", json{{"text", text}}.dump());
  };

  auto res = get("/healthz");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["status"] == "ok");

  res = post("/sessions", "");
  REQUIRE(res);
  CHECK(res->status == 201);
  auto body = json::parse(res->body);
  const auto id = body["session-id"].get<std::string>();
  CHECK(body["greeting"]["kind"] == "Prompt");
  CHECK(res->get_header_value("Content-Type").find("application/json") == 0);

  res = get("/sessions/" + id + "/artifacts");
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["code"] == "no-artifacts");

  res = post("/sessions/" + id + "/messages", "not json");
  CHECK(res->status == 400);
  CHECK(json::parse(res->body)["code"] == "invalid-request");
  res = post("/sessions/" + id + "/messages", R"({"text": 3})");
  CHECK(res->status == 400);

  res = say("missing", "hello");
  CHECK(res->status == 404);
  CHECK(json::parse(res->body)["code"] == "session-not-found");
  CHECK(get("/sessions/missing/model")->status == 404);

  auto lines = test::script("medical_record");
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    res = say(id, lines[i]);
    REQUIRE(res->status == 200);
  }
  res = get("/sessions/" + id + "/model");
  REQUIRE(res->status == 200);
  body = json::parse(res->body);
  CHECK(body["state"] == "MainMenu");
  CHECK(body["model"]["contract"] == "MedicalRecord");
  CHECK(body["model"]["platform"] == "Solidity");
  CHECK(body["model"]["participants"][0]["name"] == "patient");
  CHECK(body["model"]["participants"][0]["creator"] == true);
  CHECK(body["model"]["assets"][0]["kind"] == "Intangible");
  auto expected = m.model(id).model;
  expected.trace.clear();
  CHECK(parse_dsl(body["dsl"].get<std::string>()) == expected);

  res = say(id, lines.back());
  body = json::parse(res->body);
  CHECK(body["kind"] == "CodeReady");
  CHECK(body["artifacts"].size() == 1);

  res = get("/sessions/" + id + "/artifacts");
  REQUIRE(res->status == 200);
  body = json::parse(res->body);
  CHECK(body["platform"] == "Solidity");
  CHECK(body["files"][0]["filename"] == "MedicalRecord.sol");
  CHECK(body["files"][0]["content"] == m.artifacts(id)[0].content);
  CHECK(body["files"][0]["provenance"].size() >= 3);

  res = say(id, "hello");
  CHECK(res->status == 409);
  CHECK(json::parse(res->body)["code"] == "session-done");

  server.stop();
  th.join();
}
