#include "icb/service.hpp"

#include <chrono>
#include <ctime>

#include "icb/codegen.hpp"
#include "icb/files.hpp"
#include "icb/model_store.hpp"
#include "icb/transcript.hpp"
#include "json.hpp"

namespace icb {
namespace {

namespace fs = std::filesystem;

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view to_string(SessionStatus s) { return s == SessionStatus::Done ? "Done" : "Active"; }

std::vector<fs::path> write_artifacts(const fs::path& dir, const std::vector<GeneratedArtifact>& artifacts) {
  std::vector<fs::path> written;
  for (const auto& a : artifacts) {
    fs::path path = dir / a.filename;
    write_file_atomic(path, a.content);
    written.push_back(path);
  }
  return written;
}

SessionManager::SessionManager(fs::path workspace, std::shared_ptr<const Lexicon> lexicon, TurnObserver observer)
    : engine_(std::move(lexicon)), workspace_(std::move(workspace)), observer_(std::move(observer)) {
  fs::create_directories(workspace_);
}

SessionRecord SessionManager::make_record(const std::string& id, std::string created_at) const {
  SessionRecord r;
  r.id = id;
  r.created_at = std::move(created_at);
  r.transcript_path = workspace_ / id / "transcript.jsonl";
  r.model_path = workspace_ / id / "model.icb";
  return r;
}

void SessionManager::persist(Entry& entry) const {
  const Session& s = entry.session;
  entry.record.status = s.done() ? SessionStatus::Done : SessionStatus::Active;
  nlohmann::ordered_json meta = {{"session-id", entry.record.id},
                                 {"created-at", entry.record.created_at},
                                 {"status", to_string(entry.record.status)}};
  fs::path dir = workspace_ / entry.record.id;
  write_file_atomic(entry.record.transcript_path, to_jsonl(s.transcript));
  write_file_atomic(entry.record.model_path, serialize(s.model));
  if (s.done() && !s.artifacts.empty()) {
    write_artifacts(dir / "out" / platform_dir(s.artifacts.front().platform), s.artifacts);
  }
  write_file_atomic(dir / "session.json", meta.dump(2) + "\n");
}

std::size_t SessionManager::recover(std::vector<std::string>* skipped) {
  std::size_t restored = 0;
  for (const auto& dirent : fs::directory_iterator(workspace_)) {
    if (!dirent.is_directory()) continue;
    std::string id = dirent.path().filename().string();
    fs::path transcript = dirent.path() / "transcript.jsonl";
    if (!fs::exists(transcript)) continue;
    try {
      auto records = parse_jsonl(read_file(transcript));
      auto entry = std::make_shared<Entry>();
      entry->session = engine_.replay(records, id);
      if (!records.empty() && records.back().state_after != to_string(entry->session.state)) {
        throw Error("replay-divergence", "replayed state differs from the recorded one");
      }
      std::string created;
      if (fs::exists(dirent.path() / "session.json")) {
        auto meta = nlohmann::json::parse(read_file(dirent.path() / "session.json"));
        created = meta.value("created-at", "");
      }
      entry->record = make_record(id, created);
      persist(*entry);
      std::lock_guard lock(mu_);
      sessions_[id] = entry;
      ++restored;
    } catch (const std::exception& e) {
      if (skipped) skipped->push_back(id + ": " + e.what());
    }
  }
  return restored;
}

SessionManager::Created SessionManager::create() {
  auto entry = std::make_shared<Entry>();
  std::unique_lock lock(mu_);
  do {
    entry->session = engine_.new_session();
  } while (sessions_.contains(entry->session.id));
  entry->record = make_record(entry->session.id, utc_now());
  sessions_[entry->session.id] = entry;
  lock.unlock();

  std::lock_guard turn(entry->turn);
  persist(*entry);
  return {entry->record, engine_.greeting()};
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError("session-not-found", "no session with id " + id);
  return it->second;
}

BotResponse SessionManager::post_message(const std::string& id, std::string_view text) {
  auto entry = find(id);
  std::unique_lock turn(entry->turn, std::try_to_lock);
  if (!turn.owns_lock()) throw ServiceError("session-busy", "another message of this session is being processed");
  if (entry->session.done()) throw ServiceError("session-done", "the session is finished; start a new one");
  BotResponse response = engine_.handle_message(entry->session, text);
  if (observer_) observer_(id);
  persist(*entry);
  return response;
}

ModelSnapshot SessionManager::model(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard turn(entry->turn);
  return {serialize(entry->session.model), entry->session.model, entry->session.state};
}

std::vector<GeneratedArtifact> SessionManager::artifacts(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard turn(entry->turn);
  return entry->session.artifacts;
}

SessionRecord SessionManager::record(const std::string& id) const {
  auto entry = find(id);
  std::lock_guard turn(entry->turn);
  return entry->record;
}

std::vector<std::string> SessionManager::session_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, _] : sessions_) ids.push_back(id);
  return ids;
}

}  // namespace icb
