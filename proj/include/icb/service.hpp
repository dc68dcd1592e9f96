#pragma once

// Session persistence and per-session turn serialization shared by the HTTP
// API and the CLI.
//
// Workspace layout, one directory per session:
//
//   <workspace>/<session-id>/session.json       created-at, status
//   <workspace>/<session-id>/transcript.jsonl   every turn, greeting first
//   <workspace>/<session-id>/model.icb          current model, DSL form
//   <workspace>/<session-id>/out/<platform>/    generated files, once Done
//
// Every file is rewritten atomically after each turn. The transcript is the
// source of truth: recovery replays it through the dialogue engine.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icb/dialogue.hpp"
#include "icb/error.hpp"

namespace icb {

enum class SessionStatus { Active, Done };

std::string_view to_string(SessionStatus s);

struct SessionRecord {
  std::string id;
  std::string created_at;  // UTC, ISO 8601
  std::filesystem::path transcript_path;
  std::filesystem::path model_path;
  SessionStatus status = SessionStatus::Active;
};

// Codes: session-not-found, session-busy, session-done.
class ServiceError : public Error {
 public:
  using Error::Error;
};

struct ModelSnapshot {
  std::string dsl;
  ContractModel model;
  DialogueState state;
};

class SessionManager {
 public:
  // Called with the session id while a turn holds the session, before the
  // turn is persisted.
  using TurnObserver = std::function<void(const std::string&)>;

  explicit SessionManager(std::filesystem::path workspace,
                          std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin(), TurnObserver observer = {});

  // Replays every persisted transcript in the workspace. Returns the number
  // of sessions restored; unreadable directories are skipped and reported
  // in `skipped`.
  std::size_t recover(std::vector<std::string>* skipped = nullptr);

  struct Created {
    SessionRecord record;
    BotResponse greeting;
  };
  Created create();

  // Fails with session-busy while another message of the same session is
  // in flight; turns never queue.
  BotResponse post_message(const std::string& id, std::string_view text);

  ModelSnapshot model(const std::string& id) const;
  // Empty until the session is Done.
  std::vector<GeneratedArtifact> artifacts(const std::string& id) const;
  SessionRecord record(const std::string& id) const;
  std::vector<std::string> session_ids() const;

  const std::filesystem::path& workspace() const noexcept { return workspace_; }
  const DialogueEngine& engine() const noexcept { return engine_; }

 private:
  struct Entry {
    mutable std::mutex turn;
    Session session;
    SessionRecord record;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  SessionRecord make_record(const std::string& id, std::string created_at) const;
  void persist(Entry& entry) const;

  DialogueEngine engine_;
  std::filesystem::path workspace_;
  TurnObserver observer_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

// Writes `artifacts` under `dir` and returns the paths written.
std::vector<std::filesystem::path> write_artifacts(const std::filesystem::path& dir,
                                                   const std::vector<GeneratedArtifact>& artifacts);

}  // namespace icb
