// icb: conversational smart-contract builder.
//
//   icb chat [--out DIR] [--transcript FILE]
//   icb serve [--port N] [--host H] [--workspace DIR]
//   icb compile MODEL.icb [--platform P] [--out DIR]
//   icb replay TRANSCRIPT.jsonl [--out DIR]
//
// compile exits 0 on success, 1 on validation errors (one per line on
// stdout), 2 on unreadable input, syntax errors or an unknown platform.
// replay exits 1 when the replayed conversation diverges from the record.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "icb/codegen.hpp"
#include "icb/dialogue.hpp"
#include "icb/embedded.hpp"
#include "icb/files.hpp"
#include "icb/http_api.hpp"
#include "icb/model_store.hpp"
#include "icb/service.hpp"
#include "icb/transcript.hpp"
#include "icb/validator.hpp"

namespace {

namespace fs = std::filesystem;

std::shared_ptr<const icb::Lexicon> load_lexicon(const std::string& lexicon_path, const std::string& training_path) {
  if (lexicon_path.empty() && training_path.empty()) return icb::Lexicon::builtin();
  auto builtin = [](const char* name) { return std::string(*icb::embedded::lookup(name)); };
  std::string lexicon = lexicon_path.empty() ? builtin("data/lexicon.tsv") : icb::read_file(lexicon_path);
  std::string training = training_path.empty() ? builtin("data/training.tsv") : icb::read_file(training_path);
  return std::make_shared<const icb::Lexicon>(icb::Lexicon::parse(lexicon, training));
}

void print_response(const icb::BotResponse& r) {
  std::cout << "bot> " << r.text << "\n";
  if (!r.suggestions.empty()) {
    std::cout << "     [";
    for (std::size_t i = 0; i < r.suggestions.size(); ++i) std::cout << (i ? " | " : "") << r.suggestions[i];
    std::cout << "]\n";
  }
}

int run_chat(const icb::DialogueEngine& engine, const std::string& out_dir, const std::string& transcript_path) {
  icb::Session session = engine.new_session();
  print_response(engine.greeting());
  std::string line;
  while (!session.done() && (std::cout << "you> " << std::flush, std::getline(std::cin, line))) {
    auto r = engine.handle_message(session, line);
    print_response(r);
    for (const auto& a : r.artifacts) std::cout << "\n--- " << a.filename << " ---\n" << a.content;
  }
  if (!transcript_path.empty()) icb::write_file_atomic(transcript_path, icb::to_jsonl(session.transcript));
  if (!out_dir.empty() && session.done()) {
    for (const auto& p : icb::write_artifacts(out_dir, session.artifacts)) std::cout << "wrote " << p.string() << "\n";
  }
  return 0;
}

int run_compile(const icb::Lexicon& lexicon, const std::string& input, const std::string& platform,
                const std::string& out_dir) {
  icb::ContractModel model;
  try {
    model = icb::load_model(input);
  } catch (const icb::SyntaxError& e) {
    std::cerr << input << ": syntax error: " << e.what() << "\n";
    return 2;
  } catch (const icb::Error& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return 2;
  }
  if (!platform.empty()) {
    auto p = lexicon.normalize_platform(platform);
    if (!p) {
      std::cerr << "unknown platform: " << platform << "\n";
      return 2;
    }
    model.platform = *p;
  }
  auto violations = icb::validate(model);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cout << icb::to_string(v.rule) << ": " << v.message << "\n";
    return 1;
  }
  for (const auto& p : icb::write_artifacts(out_dir, icb::generate(model, *model.platform))) {
    std::cout << "wrote " << p.string() << "\n";
  }
  return 0;
}

int run_replay(const icb::DialogueEngine& engine, const std::string& input, const std::string& out_dir) {
  auto recorded = icb::parse_jsonl(icb::read_file(input));
  icb::Session session = engine.replay(recorded);
  const auto& replayed = session.transcript;
  std::size_t n = std::min(recorded.size(), replayed.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!(recorded[i] == replayed[i])) {
      std::cerr << "divergence at turn " << recorded[i].turn_id << " (" << recorded[i].role << ")\n"
                << "  recorded: " << icb::to_json_line(recorded[i]) << "\n"
                << "  replayed: " << icb::to_json_line(replayed[i]) << "\n";
      return 1;
    }
  }
  if (recorded.size() != replayed.size()) {
    std::cerr << "divergence: " << recorded.size() << " records recorded, " << replayed.size() << " replayed\n";
    return 1;
  }
  std::cout << "state: " << icb::to_string(session.state) << "\n--- model.icb ---\n" << icb::serialize(session.model);
  for (const auto& a : session.artifacts) std::cout << "--- " << a.filename << " ---\n" << a.content;
  if (!out_dir.empty()) icb::write_artifacts(out_dir, session.artifacts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conversational smart-contract builder"};
  app.require_subcommand(1);
  std::string lexicon_path, training_path;
  app.add_option("--lexicon", lexicon_path, "Synonym table replacing the built-in one")->check(CLI::ExistingFile);
  app.add_option("--training", training_path, "Training corpus replacing the built-in one")->check(CLI::ExistingFile);

  auto* chat = app.add_subcommand("chat", "Interactive conversation on the terminal");
  std::string chat_out, chat_transcript;
  chat->add_option("--out", chat_out, "Directory for the generated files");
  chat->add_option("--transcript", chat_transcript, "Write the conversation as JSON lines");

  auto* serve = app.add_subcommand("serve", "HTTP conversation API");
  int port = 8080;
  std::string host = "0.0.0.0";
  const char* env_ws = std::getenv("ICB_WORKSPACE");
  std::string workspace = env_ws ? env_ws : "workspace";
  serve->add_option("--port", port, "Listening port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Listening address");
  serve->add_option("--workspace", workspace, "Session directory (default: $ICB_WORKSPACE or ./workspace)");

  auto* compile = app.add_subcommand("compile", "Validate a model file and generate code");
  std::string compile_in, platform, compile_out = ".";
  compile->add_option("model", compile_in, "Model in DSL form")->required();
  compile->add_option("--platform", platform, "Target platform; overrides the model's Platform line");
  compile->add_option("--out", compile_out, "Output directory");

  auto* replay = app.add_subcommand("replay", "Re-run a recorded transcript and check it reproduces");
  std::string replay_in, replay_out;
  replay->add_option("transcript", replay_in, "Transcript in JSON lines")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", replay_out, "Directory for the generated files");

  CLI11_PARSE(app, argc, argv);

  try {
    auto lexicon = load_lexicon(lexicon_path, training_path);
    if (compile->parsed()) return run_compile(*lexicon, compile_in, platform, compile_out);
    icb::DialogueEngine engine(lexicon);
    if (chat->parsed()) return run_chat(engine, chat_out, chat_transcript);
    if (replay->parsed()) return run_replay(engine, replay_in, replay_out);
    icb::SessionManager sessions(workspace, lexicon);
    std::vector<std::string> skipped;
    std::size_t restored = sessions.recover(&skipped);
    for (const auto& s : skipped) std::cerr << "not restored: " << s << "\n";
    std::cerr << "restored " << restored << " session(s); listening on " << host << ":" << port << "\n";
    if (!icb::serve(sessions, host, port)) {
      std::cerr << "cannot listen on " << host << ":" << port << "\n";
      return 1;
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
