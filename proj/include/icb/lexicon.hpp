#pragma once

// The intermediate layer between conversation and meta-model: synonym
// tables that canonicalize user vocabulary, plus the training sentences
// that define each intent.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icb/error.hpp"
#include "icb/metamodel.hpp"
#include "icb/statechart.hpp"

namespace icb {

enum class TermKind { Concept, Action, DataType, Platform, AssetKind, Reply, Stopword };

enum class Reply { Yes, No, Done };

std::string_view to_string(TermKind k);
std::string_view to_string(Reply r);

// A synonym resolved to its canonical target, e.g. "role" -> {Concept, "Participant"}.
struct Term {
  TermKind kind = TermKind::Concept;
  std::string canonical;

  bool operator==(const Term&) const = default;
};

class LexiconError : public Error {
 public:
  LexiconError(std::size_t line, const std::string& message)
      : Error("lexicon-error", "line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class Lexicon {
 public:
  // Parses `kind<TAB>canonical<TAB>synonym` and `intent<TAB>sentence`
  // records. Blank lines and '#' comments are skipped. Throws LexiconError
  // on malformed records, unknown kinds/canonicals/intents, a synonym
  // listed twice, or an intent with fewer than three sentences.
  static Lexicon parse(std::string_view lexicon_text, std::string_view corpus_text);

  // The lexicon and corpus shipped with the library.
  static std::shared_ptr<const Lexicon> builtin();

  // Exact lookups after lowercasing and trimming; no fuzzy matching.
  std::optional<ConceptKind> normalize_concept(std::string_view term) const;
  std::optional<CrudAction> normalize_action(std::string_view term) const;
  std::optional<DataType> normalize_datatype(std::string_view term) const;
  std::optional<PlatformTarget> normalize_platform(std::string_view term) const;
  std::optional<AssetKind> normalize_asset_kind(std::string_view term) const;
  std::optional<Reply> normalize_reply(std::string_view term) const;
  bool is_stopword(std::string_view term) const;

  // Any non-stopword table.
  std::optional<Term> lookup(std::string_view term) const;

  // Longest synonym, in words. Phrase matching never needs to look further.
  std::size_t max_phrase_words() const noexcept { return max_words_; }

  // All synonyms of a canonical target, in file order.
  std::vector<std::string> synonyms(TermKind kind, std::string_view canonical) const;
  std::vector<std::string> synonyms(TermKind kind) const;

  const std::vector<std::string>& training_sentences(Intent intent) const;
  // Throws Error("unknown-intent") for ids outside the intent vocabulary.
  const std::vector<std::string>& training_sentences(std::string_view intent_id) const;

 private:
  std::map<std::string, Term> terms_;  // includes stopwords
  std::vector<std::pair<std::string, Term>> ordered_;
  std::map<Intent, std::vector<std::string>> corpus_;
  std::size_t max_words_ = 1;
};

}  // namespace icb
