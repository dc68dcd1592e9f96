#pragma once

// Rule-based semantic parsing of a single utterance: tokenization, phrase
// classification against the lexicon, and intent matching against the
// training corpus.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icb/lexicon.hpp"
#include "icb/statechart.hpp"

namespace icb {

// Matches below this score leave ParsedInput::intent empty.
inline constexpr double kIntentThreshold = 0.5;

enum class TokenKind { Word, Number, Punct, Quoted };

struct Token {
  std::string surface;  // exact source text; Quoted tokens keep their quotes
  std::string lowered;  // Quoted tokens: lowercased inner text
  TokenKind kind = TokenKind::Word;
  std::size_t offset = 0;  // byte offset of `surface` in the utterance

  bool operator==(const Token&) const = default;
};

// Splits on whitespace and punctuation. A double-quoted span becomes one
// Quoted token; an unterminated quote is an ordinary Punct token. Only
// whitespace lies between tokens, so surfaces plus gaps rebuild the input.
std::vector<Token> tokenize(std::string_view utterance);

// A lexicon hit spanning one or more tokens ("state variable").
struct Phrase {
  std::string text;
  Term term;
};

struct PhraseClasses {
  std::vector<Phrase> verbs;          // action synonyms
  std::vector<Phrase> regular_nouns;  // concept, datatype, platform, asset-kind synonyms
  std::vector<std::string> proper_nouns;  // remaining words and quoted spans, stopwords excluded
};

PhraseClasses classify_phrases(std::span<const Token> tokens, const Lexicon& lexicon);

struct ParsedInput {
  std::optional<Intent> intent;
  double score = 0.0;
  std::optional<CrudAction> action;
  std::optional<ConceptKind> element_kind;
  std::vector<std::string> proper_nouns;
  // Placeholder bindings of the winning training sentence: "name" holds the
  // user's text, "element"/"datatype"/"platform"/"assetkind" hold canonicals.
  std::map<std::string, std::string> values;

  bool operator==(const ParsedInput&) const = default;
};

struct IntentScore {
  Intent intent;
  double score = 0.0;
  std::size_t sentence = 0;  // index into the intent's training sentences
};

class Nlu {
 public:
  explicit Nlu(std::shared_ptr<const Lexicon> lexicon);

  const Lexicon& lexicon() const noexcept { return *lexicon_; }

  // Scores the intents legal in `context` only. Similarity is Jaccard over
  // canonicalized content features (unigrams plus adjacent bigrams), with
  // training-sentence placeholders bound to compatible utterance tokens.
  // Ties go to the lexicographically smaller intent id.
  ParsedInput match_intent(std::string_view utterance, const DialogueState& context) const;

  // Best score per intent over the whole corpus, ignoring context.
  std::vector<IntentScore> score_all(std::string_view utterance) const;

 private:
  enum class UnitKind { Term, Proper, Other, Placeholder };

  // One content position after stopword removal and phrase folding.
  struct Unit {
    UnitKind kind = UnitKind::Other;
    std::string feature;  // "concept:Participant", "patient", "<name>"
    std::string surface;  // user text (quotes stripped) for bindings
    std::optional<Term> term;
  };

  struct CompiledSentence {
    Intent intent;
    std::size_t index = 0;
    std::vector<Unit> units;
  };

  std::vector<Unit> units(std::string_view text, bool allow_placeholders) const;
  double similarity(const std::vector<Unit>& utterance, const CompiledSentence& sentence,
                    std::map<std::string, std::string>* bindings) const;

  std::shared_ptr<const Lexicon> lexicon_;
  std::vector<CompiledSentence> corpus_;
};

}  // namespace icb
