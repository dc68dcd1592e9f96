#include "icb/nlu.hpp"

#include <algorithm>
#include <set>

#include "icb/utf8.hpp"

namespace icb {

namespace {

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'A' && u <= 'Z') || (u >= 'a' && u <= 'z') || u == '_' || u >= 0x80;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '"') {
      const auto close = text.find('"', i + 1);
      if (close != std::string_view::npos) {
        const auto surface = text.substr(i, close - i + 1);
        out.push_back({std::string(surface), utf8::to_lower(utf8::trim(surface.substr(1, surface.size() - 2))),
                       TokenKind::Quoted, i});
        i = close + 1;
        continue;
      }
    }
    if (is_word_byte(c)) {
      std::size_t j = i;
      while (j < text.size()) {
        if (is_word_byte(text[j])) {
          ++j;
        } else if (text[j] == '\'' && j + 1 < text.size() && is_word_byte(text[j + 1]) && j > i) {
          j += 1;
        } else if (text[j] == '.' && j + 1 < text.size() && is_digit(text[j + 1]) &&
                   std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i),
                               text.begin() + static_cast<std::ptrdiff_t>(j), is_digit)) {
          j += 1;
        } else {
          break;
        }
      }
      const auto surface = text.substr(i, j - i);
      const bool numeric = std::all_of(surface.begin(), surface.end(), [](char x) { return is_digit(x) || x == '.'; });
      out.push_back({std::string(surface), utf8::to_lower(surface), numeric ? TokenKind::Number : TokenKind::Word, i});
      i = j;
      continue;
    }
    out.push_back({std::string(1, c), std::string(1, c), TokenKind::Punct, i});
    ++i;
  }
  return out;
}

namespace {

// Longest lexicon phrase starting at token `start`, over consecutive Word tokens.
std::optional<std::pair<std::size_t, Term>> longest_phrase(std::span<const Token> tokens, std::size_t start,
                                                           const Lexicon& lexicon) {
  std::string phrase;
  std::optional<std::pair<std::size_t, Term>> best;
  for (std::size_t n = 0; n < lexicon.max_phrase_words() && start + n < tokens.size(); ++n) {
    const Token& t = tokens[start + n];
    if (t.kind != TokenKind::Word) break;
    if (n > 0) phrase += ' ';
    phrase += t.lowered;
    if (auto term = lexicon.lookup(phrase)) best = std::make_pair(n + 1, *term);
  }
  return best;
}

std::string term_feature(const Term& term) {
  return std::string(to_string(term.kind)) + ":" + term.canonical;
}

std::string join_surfaces(std::span<const Token> tokens, std::size_t start, std::size_t count) {
  std::string out;
  for (std::size_t k = 0; k < count; ++k) {
    if (k) out += ' ';
    out += tokens[start + k].lowered;
  }
  return out;
}

std::string unquote(const Token& t) {
  if (t.kind != TokenKind::Quoted) return t.surface;
  return utf8::trim(std::string_view(t.surface).substr(1, t.surface.size() - 2));
}

}  // namespace

PhraseClasses classify_phrases(std::span<const Token> tokens, const Lexicon& lexicon) {
  PhraseClasses out;
  for (std::size_t i = 0; i < tokens.size();) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::Quoted) {
      out.proper_nouns.push_back(unquote(t));
      ++i;
      continue;
    }
    if (t.kind != TokenKind::Word) {
      ++i;
      continue;
    }
    if (auto hit = longest_phrase(tokens, i, lexicon)) {
      const auto& [len, term] = *hit;
      Phrase phrase{join_surfaces(tokens, i, len), term};
      if (term.kind == TermKind::Action) {
        out.verbs.push_back(std::move(phrase));
      } else if (term.kind != TermKind::Reply) {
        out.regular_nouns.push_back(std::move(phrase));
      }
      i += len;
      continue;
    }
    if (!lexicon.is_stopword(t.lowered)) out.proper_nouns.push_back(t.surface);
    ++i;
  }
  return out;
}

Nlu::Nlu(std::shared_ptr<const Lexicon> lexicon) : lexicon_(std::move(lexicon)) {
  for (Intent intent : kAllIntents) {
    const auto& sentences = lexicon_->training_sentences(intent);
    for (std::size_t k = 0; k < sentences.size(); ++k) {
      corpus_.push_back({intent, k, units(sentences[k], true)});
    }
  }
}

std::vector<Nlu::Unit> Nlu::units(std::string_view text, bool allow_placeholders) const {
  const auto tokens = tokenize(text);
  std::vector<Unit> out;
  for (std::size_t i = 0; i < tokens.size();) {
    const Token& t = tokens[i];
    if (allow_placeholders && t.kind == TokenKind::Punct && t.surface == "<" && i + 2 < tokens.size() &&
        tokens[i + 1].kind == TokenKind::Word && tokens[i + 2].surface == ">") {
      const std::string slot = tokens[i + 1].lowered;
      out.push_back({UnitKind::Placeholder, "<" + slot + ">", slot, std::nullopt});
      i += 3;
      continue;
    }
    if (t.kind == TokenKind::Quoted) {
      out.push_back({UnitKind::Proper, t.lowered, unquote(t), std::nullopt});
      ++i;
      continue;
    }
    if (t.kind == TokenKind::Number) {
      out.push_back({UnitKind::Other, t.lowered, t.surface, std::nullopt});
      ++i;
      continue;
    }
    if (t.kind != TokenKind::Word) {
      ++i;
      continue;
    }
    if (auto hit = longest_phrase(tokens, i, *lexicon_)) {
      const auto& [len, term] = *hit;
      out.push_back({UnitKind::Term, term_feature(term), join_surfaces(tokens, i, len), term});
      i += len;
      continue;
    }
    if (!lexicon_->is_stopword(t.lowered)) out.push_back({UnitKind::Proper, t.lowered, t.surface, std::nullopt});
    ++i;
  }
  return out;
}

namespace {

bool slot_accepts(std::string_view slot, const std::optional<Term>& term, bool proper) {
  if (slot == "name") return proper;
  if (!term) return false;
  if (slot == "element") {
    return term->kind == TermKind::Concept &&
           (term->canonical == "Participant" || term->canonical == "Asset" || term->canonical == "Transaction");
  }
  if (slot == "datatype") return term->kind == TermKind::DataType;
  if (slot == "platform") return term->kind == TermKind::Platform;
  if (slot == "assetkind") return term->kind == TermKind::AssetKind;
  return false;
}

std::set<std::string> feature_set(const std::vector<std::string>& seq) {
  std::set<std::string> out(seq.begin(), seq.end());
  for (std::size_t i = 1; i < seq.size(); ++i) out.insert(seq[i - 1] + "|" + seq[i]);
  return out;
}

}  // namespace

double Nlu::similarity(const std::vector<Unit>& utterance, const CompiledSentence& sentence,
                       std::map<std::string, std::string>* bindings) const {
  std::vector<bool> used(utterance.size(), false);
  std::vector<std::string> filled;
  filled.reserve(sentence.units.size());
  for (const Unit& u : sentence.units) filled.push_back(u.feature);

  // Literals claim their matching utterance units first, so a placeholder
  // never swallows a word the sentence spells out.
  for (const Unit& u : sentence.units) {
    if (u.kind == UnitKind::Placeholder) continue;
    for (std::size_t k = 0; k < utterance.size(); ++k) {
      if (!used[k] && utterance[k].feature == u.feature) {
        used[k] = true;
        break;
      }
    }
  }
  for (std::size_t s = 0; s < sentence.units.size(); ++s) {
    const Unit& u = sentence.units[s];
    if (u.kind != UnitKind::Placeholder) continue;
    for (std::size_t k = 0; k < utterance.size(); ++k) {
      if (used[k] || !slot_accepts(u.surface, utterance[k].term, utterance[k].kind == UnitKind::Proper)) continue;
      used[k] = true;
      filled[s] = utterance[k].feature;
      if (bindings) {
        (*bindings)[u.surface] = utterance[k].term ? utterance[k].term->canonical : utterance[k].surface;
      }
      break;
    }
  }

  std::vector<std::string> said;
  said.reserve(utterance.size());
  for (const Unit& u : utterance) said.push_back(u.feature);
  const auto a = feature_set(said);
  const auto b = feature_set(filled);
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& f : a) common += b.count(f);
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

std::vector<IntentScore> Nlu::score_all(std::string_view utterance) const {
  const auto said = units(utterance, false);
  std::vector<IntentScore> out;
  for (const auto& sentence : corpus_) {
    const double score = similarity(said, sentence, nullptr);
    auto it = std::find_if(out.begin(), out.end(), [&](const IntentScore& s) { return s.intent == sentence.intent; });
    if (it == out.end()) {
      out.push_back({sentence.intent, score, sentence.index});
    } else if (score > it->score) {
      it->score = score;
      it->sentence = sentence.index;
    }
  }
  return out;
}

ParsedInput Nlu::match_intent(std::string_view utterance, const DialogueState& context) const {
  ParsedInput parsed;
  const auto tokens = tokenize(utterance);
  const auto classes = classify_phrases(tokens, *lexicon_);
  for (const auto& verb : classes.verbs) {
    if (!parsed.action) parsed.action = parse_action(verb.term.canonical);
  }
  for (const auto& noun : classes.regular_nouns) {
    if (!parsed.element_kind && noun.term.kind == TermKind::Concept) parsed.element_kind = parse_concept(noun.term.canonical);
  }
  parsed.proper_nouns = classes.proper_nouns;

  const auto said = units(utterance, false);
  const CompiledSentence* best = nullptr;
  double best_score = 0.0;
  for (const auto& sentence : corpus_) {
    if (!is_legal(context, sentence.intent)) continue;
    const double score = similarity(said, sentence, nullptr);
    const bool better = !best || score > best_score ||
                        (score == best_score && sentence.intent != best->intent &&
                         to_string(sentence.intent) < to_string(best->intent));
    if (better) {
      best = &sentence;
      best_score = score;
    }
  }
  parsed.score = best_score;
  if (best && best_score >= kIntentThreshold) {
    parsed.intent = best->intent;
    similarity(said, *best, &parsed.values);
  }
  return parsed;
}

}  // namespace icb
