#include "icb/lexicon.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "icb/embedded.hpp"
#include "icb/utf8.hpp"

namespace icb {

std::string_view to_string(TermKind k) {
  switch (k) {
    case TermKind::Concept: return "concept";
    case TermKind::Action: return "action";
    case TermKind::DataType: return "datatype";
    case TermKind::Platform: return "platform";
    case TermKind::AssetKind: return "assetkind";
    case TermKind::Reply: return "reply";
    case TermKind::Stopword: return "stopword";
  }
  return "?";
}

std::string_view to_string(Reply r) {
  switch (r) {
    case Reply::Yes: return "Yes";
    case Reply::No: return "No";
    case Reply::Done: return "Done";
  }
  return "?";
}

namespace {

std::optional<TermKind> parse_term_kind(std::string_view s) {
  for (auto k : {TermKind::Concept, TermKind::Action, TermKind::DataType, TermKind::Platform,
                 TermKind::AssetKind, TermKind::Reply, TermKind::Stopword}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<Reply> parse_reply(std::string_view s) {
  for (auto r : {Reply::Yes, Reply::No, Reply::Done}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

bool canonical_valid(TermKind kind, std::string_view c) {
  switch (kind) {
    case TermKind::Concept: return parse_concept(c).has_value();
    case TermKind::Action: return parse_action(c).has_value();
    case TermKind::DataType: return parse_datatype(c).has_value();
    case TermKind::Platform: return parse_platform(c).has_value();
    case TermKind::AssetKind: return parse_asset_kind(c).has_value();
    case TermKind::Reply: return parse_reply(c).has_value();
    case TermKind::Stopword: return true;
  }
  return false;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

// Collapses internal whitespace so "state   variable" and "state variable" agree.
std::string normalize_key(std::string_view term) {
  std::istringstream in(utf8::to_lower(utf8::trim(term)));
  std::string word;
  std::string out;
  while (in >> word) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

template <typename F>
void for_each_record(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string trimmed = utf8::trim(line);
    if (!trimmed.empty() && trimmed.front() != '#') f(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace

Lexicon Lexicon::parse(std::string_view lexicon_text, std::string_view corpus_text) {
  Lexicon lex;
  for_each_record(lexicon_text, [&](std::size_t line_no, std::string_view line) {
    auto fields = split_tabs(line);
    if (fields.size() != 3) throw LexiconError(line_no, "expected kind<TAB>canonical<TAB>synonym");
    auto kind = parse_term_kind(utf8::trim(fields[0]));
    if (!kind) throw LexiconError(line_no, "unknown kind '" + std::string(fields[0]) + "'");
    const std::string canonical = utf8::trim(fields[1]);
    if (!canonical_valid(*kind, canonical)) {
      throw LexiconError(line_no, "unknown canonical '" + canonical + "' for kind " + std::string(to_string(*kind)));
    }
    const std::string key = normalize_key(fields[2]);
    if (key.empty()) throw LexiconError(line_no, "empty synonym");
    Term term{*kind, canonical};
    auto [it, inserted] = lex.terms_.emplace(key, term);
    if (!inserted) {
      throw LexiconError(line_no, "synonym '" + key + "' already maps to " + std::string(to_string(it->second.kind)) +
                                      " " + it->second.canonical);
    }
    lex.ordered_.emplace_back(key, term);
    const auto words = static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
    lex.max_words_ = std::max(lex.max_words_, words);
  });

  // Every member of each closed vocabulary needs at least one synonym.
  auto require_all = [&](TermKind kind, const auto& values) {
    for (auto v : values) {
      if (lex.synonyms(kind, to_string(v)).empty()) {
        throw LexiconError(0, "no synonym for " + std::string(to_string(kind)) + " " + std::string(to_string(v)));
      }
    }
  };
  require_all(TermKind::Concept, kAllConcepts);
  require_all(TermKind::Action, kAllActions);
  require_all(TermKind::DataType, kAllDataTypes);
  require_all(TermKind::Platform, kAllPlatforms);

  for_each_record(corpus_text, [&](std::size_t line_no, std::string_view line) {
    auto fields = split_tabs(line);
    if (fields.size() != 2) throw LexiconError(line_no, "expected intent<TAB>sentence");
    auto intent = parse_intent(utf8::trim(fields[0]));
    if (!intent) throw LexiconError(line_no, "unknown intent '" + std::string(fields[0]) + "'");
    const std::string sentence = utf8::trim(fields[1]);
    if (sentence.empty()) throw LexiconError(line_no, "empty training sentence");
    lex.corpus_[*intent].push_back(sentence);
  });
  for (Intent i : kAllIntents) {
    if (lex.corpus_[i].size() < 3) {
      throw LexiconError(0, "intent " + std::string(to_string(i)) + " has fewer than 3 training sentences");
    }
  }
  return lex;
}

std::shared_ptr<const Lexicon> Lexicon::builtin() {
  static const std::shared_ptr<const Lexicon> instance = std::make_shared<const Lexicon>(
      parse(embedded::lookup("data/lexicon.tsv").value(), embedded::lookup("data/training.tsv").value()));
  return instance;
}

std::optional<Term> Lexicon::lookup(std::string_view term) const {
  auto it = terms_.find(normalize_key(term));
  if (it == terms_.end() || it->second.kind == TermKind::Stopword) return std::nullopt;
  return it->second;
}

namespace {
template <typename T, typename Parse>
std::optional<T> lookup_as(const Lexicon& lex, std::string_view term, TermKind kind, Parse parse) {
  auto hit = lex.lookup(term);
  if (!hit || hit->kind != kind) return std::nullopt;
  return parse(hit->canonical);
}
}  // namespace

std::optional<ConceptKind> Lexicon::normalize_concept(std::string_view term) const {
  return lookup_as<ConceptKind>(*this, term, TermKind::Concept, parse_concept);
}
std::optional<CrudAction> Lexicon::normalize_action(std::string_view term) const {
  return lookup_as<CrudAction>(*this, term, TermKind::Action, parse_action);
}
std::optional<DataType> Lexicon::normalize_datatype(std::string_view term) const {
  return lookup_as<DataType>(*this, term, TermKind::DataType, parse_datatype);
}
std::optional<PlatformTarget> Lexicon::normalize_platform(std::string_view term) const {
  return lookup_as<PlatformTarget>(*this, term, TermKind::Platform, parse_platform);
}
std::optional<AssetKind> Lexicon::normalize_asset_kind(std::string_view term) const {
  return lookup_as<AssetKind>(*this, term, TermKind::AssetKind, parse_asset_kind);
}
std::optional<Reply> Lexicon::normalize_reply(std::string_view term) const {
  return lookup_as<Reply>(*this, term, TermKind::Reply, parse_reply);
}

bool Lexicon::is_stopword(std::string_view term) const {
  auto it = terms_.find(normalize_key(term));
  return it != terms_.end() && it->second.kind == TermKind::Stopword;
}

std::vector<std::string> Lexicon::synonyms(TermKind kind, std::string_view canonical) const {
  std::vector<std::string> out;
  for (const auto& [key, term] : ordered_) {
    if (term.kind == kind && term.canonical == canonical) out.push_back(key);
  }
  return out;
}

std::vector<std::string> Lexicon::synonyms(TermKind kind) const {
  std::vector<std::string> out;
  for (const auto& [key, term] : ordered_) {
    if (term.kind == kind) out.push_back(key);
  }
  return out;
}

const std::vector<std::string>& Lexicon::training_sentences(Intent intent) const {
  return corpus_.at(intent);
}

const std::vector<std::string>& Lexicon::training_sentences(std::string_view intent_id) const {
  auto intent = parse_intent(intent_id);
  if (!intent) throw Error("unknown-intent", "unknown intent '" + std::string(intent_id) + "'");
  return training_sentences(*intent);
}

}  // namespace icb
