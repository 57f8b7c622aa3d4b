#include "xlingsim/text.hpp"

#include <stdexcept>
#include <utility>

#include "internal_io.hpp"
#include "xlingsim/errors.hpp"

namespace xlingsim {

namespace {

constexpr std::array<const char*, 13> kTagNames = {
    "ADJ", "ADP", "ADV", "CONJ", "DET", "NOUN", "NUM",
    "PRON", "PRT", "VERB", "X", "PUNCT", "UNKNOWN"};

}  // namespace

const char* to_string(PosTag tag) {
  return kTagNames[static_cast<std::size_t>(tag)];
}

PosTag tag_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (name == kTagNames[i]) {
      return static_cast<PosTag>(i);
    }
  }
  if (name == ".") {  // the universal tagset spells the punctuation tag "."
    return PosTag::Punct;
  }
  throw std::invalid_argument("unknown POS tag: " + name);
}

const std::array<PosTag, kUniversalTagCount>& universal_tags() {
  static const std::array<PosTag, kUniversalTagCount> tags = {
      PosTag::Adj,  PosTag::Adp, PosTag::Adv,  PosTag::Conj,
      PosTag::Det,  PosTag::Noun, PosTag::Num, PosTag::Pron,
      PosTag::Prt,  PosTag::Verb, PosTag::X,   PosTag::Punct};
  return tags;
}

std::string normalize_text(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    char mapped;
    if (c >= 'a' && c <= 'z') {
      mapped = static_cast<char>(c);
    } else if (c >= 'A' && c <= 'Z') {
      mapped = static_cast<char>(c - 'A' + 'a');
    } else if (c >= '0' && c <= '9') {
      mapped = static_cast<char>(c);
    } else if (c == ' ') {
      pending_space = true;
      continue;
    } else {
      continue;  // deleted, not transliterated
    }
    if (pending_space && !out.empty()) {
      out.push_back(' ');
    }
    pending_space = false;
    out.push_back(mapped);
  }
  return out;
}

std::vector<Token> tokenize(const std::string& normalized,
                            const std::string& lang) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < normalized.size()) {
    while (i < normalized.size() && normalized[i] == ' ') ++i;
    std::size_t start = i;
    while (i < normalized.size() && normalized[i] != ' ') ++i;
    if (i > start) {
      std::string word = normalized.substr(start, i - start);
      tokens.push_back(Token{word, word, PosTag::Unknown, lang});
    }
  }
  return tokens;
}

Sentence make_sentence(std::string lang, std::string raw) {
  Sentence s;
  s.normalized = normalize_text(raw);
  s.tokens = tokenize(s.normalized, lang);
  s.lang = std::move(lang);
  s.raw = std::move(raw);
  return s;
}

std::vector<std::string> char_ngrams(const std::string& normalized, int n) {
  if (n < 1) {
    throw std::invalid_argument("n-gram size must be >= 1");
  }
  std::vector<std::string> grams;
  const std::size_t len = normalized.size();
  const auto un = static_cast<std::size_t>(n);
  if (len < un) {
    return grams;
  }
  grams.reserve(len - un + 1);
  for (std::size_t i = 0; i + un <= len; ++i) {
    grams.push_back(normalized.substr(i, un));
  }
  return grams;
}

std::vector<Token> filter_stops(const std::vector<Token>& tokens,
                                const StopList& stops) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (t.lang != stops.lang) {
      throw std::invalid_argument("stop list language '" + stops.lang +
                                  "' does not match token language '" +
                                  t.lang + "'");
    }
    if (!stops.contains(t.normalized)) {
      kept.push_back(t);
    }
  }
  return kept;
}

std::vector<Token> pos_tag(const std::vector<Token>& tokens,
                           const TagLexicon& lex) {
  std::vector<Token> tagged;
  tagged.reserve(tokens.size());
  for (const Token& t : tokens) {
    if (t.lang != lex.lang) {
      throw std::invalid_argument("tag lexicon language '" + lex.lang +
                                  "' does not match token language '" +
                                  t.lang + "'");
    }
    Token out = t;
    auto it = lex.entries.find(t.normalized);
    out.pos = it != lex.entries.end() ? it->second : PosTag::X;
    tagged.push_back(std::move(out));
  }
  return tagged;
}

std::vector<Token> content_tokens(const Sentence& s, const StopList& stops) {
  return filter_stops(s.tokens, stops);
}

void pos_tag_in_place(Sentence& s, const TagLexicon& lex) {
  s.tokens = pos_tag(s.tokens, lex);
}

StopList load_stoplist(const std::string& path, std::string lang) {
  auto in = detail::open_or_throw(path);
  StopList stops;
  stops.lang = std::move(lang);
  std::string line;
  while (detail::next_line(in, line)) {
    std::string word = normalize_text(line);
    if (!word.empty()) {
      stops.words.insert(std::move(word));
    }
  }
  return stops;
}

TagLexicon load_tag_lexicon(const std::string& path, std::string lang) {
  auto in = detail::open_or_throw(path);
  TagLexicon lex;
  lex.lang = std::move(lang);
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_tab(line);
    if (fields.size() != 2) {
      throw ParseError(path, line_no, "expected word<TAB>TAG");
    }
    std::string word = normalize_text(fields[0]);
    if (word.empty()) {
      continue;  // nothing normalizable to look up later
    }
    PosTag tag;
    try {
      tag = tag_from_string(fields[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, line_no, e.what());
    }
    if (tag == PosTag::Unknown) {
      throw ParseError(path, line_no, "tags must come from the 12-tag set");
    }
    lex.entries[word] = tag;  // later duplicates override
  }
  return lex;
}

}  // namespace xlingsim
