#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace xlingsim {

/// The 12 universal part-of-speech tags, plus Unknown for tokens that have
/// not been tagged at all. Punct stands for the universal tagset's "." tag.
enum class PosTag {
  Adj,
  Adp,
  Adv,
  Conj,
  Det,
  Noun,
  Num,
  Pron,
  Prt,
  Verb,
  X,
  Punct,
  Unknown,
};

inline constexpr std::size_t kUniversalTagCount = 12;

const char* to_string(PosTag tag);
PosTag tag_from_string(const std::string& name);
const std::array<PosTag, kUniversalTagCount>& universal_tags();

struct Token {
  std::string surface;
  std::string normalized;  // only characters from {a-z, 0-9, space}
  PosTag pos = PosTag::Unknown;
  std::string lang;  // ISO 639-1 code
};

struct Sentence {
  std::string lang;
  std::string raw;
  std::string normalized;
  std::vector<Token> tokens;

  std::size_t size() const { return tokens.size(); }
};

struct StopList {
  std::string lang;
  std::unordered_set<std::string> words;  // normalized forms

  bool contains(const std::string& normalized) const {
    return words.count(normalized) != 0;
  }
};

/// Word -> universal tag map used as a stand-in for a statistical tagger.
struct TagLexicon {
  std::string lang;
  std::unordered_map<std::string, PosTag> entries;
};

/// Lower-cases and restricts text to the alphabet {a-z, 0-9, space}.
/// Characters outside the alphabet are deleted outright (no transliteration:
/// "é" disappears rather than becoming "e"), space runs collapse to one, and
/// leading/trailing spaces are trimmed. Idempotent.
std::string normalize_text(const std::string& raw);

/// Splits an already-normalized string on spaces. Tokens keep their order,
/// duplicates included; each gets the given language code and no POS tag.
std::vector<Token> tokenize(const std::string& normalized,
                            const std::string& lang = {});

/// Normalizes and tokenizes raw text into a Sentence.
Sentence make_sentence(std::string lang, std::string raw);

/// All contiguous substrings of length n, spaces counting as characters.
/// Strings shorter than n yield an empty result. Throws std::invalid_argument
/// for n < 1.
std::vector<std::string> char_ngrams(const std::string& normalized, int n);

/// Removes tokens whose normalized form is in the stop list, preserving
/// order. Throws std::invalid_argument on a language mismatch.
std::vector<Token> filter_stops(const std::vector<Token>& tokens,
                                const StopList& stops);

/// Assigns each token the tag from the lexicon, or X for unknown words.
/// Surface and normalized forms are never modified. Throws
/// std::invalid_argument on a language mismatch.
std::vector<Token> pos_tag(const std::vector<Token>& tokens,
                           const TagLexicon& lex);

/// Convenience: stop-filtered tokens of a sentence.
std::vector<Token> content_tokens(const Sentence& s, const StopList& stops);

/// Convenience: tags a sentence's tokens in place.
void pos_tag_in_place(Sentence& s, const TagLexicon& lex);

/// Loads a stop list: one word per line, UTF-8, normalized on load.
StopList load_stoplist(const std::string& path, std::string lang);

/// Loads a tag lexicon: TSV `word<TAB>TAG` lines; later duplicates override
/// earlier ones. Words are normalized on load.
TagLexicon load_tag_lexicon(const std::string& path, std::string lang);

}  // namespace xlingsim
