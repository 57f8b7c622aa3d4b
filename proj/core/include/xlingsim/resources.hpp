#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "xlingsim/text.hpp"

namespace xlingsim {

/// File-based bilingual dictionary: source word -> set of translations.
/// All words are normalized; empty translation sets are never stored.
struct BilingualLexicon {
  std::string src_lang;
  std::string tgt_lang;
  std::unordered_map<std::string, std::set<std::string>> entries;

  const std::set<std::string>* find(const std::string& normalized) const {
    auto it = entries.find(normalized);
    return it != entries.end() ? &it->second : nullptr;
  }
};

/// Loads a lexicon from TSV `src_word<TAB>tgt_word` lines. Duplicate pairs
/// are deduplicated; entries that normalize to nothing are skipped.
BilingualLexicon load_lexicon(const std::string& path, std::string src_lang,
                              std::string tgt_lang);

/// Bilingual word vectors in one shared space, one vocabulary per side.
struct EmbeddingModel {
  std::size_t dim = 0;
  std::string src_lang;
  std::string tgt_lang;
  std::unordered_map<std::string, std::vector<double>> src_vocab;
  std::unordered_map<std::string, std::vector<double>> tgt_vocab;

  bool empty() const { return src_vocab.empty() && tgt_vocab.empty(); }

  const std::vector<double>* find(const std::string& word,
                                  bool src_side) const {
    const auto& vocab = src_side ? src_vocab : tgt_vocab;
    auto it = vocab.find(word);
    return it != vocab.end() ? &it->second : nullptr;
  }

  /// Side-by-language lookup. An unrecognized language falls back to the
  /// target side first, then the source side.
  const std::vector<double>* find_lang(const std::string& word,
                                       const std::string& lang) const;
};

/// Loads both sides of a bilingual model from textual word-vector files
/// (header `vocab_size dim`, then `word v1 ... v_dim` lines). Words are
/// normalized on load, first occurrence wins. Throws ResourceError when the
/// two files disagree on dimension.
EmbeddingModel load_embeddings(const std::string& src_path,
                               const std::string& tgt_path,
                               std::string src_lang, std::string tgt_lang);

struct Neighbor {
  std::string word;
  double similarity;
};

/// The k nearest target-side words by cosine, descending, ties broken
/// lexicographically. Unknown query words yield an empty list; when the
/// query is itself on the target side it is excluded from its own list.
std::vector<Neighbor> top_k_neighbors(const EmbeddingModel& model,
                                      const std::string& word, bool src_side,
                                      std::size_t k);

/// Target-language bag for one word: lexicon translations united with the
/// top-k embedding neighbors. k = 0 disables the embedding part.
std::set<std::string> expand_word(const Token& word,
                                  const BilingualLexicon& lex,
                                  const EmbeddingModel& emb, std::size_t k);

/// Sentence-level machine translation contract. Implementations must be
/// safe for concurrent calls.
class TranslationProvider {
 public:
  virtual ~TranslationProvider() = default;
  virtual std::string translate_text(const std::string& raw,
                                     const std::string& src_lang,
                                     const std::string& tgt_lang) const = 0;
};

/// Deterministic provider backed by a TSV table keyed on exact raw text.
class TableTranslationProvider final : public TranslationProvider {
 public:
  TableTranslationProvider() = default;
  explicit TableTranslationProvider(std::map<std::string, std::string> table)
      : table_(std::move(table)) {}
  TableTranslationProvider(
      std::initializer_list<std::map<std::string, std::string>::value_type>
          items)
      : table_(items) {}

  /// Loads `source_sentence<TAB>translated_sentence` lines; later
  /// duplicates override earlier ones.
  static TableTranslationProvider load(const std::string& path);

  /// Throws TranslationMissing when the sentence is not in the table.
  std::string translate_text(const std::string& raw,
                             const std::string& src_lang,
                             const std::string& tgt_lang) const override;

  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::string> table_;
};

/// Translates a sentence into the target language and retokenizes it.
/// Sentences already in the target language pass through unchanged.
Sentence translate(const TranslationProvider& provider,
                   const Sentence& sentence, const std::string& tgt_lang);

}  // namespace xlingsim
