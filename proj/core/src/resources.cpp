#include "xlingsim/resources.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "internal_io.hpp"
#include "xlingsim/errors.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

BilingualLexicon load_lexicon(const std::string& path, std::string src_lang,
                              std::string tgt_lang) {
  auto in = detail::open_or_throw(path);
  BilingualLexicon lex;
  lex.src_lang = std::move(src_lang);
  lex.tgt_lang = std::move(tgt_lang);
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_tab(line);
    if (fields.size() != 2) {
      throw ParseError(path, line_no, "expected src_word<TAB>tgt_word");
    }
    std::string src = normalize_text(fields[0]);
    std::string tgt = normalize_text(fields[1]);
    if (src.empty() || tgt.empty()) {
      continue;  // nothing left of the word after normalization
    }
    lex.entries[src].insert(std::move(tgt));
  }
  return lex;
}

namespace {

struct VocabFile {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> words;
};

VocabFile load_vocab_file(const std::string& path) {
  auto in = detail::open_or_throw(path);
  std::string line;
  if (!detail::next_line(in, line)) {
    throw ParseError(path, 1, "missing `vocab_size dim` header");
  }
  auto header = detail::split_ws(line);
  if (header.size() != 2) {
    throw ParseError(path, 1, "expected header `vocab_size dim`");
  }
  VocabFile file;
  try {
    file.dim = std::stoull(header[1]);
  } catch (const std::exception&) {
    throw ParseError(path, 1, "invalid dimension: " + header[1]);
  }
  if (file.dim < 1) {
    throw ParseError(path, 1, "dimension must be >= 1");
  }
  std::size_t line_no = 1;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_ws(line);
    if (fields.size() != file.dim + 1) {
      throw ParseError(path, line_no,
                       "expected a word followed by " +
                           std::to_string(file.dim) + " values, got " +
                           std::to_string(fields.size()) + " fields");
    }
    std::vector<double> vec(file.dim);
    for (std::size_t i = 0; i < file.dim; ++i) {
      try {
        std::size_t consumed = 0;
        vec[i] = std::stod(fields[i + 1], &consumed);
        if (consumed != fields[i + 1].size()) {
          throw std::invalid_argument(fields[i + 1]);
        }
      } catch (const std::exception&) {
        throw ParseError(path, line_no,
                         "invalid vector value: " + fields[i + 1]);
      }
    }
    std::string word = normalize_text(fields[0]);
    if (word.empty()) {
      continue;
    }
    file.words.emplace(std::move(word), std::move(vec));  // first wins
  }
  return file;
}

}  // namespace

const std::vector<double>* EmbeddingModel::find_lang(
    const std::string& word, const std::string& lang) const {
  if (!src_lang.empty() && lang == src_lang) {
    return find(word, true);
  }
  if (!tgt_lang.empty() && lang == tgt_lang) {
    return find(word, false);
  }
  if (const auto* vec = find(word, false)) {
    return vec;
  }
  return find(word, true);
}

EmbeddingModel load_embeddings(const std::string& src_path,
                               const std::string& tgt_path,
                               std::string src_lang, std::string tgt_lang) {
  VocabFile src = load_vocab_file(src_path);
  VocabFile tgt = load_vocab_file(tgt_path);
  if (src.dim != tgt.dim) {
    throw ResourceError("embedding dimension mismatch: " + src_path +
                        " has dim " + std::to_string(src.dim) + ", " +
                        tgt_path + " has dim " + std::to_string(tgt.dim));
  }
  EmbeddingModel model;
  model.dim = src.dim;
  model.src_lang = std::move(src_lang);
  model.tgt_lang = std::move(tgt_lang);
  model.src_vocab = std::move(src.words);
  model.tgt_vocab = std::move(tgt.words);
  return model;
}

std::vector<Neighbor> top_k_neighbors(const EmbeddingModel& model,
                                      const std::string& word, bool src_side,
                                      std::size_t k) {
  if (k < 1) {
    throw std::invalid_argument("k must be >= 1");
  }
  const std::vector<double>* query = model.find(word, src_side);
  if (query == nullptr) {
    return {};
  }
  std::vector<Neighbor> neighbors;
  neighbors.reserve(model.tgt_vocab.size());
  for (const auto& [candidate, vec] : model.tgt_vocab) {
    if (!src_side && candidate == word) {
      continue;  // query and candidates share a side
    }
    neighbors.push_back(Neighbor{candidate, cosine(*query, vec)});
  }
  std::sort(neighbors.begin(), neighbors.end(),
            [](const Neighbor& a, const Neighbor& b) {
              if (a.similarity != b.similarity) {
                return a.similarity > b.similarity;
              }
              return a.word < b.word;
            });
  if (neighbors.size() > k) {
    neighbors.resize(k);
  }
  return neighbors;
}

std::set<std::string> expand_word(const Token& word,
                                  const BilingualLexicon& lex,
                                  const EmbeddingModel& emb, std::size_t k) {
  if (!lex.src_lang.empty() && !word.lang.empty() &&
      word.lang != lex.src_lang) {
    throw std::invalid_argument("word language '" + word.lang +
                                "' does not match lexicon source language '" +
                                lex.src_lang + "'");
  }
  std::set<std::string> bag;
  if (const auto* translations = lex.find(word.normalized)) {
    bag = *translations;
  }
  if (k >= 1 && !emb.empty()) {
    for (const Neighbor& n : top_k_neighbors(emb, word.normalized, true, k)) {
      bag.insert(n.word);
    }
  }
  return bag;
}

TableTranslationProvider TableTranslationProvider::load(
    const std::string& path) {
  auto in = detail::open_or_throw(path);
  std::map<std::string, std::string> table;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_tab(line);
    if (fields.size() != 2) {
      throw ParseError(path, line_no,
                       "expected source_sentence<TAB>translated_sentence");
    }
    table[fields[0]] = fields[1];  // later duplicates override
  }
  return TableTranslationProvider(std::move(table));
}

std::string TableTranslationProvider::translate_text(
    const std::string& raw, const std::string& /*src_lang*/,
    const std::string& /*tgt_lang*/) const {
  auto it = table_.find(raw);
  if (it == table_.end()) {
    throw TranslationMissing(raw);
  }
  return it->second;
}

Sentence translate(const TranslationProvider& provider,
                   const Sentence& sentence, const std::string& tgt_lang) {
  if (sentence.lang == tgt_lang) {
    return sentence;
  }
  std::string translated =
      provider.translate_text(sentence.raw, sentence.lang, tgt_lang);
  return make_sentence(tgt_lang, std::move(translated));
}

}  // namespace xlingsim
