#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "xlingsim/resources.hpp"
#include "xlingsim/text.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

/// One-to-one word alignment between two same-language sentences. Pairs are
/// (index into x tokens, index into y tokens), sorted by the x index; no
/// index appears twice.
struct Alignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
};

/// Greedy three-phase aligner over content words:
///   1. exact normalized match,
///   2. shared-prefix stem match (first 4 characters, both words >= 5 chars),
///   3. embedding cosine >= sim_threshold, best pairs first, ties broken by
///      the smallest index pair.
/// Earlier phases lock their tokens. Throws std::invalid_argument when the
/// sentences are not in the same language.
Alignment align(const Sentence& x, const Sentence& y,
                const EmbeddingModel& emb, const StopList& stops,
                double sim_threshold = 0.7);

/// Translate-then-align similarity: sx is translated into sy's language,
/// aligned against sy, and scored as the idf mass of aligned content words
/// over the idf mass of all content words (both sentences, target-language
/// idf model). An empty denominator scores 0; a provider miss propagates
/// TranslationMissing.
double score_twa(const Sentence& sx, const Sentence& sy,
                 const TranslationProvider& provider,
                 const EmbeddingModel& emb, const IdfModel& idf_tgt,
                 const StopList& tgt_stops, double sim_threshold = 0.7);

}  // namespace xlingsim
