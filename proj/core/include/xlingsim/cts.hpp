#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "xlingsim/resources.hpp"
#include "xlingsim/text.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

/// Target-language concept bag of one sentence: its content tokens (stop
/// words removed) with one expansion set per token. Source-language words
/// expand through the lexicon and embedding neighbors; words already in the
/// target language expand to themselves.
struct ConceptBag {
  std::vector<Token> content;
  std::vector<std::set<std::string>> expansions;  // parallel to content
};

ConceptBag build_concept_bag(const Sentence& s, const BilingualLexicon& lex,
                             const EmbeddingModel& emb, const StopList& stops,
                             std::size_t neighbor_k);

/// Conceptual thesaurus similarity: a weighted Jaccard over concept bags.
///
/// A word of one sentence is matched when its expansion set intersects the
/// expansion set of some word of the other sentence; the score is the
/// phi-weight of all matched words divided by the phi-weight of all content
/// words, summed over both sentences. This matched-subset reading keeps the
/// ratio in [0, 1]. Each phi uses the word's own-language idf model and POS
/// tag; stops_x/stops_y and idf_x/idf_y must match the sentences' languages.
/// An empty denominator scores 0.
double score_cts(const Sentence& sx, const Sentence& sy,
                 const BilingualLexicon& lex, const EmbeddingModel& emb,
                 const StopList& stops_x, const StopList& stops_y,
                 const WeightParams& params, const IdfModel& idf_x,
                 const IdfModel& idf_y, std::size_t neighbor_k = 10);

}  // namespace xlingsim
