#pragma once

#include <vector>

#include "xlingsim/resources.hpp"
#include "xlingsim/text.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

/// Distributed sentence representation: the sum over tokens of each word's
/// embedding vector scaled by its phi weight. Tokens without a vector are
/// skipped; an all-OOV input yields the zero vector of the model dimension.
std::vector<double> sentence_vector(const std::vector<Token>& tokens,
                                    const std::string& lang,
                                    const EmbeddingModel& emb,
                                    const IdfModel& idf,
                                    const WeightParams& params);

std::vector<double> sentence_vector(const Sentence& s,
                                    const EmbeddingModel& emb,
                                    const IdfModel& idf,
                                    const WeightParams& params);

/// Embedding similarity: cosine of the two sentences' weighted vectors,
/// built over content words (stop words removed first), clamped below at 0.
/// Either side summing to the zero vector scores 0.
double score_wes(const Sentence& sx, const Sentence& sy,
                 const EmbeddingModel& emb, const IdfModel& idf_x,
                 const IdfModel& idf_y, const WeightParams& params,
                 const StopList& stops_x, const StopList& stops_y);

}  // namespace xlingsim
