#pragma once

#include "xlingsim/text.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

/// Character n-gram similarity: cosine of the tf.idf vectors built from the
/// two sentences' character n-grams. Needs no translation; the idf model is
/// built over the n-grams of the evaluation corpus (both sides, one document
/// per sentence). A sentence whose normalization is shorter than n scores 0
/// against everything.
double score_c3g(const Sentence& src, const Sentence& tgt,
                 const IdfModel& model, int n = 3, double k = 0.5);

}  // namespace xlingsim
