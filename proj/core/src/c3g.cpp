#include "xlingsim/c3g.hpp"

namespace xlingsim {

double score_c3g(const Sentence& src, const Sentence& tgt,
                 const IdfModel& model, int n, double k) {
  SparseVector vx = tfidf_vector(char_ngrams(src.normalized, n), model, k);
  SparseVector vy = tfidf_vector(char_ngrams(tgt.normalized, n), model, k);
  return cosine(vx, vy);
}

}  // namespace xlingsim
