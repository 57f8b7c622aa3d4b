#include "xlingsim/wes.hpp"

namespace xlingsim {

std::vector<double> sentence_vector(const std::vector<Token>& tokens,
                                    const std::string& lang,
                                    const EmbeddingModel& emb,
                                    const IdfModel& idf,
                                    const WeightParams& params) {
  std::vector<double> v(emb.dim, 0.0);
  for (const Token& t : tokens) {
    const std::vector<double>* vec = emb.find_lang(t.normalized, lang);
    if (vec == nullptr) {
      continue;
    }
    const double weight = phi(t, idf, params);
    for (std::size_t i = 0; i < emb.dim; ++i) {
      v[i] += weight * (*vec)[i];
    }
  }
  return v;
}

std::vector<double> sentence_vector(const Sentence& s,
                                    const EmbeddingModel& emb,
                                    const IdfModel& idf,
                                    const WeightParams& params) {
  return sentence_vector(s.tokens, s.lang, emb, idf, params);
}

double score_wes(const Sentence& sx, const Sentence& sy,
                 const EmbeddingModel& emb, const IdfModel& idf_x,
                 const IdfModel& idf_y, const WeightParams& params,
                 const StopList& stops_x, const StopList& stops_y) {
  std::vector<double> vx = sentence_vector(filter_stops(sx.tokens, stops_x),
                                           sx.lang, emb, idf_x, params);
  std::vector<double> vy = sentence_vector(filter_stops(sy.tokens, stops_y),
                                           sy.lang, emb, idf_y, params);
  const double c = cosine(vx, vy);
  return c < 0.0 ? 0.0 : c;
}

}  // namespace xlingsim
