#include "xlingsim/cts.hpp"

#include <algorithm>

namespace xlingsim {

namespace {

bool intersects(const std::set<std::string>& a,
                const std::set<std::string>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) {
      return true;
    }
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return false;
}

}  // namespace

ConceptBag build_concept_bag(const Sentence& s, const BilingualLexicon& lex,
                             const EmbeddingModel& emb, const StopList& stops,
                             std::size_t neighbor_k) {
  ConceptBag bag;
  bag.content = filter_stops(s.tokens, stops);
  bag.expansions.reserve(bag.content.size());
  const bool needs_expansion =
      !lex.src_lang.empty() && s.lang == lex.src_lang;
  for (const Token& t : bag.content) {
    if (needs_expansion) {
      bag.expansions.push_back(expand_word(t, lex, emb, neighbor_k));
    } else {
      bag.expansions.push_back({t.normalized});
    }
  }
  return bag;
}

double score_cts(const Sentence& sx, const Sentence& sy,
                 const BilingualLexicon& lex, const EmbeddingModel& emb,
                 const StopList& stops_x, const StopList& stops_y,
                 const WeightParams& params, const IdfModel& idf_x,
                 const IdfModel& idf_y, std::size_t neighbor_k) {
  ConceptBag bx = build_concept_bag(sx, lex, emb, stops_x, neighbor_k);
  ConceptBag by = build_concept_bag(sy, lex, emb, stops_y, neighbor_k);

  std::vector<bool> matched_x(bx.content.size(), false);
  std::vector<bool> matched_y(by.content.size(), false);
  for (std::size_t i = 0; i < bx.content.size(); ++i) {
    for (std::size_t j = 0; j < by.content.size(); ++j) {
      if ((!matched_x[i] || !matched_y[j]) &&
          intersects(bx.expansions[i], by.expansions[j])) {
        matched_x[i] = true;
        matched_y[j] = true;
      }
    }
  }

  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < bx.content.size(); ++i) {
    const double w = phi(bx.content[i], idf_x, params);
    denominator += w;
    if (matched_x[i]) {
      numerator += w;
    }
  }
  for (std::size_t j = 0; j < by.content.size(); ++j) {
    const double w = phi(by.content[j], idf_y, params);
    denominator += w;
    if (matched_y[j]) {
      numerator += w;
    }
  }
  if (denominator == 0.0) {
    return 0.0;
  }
  return std::min(1.0, numerator / denominator);
}

}  // namespace xlingsim
