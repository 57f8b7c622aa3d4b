#include "xlingsim/twa.hpp"

#include <algorithm>
#include <stdexcept>

namespace xlingsim {

namespace {

std::vector<std::size_t> content_indices(const Sentence& s,
                                         const StopList& stops) {
  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (s.tokens[i].lang != stops.lang) {
      throw std::invalid_argument("stop list language '" + stops.lang +
                                  "' does not match token language '" +
                                  s.tokens[i].lang + "'");
    }
    if (!stops.contains(s.tokens[i].normalized)) {
      indices.push_back(i);
    }
  }
  return indices;
}

constexpr std::size_t kStemPrefix = 4;
constexpr std::size_t kStemMinLength = 5;

}  // namespace

Alignment align(const Sentence& x, const Sentence& y,
                const EmbeddingModel& emb, const StopList& stops,
                double sim_threshold) {
  if (x.lang != y.lang) {
    throw std::invalid_argument(
        "align requires sentences in the same language, got '" + x.lang +
        "' and '" + y.lang + "'");
  }
  const auto cx = content_indices(x, stops);
  const auto cy = content_indices(y, stops);

  std::vector<bool> used_x(x.tokens.size(), false);
  std::vector<bool> used_y(y.tokens.size(), false);
  Alignment result;

  auto lock = [&](std::size_t i, std::size_t j) {
    used_x[i] = true;
    used_y[j] = true;
    result.pairs.emplace_back(i, j);
  };

  // Phase 1: exact matches on the normalized form.
  for (std::size_t i : cx) {
    if (used_x[i]) continue;
    for (std::size_t j : cy) {
      if (used_y[j]) continue;
      if (x.tokens[i].normalized == y.tokens[j].normalized) {
        lock(i, j);
        break;
      }
    }
  }

  // Phase 2: crude stemming, a shared 4-character prefix on longer words.
  for (std::size_t i : cx) {
    if (used_x[i]) continue;
    const std::string& wx = x.tokens[i].normalized;
    if (wx.size() < kStemMinLength) continue;
    for (std::size_t j : cy) {
      if (used_y[j]) continue;
      const std::string& wy = y.tokens[j].normalized;
      if (wy.size() < kStemMinLength) continue;
      if (wx.compare(0, kStemPrefix, wy, 0, kStemPrefix) == 0) {
        lock(i, j);
        break;
      }
    }
  }

  // Phase 3: embedding similarity, best pairs first.
  struct Candidate {
    double sim;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i : cx) {
    if (used_x[i]) continue;
    const auto* vx = emb.find_lang(x.tokens[i].normalized, x.lang);
    if (vx == nullptr) continue;
    for (std::size_t j : cy) {
      if (used_y[j]) continue;
      const auto* vy = emb.find_lang(y.tokens[j].normalized, y.lang);
      if (vy == nullptr) continue;
      const double sim = cosine(*vx, *vy);
      if (sim >= sim_threshold) {
        candidates.push_back(Candidate{sim, i, j});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.sim != b.sim) return a.sim > b.sim;
              if (a.i != b.i) return a.i < b.i;
              return a.j < b.j;
            });
  for (const Candidate& c : candidates) {
    if (!used_x[c.i] && !used_y[c.j]) {
      lock(c.i, c.j);
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

double score_twa(const Sentence& sx, const Sentence& sy,
                 const TranslationProvider& provider,
                 const EmbeddingModel& emb, const IdfModel& idf_tgt,
                 const StopList& tgt_stops, double sim_threshold) {
  const Sentence tx = translate(provider, sx, sy.lang);
  const Alignment alignment = align(tx, sy, emb, tgt_stops, sim_threshold);

  double aligned_mass = 0.0;
  for (const auto& [i, j] : alignment.pairs) {
    aligned_mass += idf_tgt.idf(tx.tokens[i].normalized);
    aligned_mass += idf_tgt.idf(sy.tokens[j].normalized);
  }
  double total_mass = 0.0;
  for (std::size_t i : content_indices(tx, tgt_stops)) {
    total_mass += idf_tgt.idf(tx.tokens[i].normalized);
  }
  for (std::size_t j : content_indices(sy, tgt_stops)) {
    total_mass += idf_tgt.idf(sy.tokens[j].normalized);
  }
  if (total_mass == 0.0) {
    return 0.0;
  }
  return std::min(1.0, aligned_mass / total_mass);
}

}  // namespace xlingsim
