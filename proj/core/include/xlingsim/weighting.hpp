#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "xlingsim/text.hpp"

namespace xlingsim {

/// Document-frequency statistics over a corpus where each document is the
/// set of its distinct terms.
struct IdfModel {
  std::size_t doc_count = 0;
  std::unordered_map<std::string, std::size_t> df;

  /// Smoothed inverse document frequency ln(1 + N/df). Unseen terms use
  /// df = 1, so the result is always positive.
  double idf(const std::string& term) const;
};

/// Counts document frequencies. Documents may repeat terms; duplicates
/// within one document count once. Throws std::invalid_argument on an
/// empty corpus.
IdfModel build_idf(const std::vector<std::vector<std::string>>& documents);

/// TSV persistence: header `N<TAB>count`, then `term<TAB>df` lines sorted
/// by term so rebuilding is byte-identical.
void save_idf(const IdfModel& model, const std::string& path);
IdfModel load_idf(const std::string& path);

/// Term-weight vector. No zero-valued entries are stored; the sorted map
/// keeps iteration order deterministic.
struct SparseVector {
  std::map<std::string, double> weights;

  bool empty() const { return weights.empty(); }
};

/// Double-normalized term frequency tf(t) = K + (1-K) * count(t)/max_count.
/// Requires non-empty counts and K in [0,1].
std::map<std::string, double> tf_double_norm(
    const std::map<std::string, std::size_t>& counts, double k);

/// tf.idf weights for a multiset of terms. An empty multiset yields an
/// empty vector.
SparseVector tfidf_vector(const std::vector<std::string>& terms,
                          const IdfModel& model, double k = 0.5);

/// Cosine similarity; 0 when either vector has zero norm.
double cosine(const SparseVector& a, const SparseVector& b);
double cosine(const std::vector<double>& a, const std::vector<double>& b);

/// Alpha-blended word weighting: pos weight per universal tag plus a
/// fallback for untagged tokens.
struct WeightParams {
  double alpha = 0.5;
  std::array<double, kUniversalTagCount> pos_weights = {1, 1, 1, 1, 1, 1,
                                                        1, 1, 1, 1, 1, 1};
  double unknown_weight = 1.0;

  double weight_for(PosTag tag) const {
    return tag == PosTag::Unknown
               ? unknown_weight
               : pos_weights[static_cast<std::size_t>(tag)];
  }
};

/// Word weight pos_weight(tag)^(1-alpha) * idf(word)^alpha. 0^0 is taken
/// as 1 so the surviving factor alone decides. Throws
/// std::invalid_argument for a negative pos weight or alpha outside [0,1].
double phi(const Token& token, const IdfModel& model,
           const WeightParams& params);

/// TSV persistence: one `TAG<TAB>weight` line per universal tag, an
/// `UNKNOWN<TAB>weight` line, and one `alpha<TAB>value` line. The loader
/// requires all 12 tags and alpha; UNKNOWN is optional.
void save_weight_params(const WeightParams& params, const std::string& path);
WeightParams load_weight_params(const std::string& path);

}  // namespace xlingsim
