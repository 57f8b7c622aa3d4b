#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "xlingsim/fusion.hpp"
#include "xlingsim/resources.hpp"
#include "xlingsim/text.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

/// Sentence pairs with optional gold similarity scores in [0, 5].
struct StsDataset {
  std::vector<std::pair<Sentence, Sentence>> pairs;
  std::vector<double> gold;

  bool has_gold() const { return !gold.empty(); }
  std::size_t size() const { return pairs.size(); }
};

/// Sample Pearson correlation. Throws std::invalid_argument on mismatched
/// lengths, fewer than two points, or zero variance on either side.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

/// Linear rescaling from [0, 1] to [0, 5]. Out-of-range input throws
/// std::invalid_argument.
std::vector<double> rescale_0_5(const std::vector<double>& scores);

/// Loads `source<TAB>target` pairs, optionally with a gold file of one real
/// per line. Counts must match; gold values must lie in [0, 5].
StsDataset load_dataset(const std::string& pairs_path,
                        const std::string& gold_path = {},
                        const std::string& src_lang = "es",
                        const std::string& tgt_lang = "en");

/// Writes one score per line with 4 decimal places, input order preserved.
void write_scores(const std::string& path, const std::vector<double>& scores);

using Predictor = std::function<double(const FeatureVector&)>;
using Trainer =
    std::function<Predictor(const std::vector<TrainingExample>&)>;

struct CvResult {
  double mean_pearson = 0.0;
  std::vector<double> fold_pearson;       // per evaluated fold
  std::vector<std::size_t> skipped_folds;  // folds with zero variance
};

/// Deterministic k-fold cross-validation: seeded shuffle, k contiguous
/// folds with sizes differing by at most one, Pearson per held-out fold,
/// arithmetic mean. Zero-variance folds are skipped and reported.
CvResult kfold_cv(const std::vector<TrainingExample>& data, std::size_t k,
                  std::uint64_t seed, const Trainer& trainer);

/// Everything the tuner needs to score a dev pair with CTS or WES. The
/// src_* entries apply to each pair's first sentence, tgt_* to the second.
struct TuneResources {
  const BilingualLexicon* lexicon = nullptr;
  const EmbeddingModel* embeddings = nullptr;
  const StopList* src_stops = nullptr;
  const StopList* tgt_stops = nullptr;
  const IdfModel* idf_src = nullptr;
  const IdfModel* idf_tgt = nullptr;
  std::size_t neighbor_k = 10;
};

struct TuneResult {
  WeightParams params;
  double dev_pearson = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free tuning of alpha and the 12 pos weights against dev-set
/// Pearson: a 21-point alpha grid in [0, 1], then coordinate descent over
/// the weights in [0, 2] with step halving. Deterministic for a fixed
/// dataset and budget, and never worse than the initial point. The budget
/// caps objective evaluations; budget 1 just scores the initial params.
TuneResult tune_params(const StsDataset& dev, Method method,
                       const TuneResources& resources, std::size_t budget,
                       const WeightParams& initial = {});

}  // namespace xlingsim
