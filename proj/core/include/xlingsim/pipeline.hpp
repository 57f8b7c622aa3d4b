#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xlingsim/evaluation.hpp"
#include "xlingsim/fusion.hpp"
#include "xlingsim/resources.hpp"
#include "xlingsim/text.hpp"
#include "xlingsim/twa.hpp"
#include "xlingsim/weighting.hpp"

namespace xlingsim {

/// Resource paths and run settings, loadable from a `key = value` config
/// file. Relative paths resolve against the config file's directory.
struct RunConfig {
  std::string src_lang = "es";
  std::string tgt_lang = "en";

  std::string lexicon_path;
  std::string src_embeddings_path;
  std::string tgt_embeddings_path;
  std::string src_stops_path;
  std::string tgt_stops_path;
  std::string src_tags_path;
  std::string tgt_tags_path;
  std::string translations_path;
  std::string idf_c3g_path;   // shared character n-gram model
  std::string idf_src_path;   // source-language word model
  std::string idf_tgt_path;   // target-language word model
  std::string params_path;
  std::string model_path;

  int run = 0;          // 0 = unset; presets are 1, 2, 3
  std::string method;   // single-method override, empty = unset

  std::size_t neighbor_k = 10;
  double twa_threshold = 0.7;
  int ngram_n = 3;
  double tf_k = 0.5;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

RunConfig load_run_config(const std::string& path);

/// Method set for a run preset: run 1 scores with CTS alone, run 2 averages
/// C3G, CTS and TWA, run 3 feeds all four methods into the model tree.
std::vector<Method> preset_methods(int run);

struct ScoreOutput {
  std::vector<Method> methods;            // columns of per_method
  std::vector<FeatureVector> per_method;  // one row per pair
  std::vector<double> fused;              // [0, 1] per pair
};

/// Loads the resources in a RunConfig and exposes the scoring pipeline.
/// Configured paths must exist; loading fails before any scoring starts.
class Toolkit {
 public:
  explicit Toolkit(RunConfig config);

  const RunConfig& config() const { return config_; }

  /// Parses, tokenizes and POS-tags a pairs file (tagging only where tag
  /// lexicons are configured).
  StsDataset load_pairs(const std::string& pairs_path,
                        const std::string& gold_path = {}) const;

  /// Builds any unconfigured idf models directly from the dataset, the way
  /// the methods expect for evaluation data: one word model per language
  /// side and a shared character n-gram model over both sides.
  void ensure_idf(const StsDataset& ds);

  /// Verifies the resources needed by a method set are present. Throws
  /// Error naming what is missing.
  void require_methods(const std::vector<Method>& methods) const;

  double method_score(Method m, const Sentence& sx, const Sentence& sy) const;

  /// All four method scores in canonical order.
  FeatureVector features(const Sentence& sx, const Sentence& sy) const;

  std::vector<TrainingExample> training_examples(const StsDataset& ds) const;

  /// Scores every pair with the given methods (in parallel when
  /// config.threads > 1) and fuses per preset: a single method passes
  /// through, run 2 averages, run 3 routes the model tree and clamps the
  /// prediction into [0, 1]. Output order always matches input order.
  ScoreOutput score_dataset(const StsDataset& ds,
                            const std::vector<Method>& methods,
                            int run) const;

  const ModelTree* model() const {
    return model_ ? &*model_ : nullptr;
  }
  void set_model(ModelTree tree) { model_ = std::move(tree); }

  const WeightParams& weight_params() const { return params_; }

  const StopList& stops_for(const Sentence& s) const;
  Alignment align_sentences(const Sentence& x, const Sentence& y) const;
  Sentence make_tagged_sentence(const std::string& lang,
                                const std::string& raw) const;

  TuneResources tune_resources() const;

 private:
  const IdfModel& idf_for(const Sentence& s) const;

  RunConfig config_;
  StopList src_stops_;
  StopList tgt_stops_;
  TagLexicon src_tags_;
  TagLexicon tgt_tags_;
  BilingualLexicon lexicon_;
  EmbeddingModel embeddings_;
  TableTranslationProvider translator_;
  bool has_translator_ = false;
  std::optional<IdfModel> idf_c3g_;
  std::optional<IdfModel> idf_src_;
  std::optional<IdfModel> idf_tgt_;
  WeightParams params_;
  std::optional<ModelTree> model_;
};

}  // namespace xlingsim
