#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xlingsim/c3g.hpp"
#include "xlingsim/errors.hpp"
#include "xlingsim/evaluation.hpp"
#include "xlingsim/fusion.hpp"
#include "xlingsim/pipeline.hpp"

namespace {

using namespace xlingsim;

struct CommonOptions {
  std::string config_path;
  std::string model_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t threads = 0;
};

RunConfig resolve_config(const CommonOptions& opts) {
  std::string path = opts.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("XLINGSIM_CONFIG")) {
      path = env;
    }
  }
  RunConfig cfg;
  if (!path.empty()) {
    cfg = load_run_config(path);
  }
  // Flags win over config values.
  if (!opts.model_path.empty()) {
    cfg.model_path = opts.model_path;
  }
  if (opts.seed_set) {
    cfg.seed = opts.seed;
  }
  if (opts.threads > 0) {
    cfg.threads = opts.threads;
  }
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path,
                  "Config file (key = value lines); falls back to "
                  "$XLINGSIM_CONFIG");
  cmd->add_option("--model", opts.model_path, "Model tree file");
  cmd->add_option("--seed", opts.seed, "Random seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--threads", opts.threads, "Worker threads for scoring");
}

int cmd_build_idf(const CommonOptions& opts, const std::string& pairs_path,
                  const std::string& side, const std::string& out_path) {
  RunConfig cfg = resolve_config(opts);
  StsDataset ds = load_dataset(pairs_path, {}, cfg.src_lang, cfg.tgt_lang);
  if (ds.pairs.empty()) {
    throw Error("cannot build an idf model from an empty pairs file");
  }
  std::vector<std::vector<std::string>> docs;
  if (side == "c3g") {
    docs.reserve(ds.pairs.size() * 2);
    for (const auto& [sx, sy] : ds.pairs) {
      docs.push_back(char_ngrams(sx.normalized, cfg.ngram_n));
      docs.push_back(char_ngrams(sy.normalized, cfg.ngram_n));
    }
  } else {
    const bool source_side = side == "src";
    docs.reserve(ds.pairs.size());
    for (const auto& [sx, sy] : ds.pairs) {
      const Sentence& s = source_side ? sx : sy;
      std::vector<std::string> words;
      words.reserve(s.tokens.size());
      for (const Token& t : s.tokens) {
        words.push_back(t.normalized);
      }
      docs.push_back(std::move(words));
    }
  }
  save_idf(build_idf(docs), out_path);
  std::cout << "wrote " << out_path << " (N=" << docs.size() << ")\n";
  return 0;
}

std::vector<Method> resolve_method_set(const RunConfig& cfg, int& run) {
  if (run == 0) {
    run = cfg.run;
  }
  std::string method = cfg.method;
  if (run != 0 && !method.empty()) {
    throw Error("choose either a run preset or a single method, not both");
  }
  if (run != 0) {
    return preset_methods(run);
  }
  if (!method.empty()) {
    return {method_from_string(method)};
  }
  throw Error("no method selected: pass --run {1|2|3} or --method "
              "{c3g|cts|wes|twa}");
}

int cmd_score(const CommonOptions& opts, const std::string& pairs_path,
              const std::string& out_path, int run, const std::string& method,
              bool explain) {
  RunConfig cfg = resolve_config(opts);
  if (!method.empty()) {
    cfg.method = method;
    cfg.run = 0;
  }
  Toolkit toolkit(cfg);
  std::vector<Method> methods = resolve_method_set(cfg, run);

  StsDataset ds = toolkit.load_pairs(pairs_path);
  if (ds.pairs.empty()) {
    write_scores(out_path, {});
    return 0;
  }
  toolkit.ensure_idf(ds);
  ScoreOutput output = toolkit.score_dataset(ds, methods, run);
  write_scores(out_path, rescale_0_5(output.fused));

  if (explain) {
    const std::string explain_path = out_path + ".explain.tsv";
    std::ofstream out(explain_path);
    if (!out) {
      throw Error("cannot write file: " + explain_path);
    }
    for (Method m : methods) {
      out << to_string(m) << "\t";
    }
    out << "fused\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
      char buf[32];
      for (double v : output.per_method[i]) {
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        out << buf << "\t";
      }
      std::snprintf(buf, sizeof(buf), "%.6f", output.fused[i]);
      out << buf << "\n";
    }
  }
  return 0;
}

int cmd_train(const CommonOptions& opts, const std::string& pairs_path,
              const std::string& gold_path, const std::string& out_path) {
  RunConfig cfg = resolve_config(opts);
  cfg.model_path.clear();  // training writes the model, never loads one
  Toolkit toolkit(cfg);

  StsDataset ds = toolkit.load_pairs(pairs_path, gold_path);
  ModelTreeOptions tree_options;
  if (ds.size() < 2 * tree_options.min_leaf) {
    throw std::invalid_argument(
        "training needs at least " +
        std::to_string(2 * tree_options.min_leaf) + " pairs, got " +
        std::to_string(ds.size()));
  }
  toolkit.ensure_idf(ds);
  toolkit.require_methods(
      {Method::C3G, Method::CTS, Method::WES, Method::TWA});

  std::vector<TrainingExample> examples = toolkit.training_examples(ds);
  ModelTree tree = ModelTree::train(examples, tree_options);
  tree.save(out_path);

  // 10-fold CV where the data allows it; smaller sets shrink k so every
  // fold still holds at least two examples.
  const std::size_t k =
      std::clamp<std::size_t>(examples.size() / 2, 2, 10);
  Trainer trainer = [&tree_options](const std::vector<TrainingExample>& fold) {
    ModelTreeOptions opts = tree_options;
    while (fold.size() < 2 * opts.min_leaf && opts.min_leaf > 1) {
      --opts.min_leaf;
    }
    auto fold_tree = std::make_shared<ModelTree>(ModelTree::train(fold, opts));
    return Predictor(
        [fold_tree](const FeatureVector& f) { return fold_tree->predict(f); });
  };
  try {
    CvResult cv = kfold_cv(examples, k, cfg.seed, trainer);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", cv.mean_pearson);
    std::cout << "model written to " << out_path << "\n";
    std::cout << k << "-fold CV pearson: " << buf;
    if (!cv.skipped_folds.empty()) {
      std::cout << " (" << cv.skipped_folds.size()
                << " zero-variance folds skipped)";
    }
    std::cout << "\n";
  } catch (const Error& e) {
    std::cout << "model written to " << out_path << "\n";
    std::cout << k << "-fold CV pearson: n/a (" << e.what() << ")\n";
  }
  return 0;
}

int cmd_evaluate(const std::string& scores_path, const std::string& gold_path) {
  auto read_column = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error("cannot open file: " + path);
    }
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      if (line.empty()) {
        continue;
      }
      try {
        std::size_t consumed = 0;
        double v = std::stod(line, &consumed);
        if (consumed != line.size()) {
          throw std::invalid_argument(line);
        }
        values.push_back(v);
      } catch (const std::exception&) {
        throw ParseError(path, line_no, "invalid value: " + line);
      }
    }
    return values;
  };
  std::vector<double> scores = read_column(scores_path);
  std::vector<double> gold = read_column(gold_path);
  if (scores.size() != gold.size()) {
    throw Error("count mismatch: " + std::to_string(scores.size()) +
                " scores vs " + std::to_string(gold.size()) + " gold values");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", pearson(scores, gold));
  std::cout << buf << "\n";
  return 0;
}

int cmd_align(const CommonOptions& opts, const std::string& lang_flag,
              const std::string& sentence_a, const std::string& sentence_b) {
  RunConfig cfg = resolve_config(opts);
  Toolkit toolkit(cfg);
  const std::string lang = lang_flag.empty() ? cfg.tgt_lang : lang_flag;
  Sentence x = toolkit.make_tagged_sentence(lang, sentence_a);
  Sentence y = toolkit.make_tagged_sentence(lang, sentence_b);
  Alignment alignment = toolkit.align_sentences(x, y);
  for (const auto& [i, j] : alignment.pairs) {
    std::cout << i << "-" << j << "\n";
  }
  return 0;
}

int cmd_tune(const CommonOptions& opts, const std::string& pairs_path,
             const std::string& gold_path, const std::string& method_name,
             std::size_t budget, const std::string& out_path) {
  RunConfig cfg = resolve_config(opts);
  Toolkit toolkit(cfg);
  StsDataset ds = toolkit.load_pairs(pairs_path, gold_path);
  toolkit.ensure_idf(ds);
  TuneResult result =
      tune_params(ds, method_from_string(method_name), toolkit.tune_resources(),
                  budget, toolkit.weight_params());
  save_weight_params(result.params, out_path);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", result.dev_pearson);
  std::cout << "params written to " << out_path << " (dev pearson " << buf
            << ", " << result.evaluations << " evaluations)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xlingsim: cross-language semantic textual similarity toolkit"};
  app.require_subcommand(1);

  CommonOptions opts;

  // build-idf
  auto* build = app.add_subcommand(
      "build-idf", "Build an idf model (TSV) from a pairs file");
  std::string build_pairs, build_side = "c3g", build_out;
  add_common_flags(build, opts);
  build->add_option("--pairs", build_pairs, "Sentence pairs TSV")->required();
  build->add_option("--side", build_side, "Model side: src, tgt or c3g")
      ->check(CLI::IsMember({"src", "tgt", "c3g"}));
  build->add_option("--out", build_out, "Output idf TSV")->required();

  // score
  auto* score = app.add_subcommand(
      "score", "Score sentence pairs, one [0,5] value per line");
  std::string score_pairs, score_out, score_method;
  int score_run = 0;
  bool score_explain = false;
  add_common_flags(score, opts);
  score->add_option("--pairs", score_pairs, "Sentence pairs TSV")->required();
  score->add_option("--out", score_out, "Output score file")->required();
  score->add_option("--run", score_run, "Run preset: 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  score->add_option("--method", score_method,
                    "Score with a single method: c3g, cts, wes or twa")
      ->check(CLI::IsMember({"c3g", "cts", "wes", "twa"}));
  score->add_flag("--explain", score_explain,
                  "Also write per-method scores next to the output file");

  // train
  auto* train = app.add_subcommand(
      "train", "Train the model-tree fusion on pairs with gold scores");
  std::string train_pairs, train_gold, train_out;
  add_common_flags(train, opts);
  train->add_option("--pairs", train_pairs, "Sentence pairs TSV")->required();
  train->add_option("--gold", train_gold, "Gold scores, one per line")
      ->required();
  train->add_option("--out", train_out, "Output model file")->required();

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "Pearson correlation between a score file and gold");
  std::string eval_scores, eval_gold;
  evaluate->add_option("--scores", eval_scores, "Score file")->required();
  evaluate->add_option("--gold", eval_gold, "Gold scores file")->required();

  // align
  auto* align_cmd = app.add_subcommand(
      "align", "Print the word alignment of two same-language sentences");
  std::string align_lang;
  std::vector<std::string> align_sentences;
  add_common_flags(align_cmd, opts);
  align_cmd->add_option("--lang", align_lang,
                        "Language of both sentences (default: target)");
  align_cmd->add_option("sentences", align_sentences, "Two sentences")
      ->expected(2);

  // tune
  auto* tune = app.add_subcommand(
      "tune", "Tune alpha and pos weights against a dev set");
  std::string tune_pairs, tune_gold, tune_method = "cts", tune_out;
  std::size_t tune_budget = 500;
  add_common_flags(tune, opts);
  tune->add_option("--pairs", tune_pairs, "Dev pairs TSV")->required();
  tune->add_option("--gold", tune_gold, "Dev gold scores")->required();
  tune->add_option("--method", tune_method, "Method to tune: cts or wes")
      ->check(CLI::IsMember({"cts", "wes"}));
  tune->add_option("--budget", tune_budget, "Objective evaluation budget");
  tune->add_option("--out", tune_out, "Output params TSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      return cmd_build_idf(opts, build_pairs, build_side, build_out);
    }
    if (score->parsed()) {
      return cmd_score(opts, score_pairs, score_out, score_run, score_method,
                       score_explain);
    }
    if (train->parsed()) {
      return cmd_train(opts, train_pairs, train_gold, train_out);
    }
    if (evaluate->parsed()) {
      return cmd_evaluate(eval_scores, eval_gold);
    }
    if (align_cmd->parsed()) {
      return cmd_align(opts, align_lang, align_sentences[0],
                       align_sentences[1]);
    }
    if (tune->parsed()) {
      return cmd_tune(opts, tune_pairs, tune_gold, tune_method, tune_budget,
                      tune_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "xlingsim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
