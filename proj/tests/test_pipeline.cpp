#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "xlingsim/errors.hpp"
#include "xlingsim/pipeline.hpp"

using namespace xlingsim;

namespace {

std::string data_dir() {
#ifdef XLINGSIM_TEST_DATA_DIR
  return XLINGSIM_TEST_DATA_DIR;
#else
  return "data";
#endif
}

std::string mini_config_path() { return data_dir() + "/mini.conf"; }

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("config parsing resolves paths against the config directory") {
  RunConfig cfg = load_run_config(mini_config_path());
  CHECK(cfg.src_lang == "es");
  CHECK(cfg.tgt_lang == "en");
  CHECK(cfg.run == 2);
  CHECK(cfg.neighbor_k == 2);
  CHECK(cfg.twa_threshold == doctest::Approx(0.96));
  CHECK(std::filesystem::exists(cfg.lexicon_path));
  CHECK(std::filesystem::exists(cfg.translations_path));
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
  auto bad_key = write_temp("xlingsim_cfg_badkey.conf", "nope = 1\n");
  CHECK_THROWS_AS(load_run_config(bad_key.string()), ParseError);
  std::filesystem::remove(bad_key);

  auto bad_run = write_temp("xlingsim_cfg_badrun.conf", "run = 7\n");
  CHECK_THROWS_AS(load_run_config(bad_run.string()), ParseError);
  std::filesystem::remove(bad_run);

  auto no_eq = write_temp("xlingsim_cfg_noeq.conf", "src_lang es\n");
  CHECK_THROWS_AS(load_run_config(no_eq.string()), ParseError);
  std::filesystem::remove(no_eq);

  auto comments = write_temp("xlingsim_cfg_ok.conf",
                             "# comment\n\n  src_lang = fr  \n");
  RunConfig cfg = load_run_config(comments.string());
  CHECK(cfg.src_lang == "fr");
  std::filesystem::remove(comments);
}

TEST_CASE("run presets fix the method sets") {
  CHECK(preset_methods(1) == std::vector<Method>{Method::CTS});
  CHECK(preset_methods(2) ==
        std::vector<Method>{Method::C3G, Method::CTS, Method::TWA});
  CHECK(preset_methods(3) == std::vector<Method>{Method::C3G, Method::CTS,
                                                 Method::WES, Method::TWA});
  CHECK_THROWS_AS(preset_methods(4), std::invalid_argument);
}

TEST_CASE("toolkit rejects missing resource files before loading") {
  RunConfig cfg;
  cfg.lexicon_path = "/nonexistent/lexicon.tsv";
  CHECK_THROWS_AS(Toolkit{cfg}, Error);
}

TEST_CASE("toolkit loads the mini corpus and scores identical pairs high") {
  RunConfig cfg = load_run_config(mini_config_path());
  Toolkit toolkit(cfg);
  StsDataset ds = toolkit.load_pairs(data_dir() + "/pairs.tsv",
                                     data_dir() + "/gold.txt");
  REQUIRE(ds.size() == 10);
  toolkit.ensure_idf(ds);

  // Pair 0 is a faithful translation; pair 9 is unrelated.
  FeatureVector best = toolkit.features(ds.pairs[0].first, ds.pairs[0].second);
  FeatureVector worst = toolkit.features(ds.pairs[9].first, ds.pairs[9].second);
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(best[m] >= 0.0);
    CHECK(best[m] <= 1.0);
    CHECK(worst[m] <= best[m]);
  }
  CHECK(best[static_cast<std::size_t>(Method::TWA)] ==
        doctest::Approx(1.0));
}

TEST_CASE("sentences are POS-tagged through the configured lexicons") {
  RunConfig cfg = load_run_config(mini_config_path());
  Toolkit toolkit(cfg);
  Sentence s = toolkit.make_tagged_sentence("es", "el gato corre");
  REQUIRE(s.size() == 3);
  CHECK(s.tokens[0].pos == PosTag::Det);
  CHECK(s.tokens[1].pos == PosTag::Noun);
  CHECK(s.tokens[2].pos == PosTag::Verb);
}

TEST_CASE("score_dataset keeps input order and parallelizes consistently") {
  RunConfig cfg = load_run_config(mini_config_path());
  Toolkit serial_toolkit(cfg);
  StsDataset ds = serial_toolkit.load_pairs(data_dir() + "/pairs.tsv");
  serial_toolkit.ensure_idf(ds);
  ScoreOutput serial =
      serial_toolkit.score_dataset(ds, preset_methods(2), 2);

  cfg.threads = 4;
  Toolkit parallel_toolkit(cfg);
  StsDataset ds2 = parallel_toolkit.load_pairs(data_dir() + "/pairs.tsv");
  parallel_toolkit.ensure_idf(ds2);
  ScoreOutput parallel =
      parallel_toolkit.score_dataset(ds2, preset_methods(2), 2);

  REQUIRE(serial.fused.size() == parallel.fused.size());
  for (std::size_t i = 0; i < serial.fused.size(); ++i) {
    CHECK(serial.fused[i] == parallel.fused[i]);
    CHECK(serial.fused[i] >= 0.0);
    CHECK(serial.fused[i] <= 1.0);
  }
}

TEST_CASE("run 3 without a model is a startup error") {
  RunConfig cfg = load_run_config(mini_config_path());
  Toolkit toolkit(cfg);
  StsDataset ds = toolkit.load_pairs(data_dir() + "/pairs.tsv");
  toolkit.ensure_idf(ds);
  CHECK_THROWS_AS(toolkit.score_dataset(ds, preset_methods(3), 3), Error);
}

TEST_CASE("require_methods names the missing resource") {
  RunConfig cfg;  // nothing configured
  Toolkit toolkit(cfg);
  CHECK_THROWS_AS(toolkit.require_methods({Method::C3G}), Error);
  CHECK_THROWS_AS(toolkit.require_methods({Method::CTS}), Error);
  CHECK_THROWS_AS(toolkit.require_methods({Method::TWA}), Error);
  CHECK_THROWS_AS(toolkit.require_methods({Method::WES}), Error);
}

TEST_CASE("training examples use gold/5 as the regression target") {
  RunConfig cfg = load_run_config(mini_config_path());
  Toolkit toolkit(cfg);
  StsDataset ds = toolkit.load_pairs(data_dir() + "/pairs.tsv",
                                     data_dir() + "/gold.txt");
  toolkit.ensure_idf(ds);
  auto examples = toolkit.training_examples(ds);
  REQUIRE(examples.size() == 10);
  CHECK(examples[0].target == doctest::Approx(4.8 / 5.0));
  CHECK(examples[0].features.size() == 4);
}

TEST_CASE("identity pair under run 2 scores exactly 5.0") {
  // A pair whose two sides are the same text, with a translation-table row
  // mapping it to itself and words the lexicon maps to themselves: every
  // run-2 method hits 1.0, so the written score is 5.0000.
  auto pairs = write_temp("xlingsim_identity_pairs.tsv", "Maria 42.\tMaria 42.\n");
  auto trans = write_temp("xlingsim_identity_trans.tsv", "Maria 42.\tMaria 42.\n");
  auto lex = write_temp("xlingsim_identity_lex.tsv", "maria\tmaria\n42\t42\n");
  auto conf = write_temp("xlingsim_identity.conf",
                         "src_lang = es\ntgt_lang = en\nlexicon = " +
                             lex.string() + "\ntranslations = " +
                             trans.string() + "\n");
  Toolkit toolkit(load_run_config(conf.string()));
  StsDataset ds = toolkit.load_pairs(pairs.string());
  toolkit.ensure_idf(ds);
  ScoreOutput out = toolkit.score_dataset(ds, preset_methods(2), 2);
  REQUIRE(out.fused.size() == 1);
  CHECK(out.fused[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rescale_0_5(out.fused)[0] == doctest::Approx(5.0).epsilon(1e-12));

  auto scores = std::filesystem::temp_directory_path() /
                "xlingsim_identity_scores.txt";
  write_scores(scores.string(), rescale_0_5(out.fused));
  std::ifstream in(scores);
  std::string line;
  std::getline(in, line);
  CHECK(line == "5.0000");

  for (const auto& p : {pairs, trans, lex, conf, std::filesystem::path(scores)}) {
    std::filesystem::remove(p);
  }
}

TEST_CASE("end-to-end: train a tree on the mini corpus and score run 3") {
  RunConfig cfg = load_run_config(mini_config_path());
  Toolkit toolkit(cfg);
  StsDataset ds = toolkit.load_pairs(data_dir() + "/pairs.tsv",
                                     data_dir() + "/gold.txt");
  toolkit.ensure_idf(ds);
  auto examples = toolkit.training_examples(ds);
  ModelTree tree = ModelTree::train(examples);
  toolkit.set_model(std::move(tree));

  ScoreOutput out = toolkit.score_dataset(ds, preset_methods(3), 3);
  REQUIRE(out.fused.size() == 10);
  std::vector<double> run3(out.fused);
  ScoreOutput run1 = toolkit.score_dataset(ds, preset_methods(1), 1);

  CHECK(pearson(run3, ds.gold) >= pearson(run1.fused, ds.gold));
}

TEST_SUITE_END();
