#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "xlingsim/c3g.hpp"
#include "xlingsim/cts.hpp"
#include "xlingsim/fusion.hpp"
#include "xlingsim/twa.hpp"
#include "xlingsim/wes.hpp"

using namespace xlingsim;

namespace {

struct BenchData {
  std::vector<Sentence> es;
  std::vector<Sentence> en;
  BilingualLexicon lex;
  EmbeddingModel emb;
  StopList stops_es{"es", {"es0", "es1"}};
  StopList stops_en{"en", {"en0", "en1"}};
  WeightParams params;
  IdfModel idf_es;
  IdfModel idf_en;
  IdfModel idf_c3g;
  TableTranslationProvider provider;

  BenchData() {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> word(0, 49);
    std::uniform_int_distribution<int> len(4, 14);
    lex.src_lang = "es";
    lex.tgt_lang = "en";
    emb.dim = 64;
    emb.src_lang = "es";
    emb.tgt_lang = "en";
    std::normal_distribution<double> coord(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const std::string se = "es" + std::to_string(i);
      const std::string sn = "en" + std::to_string(i);
      lex.entries[se] = {sn};
      std::vector<double> v(64);
      for (double& x : v) x = coord(rng);
      emb.src_vocab[se] = v;
      emb.tgt_vocab[sn] = v;
    }
    auto sentence = [&](const std::string& lang, const std::string& prefix) {
      std::string raw;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) {
        raw += prefix + std::to_string(word(rng)) + " ";
      }
      return make_sentence(lang, raw);
    };
    std::map<std::string, std::string> table;
    std::vector<std::vector<std::string>> docs_es, docs_en, docs_3g;
    for (int i = 0; i < 64; ++i) {
      es.push_back(sentence("es", "es"));
      en.push_back(sentence("en", "en"));
      std::string translated;
      for (const Token& t : es.back().tokens) {
        translated += "en" + t.normalized.substr(2) + " ";
      }
      table[es.back().raw] = translated;
      std::vector<std::string> de, dn;
      for (const Token& t : es.back().tokens) de.push_back(t.normalized);
      for (const Token& t : en.back().tokens) dn.push_back(t.normalized);
      docs_es.push_back(de);
      docs_en.push_back(dn);
      docs_3g.push_back(char_ngrams(es.back().normalized, 3));
      docs_3g.push_back(char_ngrams(en.back().normalized, 3));
    }
    idf_es = build_idf(docs_es);
    idf_en = build_idf(docs_en);
    idf_c3g = build_idf(docs_3g);
    provider = TableTranslationProvider(std::move(table));
  }
};

const BenchData& data() {
  static BenchData d;
  return d;
}

void BM_ScoreC3G(benchmark::State& state) {
  const auto& d = data();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        score_c3g(d.es[i % d.es.size()], d.en[i % d.en.size()], d.idf_c3g));
    ++i;
  }
}
BENCHMARK(BM_ScoreC3G);

void BM_ScoreCTS(benchmark::State& state) {
  const auto& d = data();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_cts(
        d.es[i % d.es.size()], d.en[i % d.en.size()], d.lex, d.emb, d.stops_es,
        d.stops_en, d.params, d.idf_es, d.idf_en, 10));
    ++i;
  }
}
BENCHMARK(BM_ScoreCTS);

void BM_ScoreWES(benchmark::State& state) {
  const auto& d = data();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        score_wes(d.es[i % d.es.size()], d.en[i % d.en.size()], d.emb,
                  d.idf_es, d.idf_en, d.params, d.stops_es, d.stops_en));
    ++i;
  }
}
BENCHMARK(BM_ScoreWES);

void BM_ScoreTWA(benchmark::State& state) {
  const auto& d = data();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        score_twa(d.es[i % d.es.size()], d.en[i % d.en.size()], d.provider,
                  d.emb, d.idf_en, d.stops_en));
    ++i;
  }
}
BENCHMARK(BM_ScoreTWA);

void BM_TrainModelTree(benchmark::State& state) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<TrainingExample> examples;
  for (int i = 0; i < 400; ++i) {
    FeatureVector f = {coord(rng), coord(rng), coord(rng), coord(rng)};
    const double target =
        f[1] < 0.5 ? 0.8 * f[1] + 0.1 * f[0] : 0.5 * f[1] + 0.4 * f[3];
    examples.push_back({f, target});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(ModelTree::train(examples));
  }
}
BENCHMARK(BM_TrainModelTree);

}  // namespace

BENCHMARK_MAIN();
