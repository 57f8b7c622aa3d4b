#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "xlingsim/wes.hpp"

using namespace xlingsim;

namespace {

struct WesFixture {
  EmbeddingModel emb;
  IdfModel idf_es;
  IdfModel idf_en;
  WeightParams params;
  StopList stops_es{"es", {}};
  StopList stops_en{"en", {}};

  WesFixture() {
    emb.dim = 2;
    emb.src_lang = "es";
    emb.tgt_lang = "en";
    idf_es = build_idf({{"gato"}});
    idf_en = build_idf({{"cat"}});
    params.alpha = 0.0;  // phi = pos weight = 1 unless a test changes it
  }

  double score(const Sentence& sx, const Sentence& sy) const {
    return score_wes(sx, sy, emb, idf_es, idf_en, params, stops_es, stops_en);
  }
};

}  // namespace

TEST_SUITE_BEGIN("wes");

TEST_CASE("one-word sentence with phi 1 gives that word's vector") {
  WesFixture f;
  f.emb.src_vocab["gato"] = {0.3, -0.4};
  Sentence s = make_sentence("es", "gato");
  auto v = sentence_vector(s, f.emb, f.idf_es, f.params);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == doctest::Approx(0.3));
  CHECK(v[1] == doctest::Approx(-0.4));
}

TEST_CASE("all-OOV sentence yields the zero vector") {
  WesFixture f;
  f.emb.src_vocab["gato"] = {1.0, 0.0};
  Sentence s = make_sentence("es", "perro casa");
  auto v = sentence_vector(s, f.emb, f.idf_es, f.params);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == 0.0);
  CHECK(v[1] == 0.0);
}

TEST_CASE("weighted sum applies phi per word") {
  // vectors (1,0) and (0,1) with weights 2 and 3 -> (2,3)
  WesFixture f;
  f.emb.src_vocab["dos"] = {1.0, 0.0};
  f.emb.src_vocab["tres"] = {0.0, 1.0};
  f.params.alpha = 0.0;
  f.params.pos_weights[static_cast<std::size_t>(PosTag::Noun)] = 2.0;
  f.params.pos_weights[static_cast<std::size_t>(PosTag::Verb)] = 3.0;
  std::vector<Token> tokens = {Token{"dos", "dos", PosTag::Noun, "es"},
                               Token{"tres", "tres", PosTag::Verb, "es"}};
  auto v = sentence_vector(tokens, "es", f.emb, f.idf_es, f.params);
  CHECK(v[0] == doctest::Approx(2.0));
  CHECK(v[1] == doctest::Approx(3.0));
}

TEST_CASE("identical single-word sentences sharing a vector score 1") {
  WesFixture f;
  f.emb.src_vocab["gato"] = {0.6, 0.8};
  f.emb.tgt_vocab["cat"] = {0.6, 0.8};
  CHECK(f.score(make_sentence("es", "gato"), make_sentence("en", "cat")) ==
        doctest::Approx(1.0));
}

TEST_CASE("orthogonal vectors score 0") {
  WesFixture f;
  f.emb.src_vocab["gato"] = {1.0, 0.0};
  f.emb.tgt_vocab["sky"] = {0.0, 1.0};
  CHECK(f.score(make_sentence("es", "gato"), make_sentence("en", "sky")) ==
        0.0);
}

TEST_CASE("hand cosine of (1,1) against (1,0)") {
  WesFixture f;
  f.emb.src_vocab["uno"] = {1.0, 1.0};
  f.emb.tgt_vocab["one"] = {1.0, 0.0};
  CHECK(f.score(make_sentence("es", "uno"), make_sentence("en", "one")) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("negative cosine clamps to 0") {
  WesFixture f;
  f.emb.src_vocab["gato"] = {1.0, 0.0};
  f.emb.tgt_vocab["anti"] = {-1.0, 0.0};
  CHECK(f.score(make_sentence("es", "gato"), make_sentence("en", "anti")) ==
        0.0);
}

TEST_CASE("zero vector on either side scores 0") {
  WesFixture f;
  f.emb.tgt_vocab["cat"] = {1.0, 0.0};
  CHECK(f.score(make_sentence("es", "oov"), make_sentence("en", "cat")) == 0.0);
}

TEST_CASE("stop words are filtered before the sum") {
  WesFixture f;
  f.stops_es.words = {"el"};
  f.emb.src_vocab["el"] = {0.0, 1.0};
  f.emb.src_vocab["gato"] = {1.0, 0.0};
  f.emb.tgt_vocab["cat"] = {1.0, 0.0};
  CHECK(f.score(make_sentence("es", "el gato"), make_sentence("en", "cat")) ==
        doctest::Approx(1.0));
}

TEST_CASE("scaling word vectors leaves the score unchanged") {
  WesFixture f;
  f.emb.src_vocab["gato"] = {0.5, 0.2};
  f.emb.src_vocab["rojo"] = {0.1, 0.9};
  f.emb.tgt_vocab["cat"] = {0.4, 0.3};
  Sentence sx = make_sentence("es", "gato rojo");
  Sentence sy = make_sentence("en", "cat");
  const double base = f.score(sx, sy);

  for (auto& [w, v] : f.emb.src_vocab) {
    for (double& x : v) x *= 3.5;
  }
  for (auto& [w, v] : f.emb.tgt_vocab) {
    for (double& x : v) x *= 3.5;
  }
  CHECK(f.score(sx, sy) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("permuting words leaves the sentence vector unchanged") {
  WesFixture f;
  f.emb.src_vocab["a"] = {0.2, 0.8};
  f.emb.src_vocab["b"] = {0.9, -0.1};
  f.emb.src_vocab["c"] = {-0.3, 0.4};
  Sentence forward = make_sentence("es", "a b c");
  Sentence backward = make_sentence("es", "c b a");
  auto vf = sentence_vector(forward, f.emb, f.idf_es, f.params);
  auto vb = sentence_vector(backward, f.emb, f.idf_es, f.params);
  REQUIRE(vf.size() == vb.size());
  for (std::size_t i = 0; i < vf.size(); ++i) {
    CHECK(vf[i] == doctest::Approx(vb[i]).epsilon(1e-12));
  }
}

TEST_CASE("symmetric and within [0, 1] on random pairs") {
  WesFixture f;
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  const std::vector<std::string> es_words = {"ga", "ro", "ca", "pe"};
  const std::vector<std::string> en_words = {"cat", "red", "hou", "dog"};
  for (const auto& w : es_words) f.emb.src_vocab[w] = {coord(rng), coord(rng)};
  for (const auto& w : en_words) f.emb.tgt_vocab[w] = {coord(rng), coord(rng)};
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  std::uniform_int_distribution<int> len(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::string es;
    std::string en;
    for (int i = 0; i < len(rng); ++i) es += es_words[pick(rng)] + " ";
    for (int i = 0; i < len(rng); ++i) en += en_words[pick(rng)] + " ";
    Sentence sx = make_sentence("es", es);
    Sentence sy = make_sentence("en", en);
    const double xy = f.score(sx, sy);
    const double yx = score_wes(sy, sx, f.emb, f.idf_en, f.idf_es, f.params,
                                f.stops_en, f.stops_es);
    CHECK(xy == doctest::Approx(yx).epsilon(1e-15));
    CHECK(xy >= 0.0);
    CHECK(xy <= 1.0 + 1e-12);
  }
}

TEST_SUITE_END();
