#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "xlingsim/errors.hpp"
#include "xlingsim/fusion.hpp"

using namespace xlingsim;

namespace {

double rmse(const ModelTree& tree, const std::vector<TrainingExample>& data) {
  double ss = 0.0;
  for (const auto& ex : data) {
    const double d = tree.predict(ex.features) - ex.target;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(data.size()));
}

double rmse(const LinearModel& model,
            const std::vector<TrainingExample>& data) {
  double ss = 0.0;
  for (const auto& ex : data) {
    const double d = model.predict(ex.features) - ex.target;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(data.size()));
}

/// 200 points of the noiseless hinge y = x below 0.5, y = 1 - x above.
std::vector<TrainingExample> hinge_data() {
  std::vector<TrainingExample> data;
  for (int i = 0; i < 200; ++i) {
    const double x = static_cast<double>(i) / 199.0;
    data.push_back({{x}, x < 0.5 ? x : 1.0 - x});
  }
  return data;
}

}  // namespace

TEST_SUITE_BEGIN("fusion");

TEST_CASE("method names round trip") {
  for (Method m : kAllMethods) {
    CHECK(method_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(method_from_string("bogus"), std::invalid_argument);
}

TEST_CASE("average_fusion") {
  CHECK(average_fusion({0.2, 0.4, 0.6}) == doctest::Approx(0.4));
  CHECK(average_fusion({0.37}) == doctest::Approx(0.37));
  CHECK(average_fusion({0.0, 1.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(average_fusion({}), std::invalid_argument);
}

TEST_CASE("average_fusion lies between min and max") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> scores;
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 1 + trial % 5; ++i) {
      scores.push_back(score(rng));
      lo = std::min(lo, scores.back());
      hi = std::max(hi, scores.back());
    }
    const double mean = average_fusion(scores);
    CHECK(mean >= lo - 1e-12);
    CHECK(mean <= hi + 1e-12);
  }
}

TEST_CASE("train_linear recovers a noiseless plane") {
  // y = 3a - b + 2
  std::vector<TrainingExample> data;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int i = 0; i < 40; ++i) {
    const double a = coord(rng);
    const double b = coord(rng);
    data.push_back({{a, b}, 3.0 * a - b + 2.0});
  }
  LinearModel model = train_linear(data);
  CHECK(model.coefficients[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(model.coefficients[1] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(model.intercept == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("train_linear on constant targets gives the mean intercept") {
  std::vector<TrainingExample> data;
  for (int i = 0; i < 10; ++i) {
    data.push_back({{static_cast<double>(i)}, 4.25});
  }
  LinearModel model = train_linear(data);
  CHECK(model.coefficients[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(model.intercept == doctest::Approx(4.25));
}

TEST_CASE("degenerate least squares takes the minimum-norm solution") {
  // A constant feature carries no information; centering zeroes it out.
  std::vector<TrainingExample> data;
  for (int i = 0; i < 8; ++i) {
    data.push_back({{1.0, static_cast<double>(i)}, 2.0 * i + 1.0});
  }
  LinearModel model = train_linear(data);
  CHECK(model.coefficients[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(model.coefficients[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(model.intercept == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("linear predict is a dot product plus intercept") {
  LinearModel model{{2.0, -1.0}, 0.5};
  CHECK(model.predict({3.0, 4.0}) == doctest::Approx(2.5));
  CHECK_THROWS_AS(model.predict({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(train_linear({}), std::invalid_argument);
}

TEST_CASE("constant target trains to a single constant leaf") {
  std::vector<TrainingExample> data;
  for (int i = 0; i < 20; ++i) {
    data.push_back({{static_cast<double>(i), static_cast<double>(i % 3)}, 0.7});
  }
  ModelTree tree = ModelTree::train(data);
  CHECK(tree.leaf_count() == 1);
  CHECK(tree.predict({5.0, 1.0}) == doctest::Approx(0.7));
}

TEST_CASE("noiseless line trains to one leaf matching the line") {
  std::vector<TrainingExample> data;
  for (int i = 0; i < 30; ++i) {
    const double x = static_cast<double>(i) / 10.0;
    data.push_back({{x}, 2.0 * x + 1.0});
  }
  ModelTree tree = ModelTree::train(data);
  CHECK(tree.leaf_count() == 1);
  CHECK(tree.predict({2.0}) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("hinge data grows a tree that beats the single linear fit") {
  auto data = hinge_data();
  ModelTree tree = ModelTree::train(data);
  LinearModel line = train_linear(data);
  CHECK(tree.leaf_count() >= 2);
  CHECK(rmse(tree, data) < rmse(line, data));
}

TEST_CASE("prediction routes thresholds with ties going left") {
  // Step data: y = 0 for x <= 0.5, y = 1 above; min_leaf 4 keeps the split
  // at the last observed value of the low segment.
  std::vector<TrainingExample> data;
  for (int i = 0; i < 10; ++i) {
    const double x = static_cast<double>(i) / 9.0;
    data.push_back({{x}, x <= 0.5 ? 0.0 : 1.0});
  }
  ModelTree tree = ModelTree::train(data);
  REQUIRE(tree.leaf_count() >= 2);
  CHECK(tree.predict({0.3}) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(tree.predict({0.9}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fully grown unpruned tree reproduces noiseless training data") {
  // Two segments with a jump so no mixed node ever has a small sd.
  std::vector<TrainingExample> data;
  for (int i = 0; i < 120; ++i) {
    const double x = static_cast<double>(i) / 119.0;
    data.push_back({{x}, x < 0.5 ? x : x + 1.0});
  }
  ModelTreeOptions options;
  options.min_leaf = 1;
  options.prune = false;
  ModelTree tree = ModelTree::train(data, options);
  for (const auto& ex : data) {
    CHECK(tree.predict(ex.features) == doctest::Approx(ex.target).epsilon(1e-6));
  }
}

TEST_CASE("pruning never increases the leaf count") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<TrainingExample> data;
  for (int i = 0; i < 150; ++i) {
    const double a = coord(rng);
    const double b = coord(rng);
    data.push_back({{a, b}, a * 0.8 + noise(rng)});
  }
  ModelTreeOptions grown;
  grown.prune = false;
  ModelTreeOptions pruned;
  pruned.prune = true;
  CHECK(ModelTree::train(data, pruned).leaf_count() <=
        ModelTree::train(data, grown).leaf_count());
}

TEST_CASE("a single-leaf tree equals train_linear") {
  std::vector<TrainingExample> data;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  for (int i = 0; i < 25; ++i) {
    const double a = coord(rng);
    const double b = coord(rng);
    data.push_back({{a, b}, 0.4 * a + 0.1 * b + 0.2});
  }
  ModelTree tree = ModelTree::train(data);
  REQUIRE(tree.leaf_count() == 1);
  LinearModel line = train_linear(data);
  for (const auto& ex : data) {
    CHECK(tree.predict(ex.features) ==
          doctest::Approx(line.predict(ex.features)).epsilon(1e-9));
  }
}

TEST_CASE("training rejects bad input") {
  std::vector<TrainingExample> tiny = {{{0.1}, 0.2}, {{0.3}, 0.1}};
  CHECK_THROWS_AS(ModelTree::train(tiny), std::invalid_argument);

  std::vector<TrainingExample> ragged;
  for (int i = 0; i < 10; ++i) {
    ragged.push_back({{0.1, 0.2}, 0.5});
  }
  ragged[4].features = {0.1};
  CHECK_THROWS_AS(ModelTree::train(ragged), std::invalid_argument);

  std::vector<TrainingExample> nan_target;
  for (int i = 0; i < 10; ++i) {
    nan_target.push_back({{static_cast<double>(i)}, 0.0});
  }
  nan_target[3].target = std::nan("");
  CHECK_THROWS_AS(ModelTree::train(nan_target), std::invalid_argument);
}

TEST_CASE("predict rejects a mismatched feature count") {
  auto data = hinge_data();
  ModelTree tree = ModelTree::train(data);
  CHECK_THROWS_AS(tree.predict({0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("model tree save/load round trip preserves predictions") {
  auto data = hinge_data();
  ModelTree tree = ModelTree::train(data);
  auto path =
      std::filesystem::temp_directory_path() / "xlingsim_tree_test.model";
  tree.save(path.string());
  ModelTree loaded = ModelTree::load(path.string());
  CHECK(loaded.feature_count() == tree.feature_count());
  CHECK(loaded.leaf_count() == tree.leaf_count());
  for (double x : {0.0, 0.21, 0.5, 0.77, 1.0}) {
    CHECK(loaded.predict({x}) == doctest::Approx(tree.predict({x})));
  }
  std::filesystem::remove(path);
}

TEST_CASE("model file loading validates its format") {
  auto dir = std::filesystem::temp_directory_path();
  auto write = [&](const std::string& name, const std::string& content) {
    auto p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
  };
  auto bad_header = write("xlingsim_tree_bad1.model", "not-a-tree\n");
  CHECK_THROWS_AS(ModelTree::load(bad_header.string()), ParseError);
  std::filesystem::remove(bad_header);

  auto truncated = write("xlingsim_tree_bad2.model",
                         "xlingsim-m5tree 1\nfeatures 1\nnode 0 0.5\nleaf 0 1\n");
  CHECK_THROWS_AS(ModelTree::load(truncated.string()), ParseError);
  std::filesystem::remove(truncated);

  auto extra = write("xlingsim_tree_bad3.model",
                     "xlingsim-m5tree 1\nfeatures 1\nleaf 0 1 2\n");
  CHECK_THROWS_AS(ModelTree::load(extra.string()), ParseError);
  std::filesystem::remove(extra);
}

TEST_CASE("smoothing blends leaf and ancestor models") {
  auto data = hinge_data();
  ModelTreeOptions smooth;
  smooth.smoothing = true;
  ModelTree smoothed = ModelTree::train(data, smooth);
  ModelTree plain = ModelTree::train(data);
  // Smoothing must still produce finite, near-target predictions.
  for (double x : {0.1, 0.4, 0.6, 0.9}) {
    const double p = smoothed.predict({x});
    CHECK(std::isfinite(p));
    CHECK(std::abs(p - plain.predict({x})) < 0.1);
  }
}

TEST_SUITE_END();
