#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace xlingsim {

/// The four scoring methods in canonical feature order.
enum class Method { C3G = 0, CTS = 1, WES = 2, TWA = 3 };

inline constexpr std::array<Method, 4> kAllMethods = {Method::C3G, Method::CTS,
                                                      Method::WES, Method::TWA};

const char* to_string(Method m);
Method method_from_string(const std::string& name);

/// One value per enabled method, canonical order C3G, CTS, WES, TWA.
using FeatureVector = std::vector<double>;

struct TrainingExample {
  FeatureVector features;
  double target;
};

/// Arithmetic mean of per-method scores. Throws std::invalid_argument on an
/// empty list.
double average_fusion(const std::vector<double>& scores);

struct LinearModel {
  std::vector<double> coefficients;
  double intercept = 0.0;

  double predict(const FeatureVector& f) const;
};

/// Ordinary least squares; rank-deficient systems get the minimum-norm
/// solution. Throws std::invalid_argument on empty or non-finite data.
LinearModel train_linear(const std::vector<TrainingExample>& data);

struct ModelTreeOptions {
  std::size_t min_leaf = 4;
  bool prune = true;
  bool smoothing = false;  // leaf-path smoothing, off by default
};

/// M5' regression tree: internal nodes split one feature at an observed
/// value (<= goes left), leaves hold least-squares linear models.
///
/// Growing maximizes the standard-deviation reduction
///   SDR = sd(T) - sum_i (|T_i|/|T|) * sd(T_i)
/// over all (feature, observed value) candidates leaving at least min_leaf
/// examples per side, and stops when |T| < 2*min_leaf or
/// sd(T) < 0.05 * sd(root). Pruning replaces a subtree by a leaf when the
/// leaf's complexity-adjusted error, raw error * (n+v)/(n-v) with v the
/// parameter count, does not exceed the subtree's.
class ModelTree {
 public:
  struct Node {
    bool is_leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    LinearModel model;
    std::size_t n_examples = 0;
    std::unique_ptr<Node> left;
    std::unique_ptr<Node> right;
  };

  /// Requires at least 2*min_leaf examples with finite values; feature
  /// vectors must all share one length.
  static ModelTree train(const std::vector<TrainingExample>& data,
                         const ModelTreeOptions& options = {});

  /// Routes by thresholds and evaluates the leaf model. Throws
  /// std::invalid_argument on a feature-count mismatch.
  double predict(const FeatureVector& f) const;

  std::size_t feature_count() const { return n_features_; }
  std::size_t leaf_count() const;
  std::size_t depth() const;
  bool smoothing() const { return smoothing_; }

  /// Versioned textual format: a header, then pre-order
  /// `node <feature> <threshold>` / `leaf <intercept> <c1> ... <ck>` lines.
  void save(const std::string& path) const;
  static ModelTree load(const std::string& path);

 private:
  ModelTree() = default;

  std::unique_ptr<Node> root_;
  std::size_t n_features_ = 0;
  bool smoothing_ = false;
};

}  // namespace xlingsim
