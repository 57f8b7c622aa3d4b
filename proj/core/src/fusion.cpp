#include "xlingsim/fusion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "internal_io.hpp"
#include "xlingsim/errors.hpp"

namespace xlingsim {

const char* to_string(Method m) {
  switch (m) {
    case Method::C3G:
      return "c3g";
    case Method::CTS:
      return "cts";
    case Method::WES:
      return "wes";
    case Method::TWA:
      return "twa";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  for (Method m : kAllMethods) {
    if (name == to_string(m)) {
      return m;
    }
  }
  throw std::invalid_argument("unknown method: " + name +
                              " (expected c3g|cts|wes|twa)");
}

double average_fusion(const std::vector<double>& scores) {
  if (scores.empty()) {
    throw std::invalid_argument("average_fusion requires at least one score");
  }
  double sum = 0.0;
  for (double s : scores) {
    sum += s;
  }
  return sum / static_cast<double>(scores.size());
}

double LinearModel::predict(const FeatureVector& f) const {
  if (f.size() != coefficients.size()) {
    throw std::invalid_argument("feature vector length " +
                                std::to_string(f.size()) +
                                " does not match model with " +
                                std::to_string(coefficients.size()) +
                                " coefficients");
  }
  double y = intercept;
  for (std::size_t i = 0; i < f.size(); ++i) {
    y += coefficients[i] * f[i];
  }
  return y;
}

namespace {

using Indices = std::vector<std::size_t>;

void validate_data(const std::vector<TrainingExample>& data) {
  if (data.empty()) {
    throw std::invalid_argument("training data must not be empty");
  }
  const std::size_t nf = data.front().features.size();
  for (const auto& ex : data) {
    if (ex.features.size() != nf) {
      throw std::invalid_argument("feature vectors must share one length");
    }
    if (!std::isfinite(ex.target)) {
      throw std::invalid_argument("targets must be finite");
    }
    for (double v : ex.features) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("features must be finite");
      }
    }
  }
}

/// Least squares on centered data; the minimum-norm solution of the
/// centered system leaves constant features with zero coefficients.
LinearModel fit_least_squares(const std::vector<TrainingExample>& data,
                              const Indices& indices) {
  const std::size_t n = indices.size();
  const std::size_t nf = data.front().features.size();

  Eigen::VectorXd feature_mean = Eigen::VectorXd::Zero(nf);
  double target_mean = 0.0;
  for (std::size_t idx : indices) {
    for (std::size_t c = 0; c < nf; ++c) {
      feature_mean[c] += data[idx].features[c];
    }
    target_mean += data[idx].target;
  }
  feature_mean /= static_cast<double>(n);
  target_mean /= static_cast<double>(n);

  Eigen::MatrixXd x_centered(n, nf);
  Eigen::VectorXd y_centered(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < nf; ++c) {
      x_centered(r, c) = data[indices[r]].features[c] - feature_mean[c];
    }
    y_centered(r) = data[indices[r]].target - target_mean;
  }

  Eigen::VectorXd w =
      x_centered.completeOrthogonalDecomposition().solve(y_centered);

  LinearModel model;
  model.coefficients.assign(w.data(), w.data() + nf);
  model.intercept = target_mean - w.dot(feature_mean);
  return model;
}

double population_sd(const std::vector<TrainingExample>& data,
                     const Indices& indices) {
  const double n = static_cast<double>(indices.size());
  double mean = 0.0;
  for (std::size_t idx : indices) {
    mean += data[idx].target;
  }
  mean /= n;
  double ss = 0.0;
  for (std::size_t idx : indices) {
    const double d = data[idx].target - mean;
    ss += d * d;
  }
  return std::sqrt(std::max(0.0, ss / n));
}

double mean_abs_error(const LinearModel& model,
                      const std::vector<TrainingExample>& data,
                      const Indices& indices) {
  double total = 0.0;
  for (std::size_t idx : indices) {
    total += std::abs(model.predict(data[idx].features) - data[idx].target);
  }
  const double mae = total / static_cast<double>(indices.size());
  // Residuals this small are rounding noise from an exact fit; snapping them
  // to zero keeps the pruning comparison from being decided by float dust.
  return mae < 1e-12 ? 0.0 : mae;
}

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0.0;
  double sdr = -1.0;
};

Split best_split(const std::vector<TrainingExample>& data,
                 const Indices& indices, std::size_t min_leaf) {
  const std::size_t n = indices.size();
  const std::size_t nf = data.front().features.size();
  const double sd_total = population_sd(data, indices);

  Split best;
  std::vector<std::pair<double, double>> points(n);  // (value, target)
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t r = 0; r < n; ++r) {
      points[r] = {data[indices[r]].features[f], data[indices[r]].target};
    }
    std::sort(points.begin(), points.end());

    // Prefix sums give each candidate's side statistics in O(1).
    double left_sum = 0.0;
    double left_sq = 0.0;
    double total_sum = 0.0;
    double total_sq = 0.0;
    for (const auto& [value, target] : points) {
      total_sum += target;
      total_sq += target * target;
    }
    for (std::size_t p = 1; p < n; ++p) {
      left_sum += points[p - 1].second;
      left_sq += points[p - 1].second * points[p - 1].second;
      if (p < min_leaf || n - p < min_leaf) {
        continue;
      }
      if (points[p - 1].first == points[p].first) {
        continue;  // threshold must separate distinct observed values
      }
      const double nl = static_cast<double>(p);
      const double nr = static_cast<double>(n - p);
      const double var_l =
          std::max(0.0, left_sq / nl - (left_sum / nl) * (left_sum / nl));
      const double right_sum = total_sum - left_sum;
      const double right_sq = total_sq - left_sq;
      const double var_r = std::max(
          0.0, right_sq / nr - (right_sum / nr) * (right_sum / nr));
      const double sdr = sd_total - (nl / static_cast<double>(n)) *
                                         std::sqrt(var_l) -
                         (nr / static_cast<double>(n)) * std::sqrt(var_r);
      if (sdr > best.sdr) {
        best.found = true;
        best.sdr = sdr;
        best.feature = f;
        best.threshold = points[p - 1].first;
      }
    }
  }
  return best;
}

constexpr double kSdStopFraction = 0.05;

struct Builder {
  const std::vector<TrainingExample>& data;
  ModelTreeOptions options;
  double root_sd = 0.0;

  std::unique_ptr<ModelTree::Node> build(const Indices& indices) {
    auto node = std::make_unique<ModelTree::Node>();
    node->n_examples = indices.size();
    node->model = fit_least_squares(data, indices);

    const double node_sd = population_sd(data, indices);
    if (indices.size() < 2 * options.min_leaf || node_sd == 0.0 ||
        node_sd < kSdStopFraction * root_sd) {
      return node;
    }
    const Split split = best_split(data, indices, options.min_leaf);
    if (!split.found) {
      return node;  // every feature constant on this subset
    }

    Indices left;
    Indices right;
    for (std::size_t idx : indices) {
      if (data[idx].features[split.feature] <= split.threshold) {
        left.push_back(idx);
      } else {
        right.push_back(idx);
      }
    }
    node->is_leaf = false;
    node->feature = split.feature;
    node->threshold = split.threshold;
    node->left = build(left);
    node->right = build(right);
    return node;
  }

  /// Bottom-up pruning; returns the node's complexity-adjusted error
  /// estimate. v counts the leaf model's parameters (coefficients plus
  /// intercept); nodes with n <= v cannot justify a model at all.
  double prune(ModelTree::Node& node, const Indices& indices) {
    const double n = static_cast<double>(indices.size());
    const double v = static_cast<double>(data.front().features.size() + 1);
    const double as_leaf =
        n > v ? mean_abs_error(node.model, data, indices) * (n + v) / (n - v)
              : std::numeric_limits<double>::infinity();
    if (node.is_leaf) {
      return as_leaf;
    }

    Indices left;
    Indices right;
    for (std::size_t idx : indices) {
      if (data[idx].features[node.feature] <= node.threshold) {
        left.push_back(idx);
      } else {
        right.push_back(idx);
      }
    }
    const double err_left = prune(*node.left, left);
    const double err_right = prune(*node.right, right);
    const double subtree_err = (static_cast<double>(left.size()) * err_left +
                                static_cast<double>(right.size()) * err_right) /
                               n;
    if (as_leaf <= subtree_err) {
      node.is_leaf = true;
      node.left.reset();
      node.right.reset();
      return as_leaf;
    }
    return subtree_err;
  }
};

std::size_t count_leaves(const ModelTree::Node& node) {
  if (node.is_leaf) {
    return 1;
  }
  return count_leaves(*node.left) + count_leaves(*node.right);
}

std::size_t node_depth(const ModelTree::Node& node) {
  if (node.is_leaf) {
    return 0;
  }
  return 1 + std::max(node_depth(*node.left), node_depth(*node.right));
}

constexpr double kSmoothingK = 15.0;

void write_node(std::ostream& out, const ModelTree::Node& node) {
  if (node.is_leaf) {
    out << "leaf " << detail::format_double(node.model.intercept);
    for (double c : node.model.coefficients) {
      out << " " << detail::format_double(c);
    }
    out << "\n";
    return;
  }
  out << "node " << node.feature << " "
      << detail::format_double(node.threshold) << "\n";
  write_node(out, *node.left);
  write_node(out, *node.right);
}

std::unique_ptr<ModelTree::Node> read_node(std::istream& in,
                                           const std::string& path,
                                           std::size_t& line_no,
                                           std::size_t n_features) {
  std::string line;
  if (!detail::next_line(in, line)) {
    throw ParseError(path, line_no, "unexpected end of tree");
  }
  ++line_no;
  std::istringstream row(line);
  std::string kind;
  row >> kind;
  auto node = std::make_unique<ModelTree::Node>();
  if (kind == "node") {
    std::size_t feature = 0;
    double threshold = 0.0;
    if (!(row >> feature >> threshold) || feature >= n_features) {
      throw ParseError(path, line_no, "malformed node line");
    }
    node->is_leaf = false;
    node->feature = feature;
    node->threshold = threshold;
    node->left = read_node(in, path, line_no, n_features);
    node->right = read_node(in, path, line_no, n_features);
    return node;
  }
  if (kind == "leaf") {
    if (!(row >> node->model.intercept)) {
      throw ParseError(path, line_no, "malformed leaf line");
    }
    node->model.coefficients.resize(n_features);
    for (std::size_t i = 0; i < n_features; ++i) {
      if (!(row >> node->model.coefficients[i])) {
        throw ParseError(path, line_no,
                         "leaf must list " + std::to_string(n_features) +
                             " coefficients");
      }
    }
    double extra = 0.0;
    if (row >> extra) {
      throw ParseError(path, line_no, "too many coefficients on leaf line");
    }
    return node;
  }
  throw ParseError(path, line_no, "expected `node` or `leaf` line");
}

}  // namespace

LinearModel train_linear(const std::vector<TrainingExample>& data) {
  validate_data(data);
  Indices all(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    all[i] = i;
  }
  return fit_least_squares(data, all);
}

ModelTree ModelTree::train(const std::vector<TrainingExample>& data,
                           const ModelTreeOptions& options) {
  validate_data(data);
  if (options.min_leaf < 1) {
    throw std::invalid_argument("min_leaf must be >= 1");
  }
  if (data.size() < 2 * options.min_leaf) {
    throw std::invalid_argument(
        "model tree needs at least " + std::to_string(2 * options.min_leaf) +
        " examples, got " + std::to_string(data.size()));
  }
  Indices all(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    all[i] = i;
  }
  Builder builder{data, options, population_sd(data, all)};
  ModelTree tree;
  tree.n_features_ = data.front().features.size();
  tree.smoothing_ = options.smoothing;
  tree.root_ = builder.build(all);
  if (options.prune) {
    builder.prune(*tree.root_, all);
  }
  return tree;
}

double ModelTree::predict(const FeatureVector& f) const {
  if (f.size() != n_features_) {
    throw std::invalid_argument("feature vector length " +
                                std::to_string(f.size()) +
                                " does not match tree trained on " +
                                std::to_string(n_features_) + " features");
  }
  std::vector<const Node*> path;
  const Node* node = root_.get();
  while (!node->is_leaf) {
    path.push_back(node);
    node = f[node->feature] <= node->threshold ? node->left.get()
                                               : node->right.get();
  }
  double prediction = node->model.predict(f);
  if (smoothing_) {
    // Blend the leaf value with each ancestor's model on the way up.
    double n_below = static_cast<double>(node->n_examples);
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      prediction = (n_below * prediction + kSmoothingK * (*it)->model.predict(f)) /
                   (n_below + kSmoothingK);
      n_below = static_cast<double>((*it)->n_examples);
    }
  }
  return prediction;
}

std::size_t ModelTree::leaf_count() const { return count_leaves(*root_); }

std::size_t ModelTree::depth() const { return node_depth(*root_); }

void ModelTree::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  out << "xlingsim-m5tree 1\n";
  out << "features " << n_features_ << "\n";
  write_node(out, *root_);
  if (!out) {
    throw Error("write failed: " + path);
  }
}

ModelTree ModelTree::load(const std::string& path) {
  auto in = detail::open_or_throw(path);
  std::string line;
  if (!detail::next_line(in, line) || line != "xlingsim-m5tree 1") {
    throw ParseError(path, 1, "expected header `xlingsim-m5tree 1`");
  }
  if (!detail::next_line(in, line)) {
    throw ParseError(path, 2, "expected `features <count>` line");
  }
  std::istringstream header(line);
  std::string keyword;
  std::size_t n_features = 0;
  if (!(header >> keyword >> n_features) || keyword != "features" ||
      n_features < 1) {
    throw ParseError(path, 2, "expected `features <count>` line");
  }
  ModelTree tree;
  tree.n_features_ = n_features;
  std::size_t line_no = 2;
  tree.root_ = read_node(in, path, line_no, n_features);
  if (detail::next_line(in, line) && !line.empty()) {
    throw ParseError(path, line_no + 1, "trailing content after tree");
  }
  return tree;
}

}  // namespace xlingsim
