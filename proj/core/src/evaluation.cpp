#include "xlingsim/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "internal_io.hpp"
#include "xlingsim/cts.hpp"
#include "xlingsim/errors.hpp"
#include "xlingsim/wes.hpp"

namespace xlingsim {

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("pearson requires equal-length inputs");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("pearson requires at least two points");
  }
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double cov = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    throw std::invalid_argument("pearson undefined for zero-variance input");
  }
  return cov / std::sqrt(var_x * var_y);
}

std::vector<double> rescale_0_5(const std::vector<double>& scores) {
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("score outside [0, 1]: " +
                                  std::to_string(s));
    }
    out.push_back(s * 5.0);
  }
  return out;
}

StsDataset load_dataset(const std::string& pairs_path,
                        const std::string& gold_path,
                        const std::string& src_lang,
                        const std::string& tgt_lang) {
  auto in = detail::open_or_throw(pairs_path);
  StsDataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_tab(line);
    if (fields.size() != 2) {
      throw ParseError(pairs_path, line_no,
                       "expected source_sentence<TAB>target_sentence");
    }
    ds.pairs.emplace_back(make_sentence(src_lang, fields[0]),
                          make_sentence(tgt_lang, fields[1]));
  }

  if (!gold_path.empty()) {
    auto gold_in = detail::open_or_throw(gold_path);
    std::size_t gold_line = 0;
    while (detail::next_line(gold_in, line)) {
      ++gold_line;
      if (line.empty()) {
        continue;
      }
      double value = 0.0;
      try {
        std::size_t consumed = 0;
        value = std::stod(line, &consumed);
        if (consumed != line.size()) {
          throw std::invalid_argument(line);
        }
      } catch (const std::exception&) {
        throw ParseError(gold_path, gold_line, "invalid gold value: " + line);
      }
      if (!(value >= 0.0 && value <= 5.0)) {
        throw ParseError(gold_path, gold_line,
                         "gold value outside [0, 5]: " + line);
      }
      if (ds.gold.size() == ds.pairs.size()) {
        throw ParseError(gold_path, gold_line, "more gold scores than pairs");
      }
      ds.gold.push_back(value);
    }
    if (ds.gold.size() != ds.pairs.size()) {
      throw ParseError(gold_path, gold_line + 1,
                       "fewer gold scores than pairs (" +
                           std::to_string(ds.gold.size()) + " vs " +
                           std::to_string(ds.pairs.size()) + ")");
    }
  }
  return ds;
}

void write_scores(const std::string& path, const std::vector<double>& scores) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  for (double s : scores) {
    out << detail::format_fixed(s, 4) << "\n";
  }
  if (!out) {
    throw Error("write failed: " + path);
  }
}

CvResult kfold_cv(const std::vector<TrainingExample>& data, std::size_t k,
                  std::uint64_t seed, const Trainer& trainer) {
  if (k < 2) {
    throw std::invalid_argument("k must be >= 2");
  }
  if (data.size() < k) {
    throw std::invalid_argument("k exceeds the number of examples");
  }

  // Hand-rolled Fisher-Yates so the permutation is identical on every
  // platform (std::shuffle is implementation-defined).
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }

  const std::size_t base = data.size() / k;
  const std::size_t extra = data.size() % k;
  CvResult result;
  std::size_t start = 0;
  for (std::size_t fold = 0; fold < k; ++fold) {
    const std::size_t size = base + (fold < extra ? 1 : 0);
    const std::size_t end = start + size;

    std::vector<TrainingExample> train_set;
    train_set.reserve(data.size() - size);
    std::vector<const TrainingExample*> held_out;
    held_out.reserve(size);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      if (pos >= start && pos < end) {
        held_out.push_back(&data[order[pos]]);
      } else {
        train_set.push_back(data[order[pos]]);
      }
    }
    start = end;

    Predictor predictor = trainer(train_set);
    std::vector<double> predicted;
    std::vector<double> actual;
    predicted.reserve(held_out.size());
    actual.reserve(held_out.size());
    for (const TrainingExample* ex : held_out) {
      predicted.push_back(predictor(ex->features));
      actual.push_back(ex->target);
    }
    try {
      result.fold_pearson.push_back(pearson(predicted, actual));
    } catch (const std::invalid_argument&) {
      result.skipped_folds.push_back(fold);
    }
  }
  if (result.fold_pearson.empty()) {
    throw Error("every cross-validation fold was skipped (zero variance)");
  }
  double sum = 0.0;
  for (double r : result.fold_pearson) {
    sum += r;
  }
  result.mean_pearson = sum / static_cast<double>(result.fold_pearson.size());
  return result;
}

namespace {

constexpr std::size_t kAlphaGridPoints = 21;
constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1.0 / 64.0;
constexpr double kMaxPosWeight = 2.0;

struct TuneObjective {
  const StsDataset& dev;
  Method method;
  const TuneResources& res;
  std::size_t budget;
  std::size_t evaluations = 0;

  bool exhausted() const { return evaluations >= budget; }

  /// Dev-set Pearson for candidate params; -inf when the method's scores
  /// have no variance (Pearson undefined there, but not a tuner failure).
  double evaluate(const WeightParams& params) {
    ++evaluations;
    std::vector<double> scores;
    scores.reserve(dev.size());
    for (const auto& [sx, sy] : dev.pairs) {
      double s = 0.0;
      switch (method) {
        case Method::CTS:
          s = score_cts(sx, sy, *res.lexicon, *res.embeddings, *res.src_stops,
                        *res.tgt_stops, params, *res.idf_src, *res.idf_tgt,
                        res.neighbor_k);
          break;
        case Method::WES:
          s = score_wes(sx, sy, *res.embeddings, *res.idf_src, *res.idf_tgt,
                        params, *res.src_stops, *res.tgt_stops);
          break;
        default:
          throw std::invalid_argument(
              "tune_params supports the cts and wes methods only");
      }
      scores.push_back(s);
    }
    try {
      return pearson(scores, dev.gold);
    } catch (const std::invalid_argument&) {
      return -std::numeric_limits<double>::infinity();
    }
  }
};

}  // namespace

TuneResult tune_params(const StsDataset& dev, Method method,
                       const TuneResources& resources, std::size_t budget,
                       const WeightParams& initial) {
  if (!dev.has_gold()) {
    throw std::invalid_argument("tuning requires a dev set with gold scores");
  }
  if (dev.size() < 2) {
    throw std::invalid_argument("tuning requires at least two dev pairs");
  }
  bool constant_gold = true;
  for (double g : dev.gold) {
    if (g != dev.gold.front()) {
      constant_gold = false;
      break;
    }
  }
  if (constant_gold) {
    throw std::invalid_argument("tuning requires non-constant gold scores");
  }
  if (budget < 1) {
    throw std::invalid_argument("budget must allow at least one evaluation");
  }
  if (method == Method::CTS &&
      (resources.lexicon == nullptr || resources.embeddings == nullptr)) {
    throw std::invalid_argument("cts tuning needs a lexicon and embeddings");
  }
  if (method == Method::WES && resources.embeddings == nullptr) {
    throw std::invalid_argument("wes tuning needs embeddings");
  }
  if (resources.src_stops == nullptr || resources.tgt_stops == nullptr ||
      resources.idf_src == nullptr || resources.idf_tgt == nullptr) {
    throw std::invalid_argument("tuning needs stop lists and idf models");
  }

  TuneObjective objective{dev, method, resources, budget};
  WeightParams current = initial;
  // Candidates are only accepted on strict improvement, so the result never
  // falls below the initial point.
  double best = objective.evaluate(current);

  // Alpha sweep over a fixed grid.
  for (std::size_t i = 0; i < kAlphaGridPoints && !objective.exhausted();
       ++i) {
    const double alpha =
        static_cast<double>(i) / static_cast<double>(kAlphaGridPoints - 1);
    if (alpha == current.alpha) {
      continue;
    }
    WeightParams candidate = current;
    candidate.alpha = alpha;
    const double r = objective.evaluate(candidate);
    if (r > best) {
      best = r;
      current.alpha = alpha;
    }
  }

  // Coordinate descent over the 12 pos weights with step halving.
  double step = kInitialStep;
  while (step >= kMinStep && !objective.exhausted()) {
    bool improved = false;
    for (std::size_t tag = 0;
         tag < kUniversalTagCount && !objective.exhausted(); ++tag) {
      for (double direction : {+1.0, -1.0}) {
        if (objective.exhausted()) {
          break;
        }
        const double moved = std::clamp(
            current.pos_weights[tag] + direction * step, 0.0, kMaxPosWeight);
        if (moved == current.pos_weights[tag]) {
          continue;
        }
        WeightParams candidate = current;
        candidate.pos_weights[tag] = moved;
        const double r = objective.evaluate(candidate);
        if (r > best) {
          best = r;
          current.pos_weights[tag] = moved;
          improved = true;
        }
      }
    }
    if (!improved) {
      step /= 2.0;
    }
  }

  return TuneResult{current, best, objective.evaluations};
}

}  // namespace xlingsim
