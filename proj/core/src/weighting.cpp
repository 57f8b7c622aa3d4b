#include "xlingsim/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "internal_io.hpp"
#include "xlingsim/errors.hpp"

namespace xlingsim {

double IdfModel::idf(const std::string& term) const {
  auto it = df.find(term);
  const auto freq = it != df.end() ? it->second : std::size_t{1};
  return std::log1p(static_cast<double>(doc_count) /
                    static_cast<double>(freq));
}

IdfModel build_idf(const std::vector<std::vector<std::string>>& documents) {
  if (documents.empty()) {
    throw std::invalid_argument("idf corpus must not be empty");
  }
  IdfModel model;
  model.doc_count = documents.size();
  std::unordered_set<std::string> seen;
  for (const auto& doc : documents) {
    seen.clear();
    for (const auto& term : doc) {
      if (seen.insert(term).second) {
        ++model.df[term];
      }
    }
  }
  return model;
}

void save_idf(const IdfModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  out << "N\t" << model.doc_count << "\n";
  std::vector<std::pair<std::string, std::size_t>> rows(model.df.begin(),
                                                        model.df.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [term, freq] : rows) {
    out << term << "\t" << freq << "\n";
  }
  if (!out) {
    throw Error("write failed: " + path);
  }
}

IdfModel load_idf(const std::string& path) {
  auto in = detail::open_or_throw(path);
  std::string line;
  if (!detail::next_line(in, line)) {
    throw ParseError(path, 1, "missing N<TAB>count header");
  }
  auto header = detail::split_tab(line);
  if (header.size() != 2 || header[0] != "N") {
    throw ParseError(path, 1, "expected header N<TAB>count");
  }
  IdfModel model;
  try {
    model.doc_count = std::stoull(header[1]);
  } catch (const std::exception&) {
    throw ParseError(path, 1, "invalid document count: " + header[1]);
  }
  if (model.doc_count < 1) {
    throw ParseError(path, 1, "document count must be >= 1");
  }
  std::size_t line_no = 1;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_tab(line);
    if (fields.size() != 2) {
      throw ParseError(path, line_no, "expected term<TAB>df");
    }
    std::size_t freq = 0;
    try {
      freq = std::stoull(fields[1]);
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "invalid df value: " + fields[1]);
    }
    if (freq < 1 || freq > model.doc_count) {
      throw ParseError(path, line_no, "df out of range [1, N]");
    }
    model.df[fields[0]] = freq;
  }
  return model;
}

std::map<std::string, double> tf_double_norm(
    const std::map<std::string, std::size_t>& counts, double k) {
  if (counts.empty()) {
    throw std::invalid_argument("tf_double_norm requires non-empty counts");
  }
  if (!(k >= 0.0 && k <= 1.0)) {
    throw std::invalid_argument("K must lie in [0, 1]");
  }
  std::size_t max_count = 0;
  for (const auto& [term, count] : counts) {
    max_count = std::max(max_count, count);
  }
  std::map<std::string, double> tf;
  for (const auto& [term, count] : counts) {
    tf[term] = k + (1.0 - k) * static_cast<double>(count) /
                        static_cast<double>(max_count);
  }
  return tf;
}

SparseVector tfidf_vector(const std::vector<std::string>& terms,
                          const IdfModel& model, double k) {
  SparseVector v;
  if (terms.empty()) {
    return v;
  }
  std::map<std::string, std::size_t> counts;
  for (const auto& term : terms) {
    ++counts[term];
  }
  for (const auto& [term, tf] : tf_double_norm(counts, k)) {
    v.weights[term] = tf * model.idf(term);
  }
  return v;
}

double cosine(const SparseVector& a, const SparseVector& b) {
  const auto& small = a.weights.size() <= b.weights.size() ? a : b;
  const auto& large = a.weights.size() <= b.weights.size() ? b : a;
  double dot = 0.0;
  for (const auto& [term, weight] : small.weights) {
    auto it = large.weights.find(term);
    if (it != large.weights.end()) {
      dot += weight * it->second;
    }
  }
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (const auto& [term, weight] : a.weights) norm_a += weight * weight;
  for (const auto& [term, weight] : b.weights) norm_b += weight * weight;
  if (norm_a == 0.0 || norm_b == 0.0) {
    return 0.0;
  }
  // Clamp float overshoot: identical vectors can land a few ulp above 1.
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += a[i] * b[i];
  }
  for (double x : a) norm_a += x * x;
  for (double x : b) norm_b += x * x;
  if (norm_a == 0.0 || norm_b == 0.0) {
    return 0.0;
  }
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

double phi(const Token& token, const IdfModel& model,
           const WeightParams& params) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  const double pos_weight = params.weight_for(token.pos);
  if (pos_weight < 0.0) {
    throw std::invalid_argument("pos weight must be nonnegative");
  }
  // std::pow(0, 0) == 1, which is exactly the convention wanted here.
  return std::pow(pos_weight, 1.0 - params.alpha) *
         std::pow(model.idf(token.normalized), params.alpha);
}

void save_weight_params(const WeightParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write file: " + path);
  }
  for (PosTag tag : universal_tags()) {
    out << to_string(tag) << "\t" << detail::format_double(params.weight_for(tag))
        << "\n";
  }
  out << "UNKNOWN\t" << detail::format_double(params.unknown_weight) << "\n";
  out << "alpha\t" << detail::format_double(params.alpha) << "\n";
  if (!out) {
    throw Error("write failed: " + path);
  }
}

WeightParams load_weight_params(const std::string& path) {
  auto in = detail::open_or_throw(path);
  WeightParams params;
  std::array<bool, kUniversalTagCount> seen{};
  bool saw_alpha = false;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    auto fields = detail::split_tab(line);
    if (fields.size() != 2) {
      throw ParseError(path, line_no, "expected NAME<TAB>value");
    }
    double value = 0.0;
    try {
      std::size_t consumed = 0;
      value = std::stod(fields[1], &consumed);
      if (consumed != fields[1].size()) {
        throw std::invalid_argument(fields[1]);
      }
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "invalid numeric value: " + fields[1]);
    }
    if (fields[0] == "alpha") {
      if (!(value >= 0.0 && value <= 1.0)) {
        throw ParseError(path, line_no, "alpha must lie in [0, 1]");
      }
      params.alpha = value;
      saw_alpha = true;
      continue;
    }
    if (fields[0] == "UNKNOWN") {
      if (value < 0.0) {
        throw ParseError(path, line_no, "weights must be nonnegative");
      }
      params.unknown_weight = value;
      continue;
    }
    PosTag tag;
    try {
      tag = tag_from_string(fields[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, line_no, e.what());
    }
    if (value < 0.0) {
      throw ParseError(path, line_no, "weights must be nonnegative");
    }
    params.pos_weights[static_cast<std::size_t>(tag)] = value;
    seen[static_cast<std::size_t>(tag)] = true;
  }
  for (std::size_t i = 0; i < kUniversalTagCount; ++i) {
    if (!seen[i]) {
      throw Error(path + ": missing weight for tag " +
                  to_string(static_cast<PosTag>(i)));
    }
  }
  if (!saw_alpha) {
    throw Error(path + ": missing alpha line");
  }
  return params;
}

}  // namespace xlingsim
