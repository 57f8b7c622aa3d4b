#include "xlingsim/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <filesystem>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "internal_io.hpp"
#include "xlingsim/c3g.hpp"
#include "xlingsim/cts.hpp"
#include "xlingsim/errors.hpp"
#include "xlingsim/wes.hpp"

namespace xlingsim {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) {
    return {};
  }
  std::size_t end = s.find_last_not_of(" \t");
  return s.substr(start, end - start + 1);
}

double parse_double(const std::string& value, const std::string& path,
                    std::size_t line_no) {
  try {
    std::size_t consumed = 0;
    double parsed = std::stod(value, &consumed);
    if (consumed != value.size()) {
      throw std::invalid_argument(value);
    }
    return parsed;
  } catch (const std::exception&) {
    throw ParseError(path, line_no, "invalid numeric value: " + value);
  }
}

std::uint64_t parse_uint(const std::string& value, const std::string& path,
                         std::size_t line_no) {
  try {
    std::size_t consumed = 0;
    std::uint64_t parsed = std::stoull(value, &consumed);
    if (consumed != value.size()) {
      throw std::invalid_argument(value);
    }
    return parsed;
  } catch (const std::exception&) {
    throw ParseError(path, line_no, "invalid integer value: " + value);
  }
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  auto in = detail::open_or_throw(path);
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& value) {
    fs::path p(value);
    return p.is_absolute() ? p.string() : (base / p).string();
  };

  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_line(in, line)) {
    ++line_no;
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') {
      continue;
    }
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, line_no, "expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw ParseError(path, line_no, "empty config key");
    }

    if (key == "src_lang") {
      cfg.src_lang = value;
    } else if (key == "tgt_lang") {
      cfg.tgt_lang = value;
    } else if (key == "lexicon") {
      cfg.lexicon_path = resolve(value);
    } else if (key == "src_embeddings") {
      cfg.src_embeddings_path = resolve(value);
    } else if (key == "tgt_embeddings") {
      cfg.tgt_embeddings_path = resolve(value);
    } else if (key == "src_stops") {
      cfg.src_stops_path = resolve(value);
    } else if (key == "tgt_stops") {
      cfg.tgt_stops_path = resolve(value);
    } else if (key == "src_tags") {
      cfg.src_tags_path = resolve(value);
    } else if (key == "tgt_tags") {
      cfg.tgt_tags_path = resolve(value);
    } else if (key == "translations") {
      cfg.translations_path = resolve(value);
    } else if (key == "idf_c3g") {
      cfg.idf_c3g_path = resolve(value);
    } else if (key == "idf_src") {
      cfg.idf_src_path = resolve(value);
    } else if (key == "idf_tgt") {
      cfg.idf_tgt_path = resolve(value);
    } else if (key == "params") {
      cfg.params_path = resolve(value);
    } else if (key == "model") {
      cfg.model_path = resolve(value);
    } else if (key == "run") {
      const auto run = parse_uint(value, path, line_no);
      if (run < 1 || run > 3) {
        throw ParseError(path, line_no, "run must be 1, 2 or 3");
      }
      cfg.run = static_cast<int>(run);
    } else if (key == "method") {
      try {
        method_from_string(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(path, line_no, e.what());
      }
      cfg.method = value;
    } else if (key == "neighbor_k") {
      cfg.neighbor_k = parse_uint(value, path, line_no);
    } else if (key == "twa_threshold") {
      cfg.twa_threshold = parse_double(value, path, line_no);
    } else if (key == "ngram_n") {
      const auto n = parse_uint(value, path, line_no);
      if (n < 1) {
        throw ParseError(path, line_no, "ngram_n must be >= 1");
      }
      cfg.ngram_n = static_cast<int>(n);
    } else if (key == "tf_k") {
      cfg.tf_k = parse_double(value, path, line_no);
    } else if (key == "seed") {
      cfg.seed = parse_uint(value, path, line_no);
    } else if (key == "threads") {
      cfg.threads = parse_uint(value, path, line_no);
    } else {
      throw ParseError(path, line_no, "unknown config key: " + key);
    }
  }
  return cfg;
}

std::vector<Method> preset_methods(int run) {
  switch (run) {
    case 1:
      return {Method::CTS};
    case 2:
      return {Method::C3G, Method::CTS, Method::TWA};
    case 3:
      return {Method::C3G, Method::CTS, Method::WES, Method::TWA};
    default:
      throw std::invalid_argument("run preset must be 1, 2 or 3");
  }
}

Toolkit::Toolkit(RunConfig config) : config_(std::move(config)) {
  auto check_exists = [](const std::string& path) {
    if (!path.empty() && !fs::exists(path)) {
      throw Error("missing resource file: " + path);
    }
  };
  check_exists(config_.lexicon_path);
  check_exists(config_.src_embeddings_path);
  check_exists(config_.tgt_embeddings_path);
  check_exists(config_.src_stops_path);
  check_exists(config_.tgt_stops_path);
  check_exists(config_.src_tags_path);
  check_exists(config_.tgt_tags_path);
  check_exists(config_.translations_path);
  check_exists(config_.idf_c3g_path);
  check_exists(config_.idf_src_path);
  check_exists(config_.idf_tgt_path);
  check_exists(config_.params_path);
  check_exists(config_.model_path);

  src_stops_.lang = config_.src_lang;
  tgt_stops_.lang = config_.tgt_lang;
  src_tags_.lang = config_.src_lang;
  tgt_tags_.lang = config_.tgt_lang;
  lexicon_.src_lang = config_.src_lang;
  lexicon_.tgt_lang = config_.tgt_lang;
  embeddings_.src_lang = config_.src_lang;
  embeddings_.tgt_lang = config_.tgt_lang;

  if (!config_.src_stops_path.empty()) {
    src_stops_ = load_stoplist(config_.src_stops_path, config_.src_lang);
  }
  if (!config_.tgt_stops_path.empty()) {
    tgt_stops_ = load_stoplist(config_.tgt_stops_path, config_.tgt_lang);
  }
  if (!config_.src_tags_path.empty()) {
    src_tags_ = load_tag_lexicon(config_.src_tags_path, config_.src_lang);
  }
  if (!config_.tgt_tags_path.empty()) {
    tgt_tags_ = load_tag_lexicon(config_.tgt_tags_path, config_.tgt_lang);
  }
  if (!config_.lexicon_path.empty()) {
    lexicon_ =
        load_lexicon(config_.lexicon_path, config_.src_lang, config_.tgt_lang);
  }
  if (!config_.src_embeddings_path.empty() ||
      !config_.tgt_embeddings_path.empty()) {
    if (config_.src_embeddings_path.empty() ||
        config_.tgt_embeddings_path.empty()) {
      throw Error("src_embeddings and tgt_embeddings must be set together");
    }
    embeddings_ =
        load_embeddings(config_.src_embeddings_path,
                        config_.tgt_embeddings_path, config_.src_lang,
                        config_.tgt_lang);
  }
  if (!config_.translations_path.empty()) {
    translator_ = TableTranslationProvider::load(config_.translations_path);
    has_translator_ = true;
  }
  if (!config_.idf_c3g_path.empty()) {
    idf_c3g_ = load_idf(config_.idf_c3g_path);
  }
  if (!config_.idf_src_path.empty()) {
    idf_src_ = load_idf(config_.idf_src_path);
  }
  if (!config_.idf_tgt_path.empty()) {
    idf_tgt_ = load_idf(config_.idf_tgt_path);
  }
  if (!config_.params_path.empty()) {
    params_ = load_weight_params(config_.params_path);
  }
  if (!config_.model_path.empty()) {
    model_ = ModelTree::load(config_.model_path);
  }
}

StsDataset Toolkit::load_pairs(const std::string& pairs_path,
                               const std::string& gold_path) const {
  StsDataset ds =
      load_dataset(pairs_path, gold_path, config_.src_lang, config_.tgt_lang);
  for (auto& [sx, sy] : ds.pairs) {
    if (!src_tags_.entries.empty()) {
      pos_tag_in_place(sx, src_tags_);
    }
    if (!tgt_tags_.entries.empty()) {
      pos_tag_in_place(sy, tgt_tags_);
    }
  }
  return ds;
}

void Toolkit::ensure_idf(const StsDataset& ds) {
  if (idf_c3g_ && idf_src_ && idf_tgt_) {
    return;
  }
  if (ds.pairs.empty()) {
    throw Error("cannot build idf models from an empty pairs file");
  }
  if (!idf_c3g_) {
    std::vector<std::vector<std::string>> docs;
    docs.reserve(ds.pairs.size() * 2);
    for (const auto& [sx, sy] : ds.pairs) {
      docs.push_back(char_ngrams(sx.normalized, config_.ngram_n));
      docs.push_back(char_ngrams(sy.normalized, config_.ngram_n));
    }
    idf_c3g_ = build_idf(docs);
  }
  auto word_docs = [](const StsDataset& ds, bool source_side) {
    std::vector<std::vector<std::string>> docs;
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
    return docs;
  };
  if (!idf_src_) {
    idf_src_ = build_idf(word_docs(ds, true));
  }
  if (!idf_tgt_) {
    idf_tgt_ = build_idf(word_docs(ds, false));
  }
}

void Toolkit::require_methods(const std::vector<Method>& methods) const {
  for (Method m : methods) {
    switch (m) {
      case Method::C3G:
        if (!idf_c3g_) {
          throw Error(
              "c3g needs a character n-gram idf model (config key idf_c3g, "
              "or score a pairs file so one can be built)");
        }
        break;
      case Method::CTS:
        if (config_.src_lang != config_.tgt_lang && lexicon_.entries.empty() &&
            embeddings_.empty()) {
          throw Error(
              "cts needs a bilingual lexicon (config key lexicon) or "
              "embeddings to expand words across languages");
        }
        if (!idf_src_ || !idf_tgt_) {
          throw Error("cts needs word idf models (idf_src, idf_tgt)");
        }
        break;
      case Method::WES:
        if (embeddings_.empty()) {
          throw Error("wes needs embeddings (src_embeddings, tgt_embeddings)");
        }
        if (!idf_src_ || !idf_tgt_) {
          throw Error("wes needs word idf models (idf_src, idf_tgt)");
        }
        break;
      case Method::TWA:
        if (!has_translator_ && config_.src_lang != config_.tgt_lang) {
          throw Error("twa needs a translation table (config key translations)");
        }
        if (!idf_tgt_) {
          throw Error("twa needs the target-language idf model (idf_tgt)");
        }
        break;
    }
  }
}

const StopList& Toolkit::stops_for(const Sentence& s) const {
  return s.lang == config_.src_lang ? src_stops_ : tgt_stops_;
}

const IdfModel& Toolkit::idf_for(const Sentence& s) const {
  const auto& model = s.lang == config_.src_lang ? idf_src_ : idf_tgt_;
  if (!model) {
    throw Error("word idf model for language '" + s.lang + "' not loaded");
  }
  return *model;
}

double Toolkit::method_score(Method m, const Sentence& sx,
                             const Sentence& sy) const {
  switch (m) {
    case Method::C3G:
      return score_c3g(sx, sy, *idf_c3g_, config_.ngram_n, config_.tf_k);
    case Method::CTS:
      return score_cts(sx, sy, lexicon_, embeddings_, stops_for(sx),
                       stops_for(sy), params_, idf_for(sx), idf_for(sy),
                       config_.neighbor_k);
    case Method::WES:
      return score_wes(sx, sy, embeddings_, idf_for(sx), idf_for(sy), params_,
                       stops_for(sx), stops_for(sy));
    case Method::TWA:
      return score_twa(sx, sy, translator_, embeddings_, *idf_tgt_, tgt_stops_,
                       config_.twa_threshold);
  }
  throw std::invalid_argument("unknown method");
}

FeatureVector Toolkit::features(const Sentence& sx, const Sentence& sy) const {
  FeatureVector f;
  f.reserve(kAllMethods.size());
  for (Method m : kAllMethods) {
    f.push_back(method_score(m, sx, sy));
  }
  return f;
}

std::vector<TrainingExample> Toolkit::training_examples(
    const StsDataset& ds) const {
  if (!ds.has_gold()) {
    throw Error("training requires gold scores");
  }
  std::vector<TrainingExample> examples;
  examples.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    examples.push_back(TrainingExample{
        features(ds.pairs[i].first, ds.pairs[i].second), ds.gold[i] / 5.0});
  }
  return examples;
}

ScoreOutput Toolkit::score_dataset(const StsDataset& ds,
                                   const std::vector<Method>& methods,
                                   int run) const {
  require_methods(methods);
  if (run == 3 && !model_) {
    throw Error("run 3 requires a trained model file (config key model or "
                "--model)");
  }

  ScoreOutput out;
  out.methods = methods;
  out.per_method.assign(ds.size(), FeatureVector(methods.size(), 0.0));

  const std::size_t n = ds.size();
  const std::size_t worker_count =
      std::max<std::size_t>(1, std::min(config_.threads, n == 0 ? 1 : n));
  auto score_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t c = 0; c < methods.size(); ++c) {
        out.per_method[i][c] =
            method_score(methods[c], ds.pairs[i].first, ds.pairs[i].second);
      }
    }
  };

  if (worker_count <= 1 || n == 0) {
    score_range(0, n);
  } else {
    std::vector<std::thread> workers;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + worker_count - 1) / worker_count;
    for (std::size_t w = 0; w < worker_count; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin >= end) {
        break;
      }
      workers.emplace_back([&, begin, end] {
        try {
          score_range(begin, end);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
          }
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
    if (first_error) {
      std::rethrow_exception(first_error);
    }
  }

  out.fused.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fused = 0.0;
    if (run == 3) {
      fused = std::clamp(model_->predict(out.per_method[i]), 0.0, 1.0);
    } else if (methods.size() == 1) {
      fused = out.per_method[i][0];
    } else {
      fused = average_fusion(out.per_method[i]);
    }
    out.fused.push_back(fused);
  }
  return out;
}

Alignment Toolkit::align_sentences(const Sentence& x,
                                   const Sentence& y) const {
  return align(x, y, embeddings_, stops_for(x), config_.twa_threshold);
}

Sentence Toolkit::make_tagged_sentence(const std::string& lang,
                                       const std::string& raw) const {
  Sentence s = make_sentence(lang, raw);
  const TagLexicon& tags = lang == config_.src_lang ? src_tags_ : tgt_tags_;
  if (!tags.entries.empty()) {
    pos_tag_in_place(s, tags);
  }
  return s;
}

TuneResources Toolkit::tune_resources() const {
  TuneResources res;
  res.lexicon = &lexicon_;
  res.embeddings = &embeddings_;
  res.src_stops = &src_stops_;
  res.tgt_stops = &tgt_stops_;
  res.idf_src = idf_src_ ? &*idf_src_ : nullptr;
  res.idf_tgt = idf_tgt_ ? &*idf_tgt_ : nullptr;
  res.neighbor_k = config_.neighbor_k;
  return res;
}

}  // namespace xlingsim
