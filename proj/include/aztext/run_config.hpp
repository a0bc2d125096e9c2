#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aztext/corpus.hpp"

namespace aztext {

// Every knob of every subcommand, each with a documented default. Flags
// override a --config file, which overrides the AZTEXT_SEED environment
// variable, which overrides the builtin defaults.
struct RunConfig {
  std::string subcommand;

  // paths
  std::string input;
  std::string output;
  std::string model_path = "model.aztx";

  // clean
  CleanThresholds thresholds;
  std::string scrub_rules_file;       // empty = the embedded default rules
  std::string merge_categories_file;  // empty = no merging
  std::string sentence_mode = "dots";  // dots | terminators

  // text pipeline
  std::string stopwords_file;
  std::string suffixes_file;
  bool stemming = false;
  bool keep_digits = false;
  std::uint32_t min_token_len = 1;

  // vectorizer; auto = count for nb, tfidf for svm and mlp
  std::string vectorizer = "auto";  // auto | binary | count | tfidf
  std::uint64_t min_df = 1;

  // classifier
  std::string model = "svm";  // nb | svm | mlp
  double alpha = 1.0;
  double lambda = 1e-5;
  std::uint32_t epochs = 30;
  std::vector<std::uint32_t> hidden{100};
  std::string solver = "quasi-newton";  // quasi-newton | minibatch-sgd
  std::uint32_t max_iters = 200;
  double tol = 1e-6;
  std::uint32_t batch_size = 32;
  double learning_rate = 0.5;

  // evaluation
  double test_fraction = 0.1;
  bool stratified = true;
  std::uint64_t seed = 42;

  // serve
  std::string bind = "127.0.0.1";
  int port = 8080;
  std::uint64_t max_body_bytes = 1024 * 1024;

  // stats
  std::uint32_t histogram_max = 30;

  bool operator==(const RunConfig&) const = default;
};

// Builtin defaults, with AZTEXT_SEED (when set) as the seed. Throws Error if
// the variable is set but not an unsigned integer.
RunConfig run_config_defaults();

std::string run_config_to_json(const RunConfig& config);

// Starts from `base` and overrides exactly the keys present. Unknown keys
// are an Error, so typos never pass silently.
RunConfig run_config_from_json(const std::string& text, const RunConfig& base);

// The pipeline config the flags describe (loads the two word-list files).
PipelineConfig pipeline_from_config(const RunConfig& config);

SentenceCounter sentence_counter_for(const std::string& mode);  // throws Error

}  // namespace aztext
