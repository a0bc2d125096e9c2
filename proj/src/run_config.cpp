#include "aztext/run_config.hpp"

#include <cstdlib>

#include <json.hpp>

#include "aztext/errors.hpp"

namespace aztext {

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
void take(const Json& j, const char* key, T& out) {
  auto it = j.find(key);
  if (it != j.end()) out = it->get<T>();
}

const char* const kKnownKeys[] = {
    "subcommand",    "input",          "output",        "model_path",
    "min_chars",     "max_chars",      "min_sentences", "max_sentences",
    "scrub_rules_file", "merge_categories_file", "sentence_mode",
    "stopwords_file", "suffixes_file", "stemming",      "keep_digits",
    "min_token_len", "vectorizer",     "min_df",        "model",
    "alpha",         "lambda",         "epochs",        "hidden",
    "solver",        "max_iters",      "tol",           "batch_size",
    "learning_rate", "test_fraction",  "stratified",    "seed",
    "bind",          "port",           "max_body_bytes", "histogram_max",
};

}  // namespace

RunConfig run_config_defaults() {
  RunConfig config;
  if (const char* env = std::getenv("AZTEXT_SEED")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw Error("AZTEXT_SEED must be an unsigned integer, got: " + std::string(env));
    }
    config.seed = value;
  }
  return config;
}

std::string run_config_to_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["input"] = c.input;
  j["output"] = c.output;
  j["model_path"] = c.model_path;
  j["min_chars"] = c.thresholds.min_chars;
  j["max_chars"] = c.thresholds.max_chars;
  j["min_sentences"] = c.thresholds.min_sentences;
  j["max_sentences"] = c.thresholds.max_sentences;
  j["scrub_rules_file"] = c.scrub_rules_file;
  j["merge_categories_file"] = c.merge_categories_file;
  j["sentence_mode"] = c.sentence_mode;
  j["stopwords_file"] = c.stopwords_file;
  j["suffixes_file"] = c.suffixes_file;
  j["stemming"] = c.stemming;
  j["keep_digits"] = c.keep_digits;
  j["min_token_len"] = c.min_token_len;
  j["vectorizer"] = c.vectorizer;
  j["min_df"] = c.min_df;
  j["model"] = c.model;
  j["alpha"] = c.alpha;
  j["lambda"] = c.lambda;
  j["epochs"] = c.epochs;
  j["hidden"] = c.hidden;
  j["solver"] = c.solver;
  j["max_iters"] = c.max_iters;
  j["tol"] = c.tol;
  j["batch_size"] = c.batch_size;
  j["learning_rate"] = c.learning_rate;
  j["test_fraction"] = c.test_fraction;
  j["stratified"] = c.stratified;
  j["seed"] = c.seed;
  j["bind"] = c.bind;
  j["port"] = c.port;
  j["max_body_bytes"] = c.max_body_bytes;
  j["histogram_max"] = c.histogram_max;
  return j.dump(2);
}

RunConfig run_config_from_json(const std::string& text, const RunConfig& base) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnownKeys) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) throw Error("unknown config key: " + key);
  }

  RunConfig c = base;
  try {
    take(j, "subcommand", c.subcommand);
    take(j, "input", c.input);
    take(j, "output", c.output);
    take(j, "model_path", c.model_path);
    take(j, "min_chars", c.thresholds.min_chars);
    take(j, "max_chars", c.thresholds.max_chars);
    take(j, "min_sentences", c.thresholds.min_sentences);
    take(j, "max_sentences", c.thresholds.max_sentences);
    take(j, "scrub_rules_file", c.scrub_rules_file);
    take(j, "merge_categories_file", c.merge_categories_file);
    take(j, "sentence_mode", c.sentence_mode);
    take(j, "stopwords_file", c.stopwords_file);
    take(j, "suffixes_file", c.suffixes_file);
    take(j, "stemming", c.stemming);
    take(j, "keep_digits", c.keep_digits);
    take(j, "min_token_len", c.min_token_len);
    take(j, "vectorizer", c.vectorizer);
    take(j, "min_df", c.min_df);
    take(j, "model", c.model);
    take(j, "alpha", c.alpha);
    take(j, "lambda", c.lambda);
    take(j, "epochs", c.epochs);
    take(j, "hidden", c.hidden);
    take(j, "solver", c.solver);
    take(j, "max_iters", c.max_iters);
    take(j, "tol", c.tol);
    take(j, "batch_size", c.batch_size);
    take(j, "learning_rate", c.learning_rate);
    take(j, "test_fraction", c.test_fraction);
    take(j, "stratified", c.stratified);
    take(j, "seed", c.seed);
    take(j, "bind", c.bind);
    take(j, "port", c.port);
    take(j, "max_body_bytes", c.max_body_bytes);
    take(j, "histogram_max", c.histogram_max);
  } catch (const Json::exception& e) {
    throw Error(std::string("bad config value: ") + e.what());
  }
  return c;
}

PipelineConfig pipeline_from_config(const RunConfig& config) {
  PipelineConfig pipeline;
  if (!config.stopwords_file.empty()) pipeline.stopwords = load_stopwords(config.stopwords_file);
  if (!config.suffixes_file.empty()) pipeline.stem_suffixes = load_suffixes(config.suffixes_file);
  pipeline.stemming = config.stemming;
  pipeline.keep_digits = config.keep_digits;
  pipeline.min_token_len = config.min_token_len;
  return pipeline;
}

SentenceCounter sentence_counter_for(const std::string& mode) {
  if (mode == "dots") return [](std::string_view text) { return count_dots(text); };
  if (mode == "terminators") {
    return [](std::string_view text) { return count_terminator_runs(text); };
  }
  throw Error("unknown sentence mode: " + mode + " (expected dots|terminators)");
}

}  // namespace aztext
