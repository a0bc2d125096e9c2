#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

#include <CLI11.hpp>
#include <json.hpp>

#include "aztext/corpus.hpp"
#include "aztext/dataset.hpp"
#include "aztext/errors.hpp"
#include "aztext/evaluate.hpp"
#include "aztext/mlp.hpp"
#include "aztext/model_io.hpp"
#include "aztext/naive_bayes.hpp"
#include "aztext/run_config.hpp"
#include "aztext/serve.hpp"
#include "aztext/svm.hpp"
#include "aztext/vectorize.hpp"

namespace {

using namespace aztext;
using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw MissingFile(path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::vector<std::string> sorted_labels(const Corpus& corpus) {
  return {corpus.labels.begin(), corpus.labels.end()};
}

VectorizerKind resolve_vectorizer(const RunConfig& config, ModelKind kind) {
  if (config.vectorizer == "auto") {
    return kind == ModelKind::nb ? VectorizerKind::count : VectorizerKind::tfidf;
  }
  return parse_vectorizer_kind(config.vectorizer);
}

MlpSolver parse_solver(const std::string& name) {
  if (name == "quasi-newton") return MlpSolver::quasi_newton;
  if (name == "minibatch-sgd") return MlpSolver::minibatch_sgd;
  throw Error("unknown solver: " + name + " (expected quasi-newton|minibatch-sgd)");
}

Json stats_to_json(const StatsReport& s) {
  return Json{{"count", s.count}, {"mean", s.mean}, {"stdev", s.stdev}, {"min", s.min},
              {"p25", s.p25},     {"p50", s.p50},   {"p75", s.p75},     {"max", s.max}};
}

int cmd_clean(const RunConfig& config) {
  config.thresholds.validate();
  SentenceCounter counter = sentence_counter_for(config.sentence_mode);
  if (config.output.empty()) throw Error("clean needs --output");

  Corpus corpus = load_csv(config.input);
  std::uint64_t input_count = corpus.documents.size();

  DedupResult deduped = deduplicate(corpus);
  CleanResult cleaned = clean_phase1(deduped.corpus, config.thresholds, counter);

  const std::vector<ScrubRule>& rules =
      config.scrub_rules_file.empty() ? default_scrub_rules()
                                      : load_scrub_rules(config.scrub_rules_file);
  Corpus scrubbed = scrub_noise(cleaned.corpus, rules);
  std::uint64_t scrub_changed = 0;
  for (std::size_t i = 0; i < scrubbed.documents.size(); ++i) {
    if (scrubbed.documents[i].body != cleaned.corpus.documents[i].body) ++scrub_changed;
  }

  if (!config.merge_categories_file.empty()) {
    auto mapping = load_category_mapping(config.merge_categories_file);
    scrubbed = merge_categories(scrubbed, mapping, MergePolicy::passthrough);
  }

  write_csv(config.output, scrubbed);

  CleanReport report = cleaned.report;
  report.input_count = input_count;
  report.dropped_duplicates = deduped.dropped;
  report.output_count = scrubbed.documents.size();

  Json j{{"input_count", report.input_count},
         {"dropped_duplicates", report.dropped_duplicates},
         {"dropped_too_short_chars", report.dropped_too_short_chars},
         {"dropped_too_long_chars", report.dropped_too_long_chars},
         {"dropped_too_few_sentences", report.dropped_too_few_sentences},
         {"dropped_too_many_sentences", report.dropped_too_many_sentences},
         {"dropped_total", report.dropped_total()},
         {"scrub_changed", scrub_changed},
         {"output_count", report.output_count},
         {"output_labels", sorted_labels(scrubbed)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_stats(const RunConfig& config) {
  SentenceCounter counter = sentence_counter_for(config.sentence_mode);
  Corpus corpus = load_csv(config.input);
  CorpusStats stats = corpus_stats(corpus, counter);
  std::vector<std::uint64_t> histogram =
      sentence_histogram(corpus, counter, config.histogram_max);

  Json j{{"documents", corpus.documents.size()},
         {"labels", sorted_labels(corpus)},
         {"sentences", stats_to_json(stats.sentences)},
         {"characters", stats_to_json(stats.characters)},
         {"total_sentences", stats.total_sentences},
         {"total_characters", stats.total_characters},
         {"sentence_histogram", histogram}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_train(const RunConfig& config) {
  ModelKind kind = parse_model_kind(config.model);
  VectorizerKind vectorizer = resolve_vectorizer(config, kind);

  Corpus corpus = load_csv(config.input);
  SplitResult parts = split(corpus, config.test_fraction, config.seed, config.stratified);

  TrainedModel model;
  model.vectorizer = vectorizer;
  model.pipeline = pipeline_from_config(config);
  model.class_names = sorted_labels(corpus);

  std::vector<std::vector<Token>> train_tokens;
  train_tokens.reserve(parts.train.documents.size());
  for (const auto& doc : parts.train.documents) {
    train_tokens.push_back(pipeline_tokens(doc.body, model.pipeline));
  }
  model.vocab = build_vocabulary(train_tokens, config.min_df);
  if (model.vocab.size() == 0) throw DegenerateDataset();
  if (vectorizer == VectorizerKind::tfidf) model.idf = fit_idf(model.vocab);

  std::unordered_map<std::string, std::uint32_t> class_index;
  for (std::uint32_t c = 0; c < model.class_names.size(); ++c) {
    class_index.emplace(model.class_names[c], c);
  }

  LabeledDataset data;
  data.class_names = model.class_names;
  data.vocab_size = model.vocab.size();
  for (std::size_t i = 0; i < parts.train.documents.size(); ++i) {
    data.X.push_back(vectorize_for_model(model, train_tokens[i]));
    data.y.push_back(class_index.at(parts.train.documents[i].category));
  }

  switch (kind) {
    case ModelKind::nb:
      model.payload = train_nb(data, config.alpha);
      break;
    case ModelKind::svm:
      model.payload = train_svm_ovr(data, config.lambda, config.epochs, config.seed);
      break;
    case ModelKind::mlp: {
      MlpOptions options;
      options.hidden = config.hidden;
      options.solver = parse_solver(config.solver);
      options.seed = config.seed;
      options.max_iters = config.max_iters;
      options.tol = config.tol;
      options.batch_size = config.batch_size;
      options.learning_rate = config.learning_rate;
      model.payload = train_mlp(data, options);
      break;
    }
  }

  save_model(model, config.model_path);
  std::fprintf(stderr, "model written to %s (%s, %s, %zu classes, V=%zu)\n",
               config.model_path.c_str(), model_kind_name(kind),
               vectorizer_kind_name(vectorizer), model.class_names.size(),
               model.vocab.size());

  std::vector<std::uint32_t> y_true, y_pred;
  for (const auto& doc : parts.test.documents) {
    y_true.push_back(class_index.at(doc.category));
    std::vector<Token> tokens = pipeline_tokens(doc.body, model.pipeline);
    y_pred.push_back(predict_vector(model, vectorize_for_model(model, tokens)).class_index);
  }
  EvalReport report = metrics_from_matrix(confusion_matrix(y_true, y_pred, model.class_names));
  std::cout << eval_report_to_json(report) << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& config) {
  TrainedModel model = load_model(config.model_path);
  Corpus corpus = load_csv(config.input);

  std::unordered_map<std::string, std::uint32_t> class_index;
  for (std::uint32_t c = 0; c < model.class_names.size(); ++c) {
    class_index.emplace(model.class_names[c], c);
  }

  std::vector<std::uint32_t> y_true, y_pred;
  for (const auto& doc : corpus.documents) {
    auto it = class_index.find(doc.category);
    if (it == class_index.end()) throw UnknownCategory(doc.category);
    y_true.push_back(it->second);
    std::vector<Token> tokens = pipeline_tokens(doc.body, model.pipeline);
    y_pred.push_back(predict_vector(model, vectorize_for_model(model, tokens)).class_index);
  }
  EvalReport report = metrics_from_matrix(confusion_matrix(y_true, y_pred, model.class_names));
  std::cout << eval_report_to_json(report) << "\n";
  return 0;
}

int cmd_predict(const RunConfig& config) {
  TrainedModel model = load_model(config.model_path);

  std::ifstream file;
  std::istream* in = &std::cin;
  if (!config.input.empty()) {
    file.open(config.input, std::ios::binary);
    if (!file) throw MissingFile(config.input);
    in = &file;
  }

  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      Prediction pred = predict_text(model, line);
      std::printf("%s\t%.10g\n", pred.class_name.c_str(), pred.top_score());
    } catch (const EmptyInput&) {
      std::printf("ERROR:empty_input\n");
    }
  }
  std::fflush(stdout);
  return 0;
}

int cmd_serve(const RunConfig& config) {
  TrainedModel model = load_model(config.model_path);
  ServeOptions options;
  options.bind = config.bind;
  options.port = config.port;
  options.max_body_bytes = config.max_body_bytes;
  return run_server(model, options);
}

int run(const RunConfig& config) {
  if (config.subcommand == "clean") return cmd_clean(config);
  if (config.subcommand == "stats") return cmd_stats(config);
  if (config.subcommand == "train") return cmd_train(config);
  if (config.subcommand == "evaluate") return cmd_evaluate(config);
  if (config.subcommand == "predict") return cmd_predict(config);
  if (config.subcommand == "serve") return cmd_serve(config);
  throw Error("unknown subcommand: " + config.subcommand);
}

std::vector<std::uint32_t> parse_hidden(const std::string& text) {
  std::vector<std::uint32_t> sizes;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) {
    try {
      unsigned long v = std::stoul(part);
      if (v == 0 || v > 1'000'000) throw Error("");
      sizes.push_back(static_cast<std::uint32_t>(v));
    } catch (...) {
      throw Error("bad --hidden value: " + text + " (expected sizes like 100 or 64,32)");
    }
  }
  if (sizes.empty()) throw Error("--hidden needs at least one layer size");
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  try {
    config = run_config_defaults();
    // --config applies under the flags, so it is folded in before CLI11 runs
    for (int i = 1; i < argc; ++i) {
      std::string_view arg = argv[i];
      std::string path;
      if (arg == "--config" && i + 1 < argc) {
        path = argv[i + 1];
      } else if (arg.rfind("--config=", 0) == 0) {
        path = arg.substr(9);
      }
      if (!path.empty()) config = run_config_from_json(read_text_file(path), config);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  CLI::App app{"Azerbaijani news text classification toolkit"};
  app.require_subcommand(1);
  std::string config_sink;  // consumed by the prescan above
  std::string hidden_sink;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_sink, "JSON config file (flags override it)");
    cmd->add_option("--seed", config.seed, "RNG seed (env AZTEXT_SEED sets the default)")
        ->capture_default_str();
  };

  CLI::App* clean = app.add_subcommand("clean", "Deduplicate, filter, and scrub a corpus CSV");
  clean->add_option("--input", config.input, "input corpus CSV")->required();
  clean->add_option("--output", config.output, "cleaned corpus CSV to write")->required();
  clean->add_option("--min-chars", config.thresholds.min_chars)->capture_default_str();
  clean->add_option("--max-chars", config.thresholds.max_chars)->capture_default_str();
  clean->add_option("--min-sentences", config.thresholds.min_sentences)->capture_default_str();
  clean->add_option("--max-sentences", config.thresholds.max_sentences)->capture_default_str();
  clean->add_option("--scrub-rules", config.scrub_rules_file,
                    "rule file overriding the embedded defaults");
  clean->add_option("--merge-categories", config.merge_categories_file,
                    "old<TAB>new relabeling file");
  clean->add_option("--sentence-mode", config.sentence_mode, "dots|terminators")
      ->capture_default_str();
  add_common(clean);

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics and sentence histogram");
  stats->add_option("--input", config.input, "corpus CSV")->required();
  stats->add_option("--sentence-mode", config.sentence_mode, "dots|terminators")
      ->capture_default_str();
  stats->add_option("--histogram-max", config.histogram_max,
                    "last bucket aggregates counts >= this")
      ->capture_default_str();
  add_common(stats);

  CLI::App* train = app.add_subcommand("train", "Split, vectorize, train, and report");
  train->add_option("--input", config.input, "cleaned corpus CSV")->required();
  train->add_option("--output", config.model_path, "model file to write")->capture_default_str();
  train->add_option("--model", config.model, "nb|svm|mlp")->capture_default_str();
  train->add_option("--vectorizer", config.vectorizer, "auto|binary|count|tfidf")
      ->capture_default_str();
  train->add_option("--min-df", config.min_df, "drop terms in fewer documents")
      ->capture_default_str();
  train->add_option("--stopwords", config.stopwords_file, "stop-word list file");
  train->add_option("--suffixes", config.suffixes_file, "stemmer suffix file");
  train->add_flag("--stem", config.stemming, "enable suffix stemming");
  train->add_flag("--keep-digits", config.keep_digits, "keep ASCII digits in tokens");
  train->add_option("--min-token-len", config.min_token_len)->capture_default_str();
  train->add_option("--alpha", config.alpha, "NB smoothing")->capture_default_str();
  train->add_option("--lambda", config.lambda, "SVM regularization")->capture_default_str();
  train->add_option("--epochs", config.epochs, "SVM epochs")->capture_default_str();
  train->add_option("--hidden", hidden_sink, "MLP hidden sizes, comma separated (default 100)");
  train->add_option("--solver", config.solver, "quasi-newton|minibatch-sgd")
      ->capture_default_str();
  train->add_option("--max-iters", config.max_iters, "MLP iteration cap")->capture_default_str();
  train->add_option("--tol", config.tol, "MLP stopping tolerance")->capture_default_str();
  train->add_option("--batch-size", config.batch_size, "MLP SGD batch")->capture_default_str();
  train->add_option("--learning-rate", config.learning_rate, "MLP SGD step")
      ->capture_default_str();
  train->add_option("--test-fraction", config.test_fraction)->capture_default_str();
  train->add_flag("--stratify,!--no-stratify", config.stratified, "stratified split")
      ->capture_default_str();
  add_common(train);

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a model against a labeled CSV");
  evaluate->add_option("--input", config.input, "labeled corpus CSV")->required();
  evaluate->add_option("--model-path", config.model_path, "model file")->capture_default_str();
  add_common(evaluate);

  CLI::App* predict = app.add_subcommand("predict", "Classify one document per input line");
  predict->add_option("--input", config.input, "text file (default: standard input)");
  predict->add_option("--model-path", config.model_path, "model file")->capture_default_str();
  add_common(predict);

  CLI::App* serve = app.add_subcommand("serve", "HTTP classification service");
  serve->add_option("--model-path", config.model_path, "model file")->capture_default_str();
  serve->add_option("--bind", config.bind, "bind address")->capture_default_str();
  serve->add_option("--port", config.port, "TCP port")->capture_default_str();
  serve->add_option("--max-body-bytes", config.max_body_bytes, "request size limit")
      ->capture_default_str();
  add_common(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (CLI::App* cmd : {clean, stats, train, evaluate, predict, serve}) {
    if (cmd->parsed()) config.subcommand = cmd->get_name();
  }

  try {
    if (!hidden_sink.empty()) config.hidden = parse_hidden(hidden_sink);
    return run(config);
  } catch (const DegenerateDataset& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const NonFiniteLoss& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
