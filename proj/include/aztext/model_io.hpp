#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "aztext/mlp.hpp"
#include "aztext/naive_bayes.hpp"
#include "aztext/svm.hpp"
#include "aztext/text.hpp"
#include "aztext/vectorize.hpp"

namespace aztext {

// Tags are part of the on-disk format; values must not change.
enum class ModelKind : std::uint8_t { nb = 0, svm = 1, mlp = 2 };
enum class VectorizerKind : std::uint8_t { binary = 0, count = 1, tfidf = 2 };

inline constexpr std::uint32_t kModelFormatVersion = 1;

const char* model_kind_name(ModelKind kind);
const char* vectorizer_kind_name(VectorizerKind kind);
ModelKind parse_model_kind(const std::string& name);            // throws Error
VectorizerKind parse_vectorizer_kind(const std::string& name);  // throws Error

// Everything needed to classify raw text: the classifier plus the exact
// pipeline and vectorizer state it was trained with.
struct TrainedModel {
  VectorizerKind vectorizer = VectorizerKind::tfidf;
  PipelineConfig pipeline;
  Vocabulary vocab;
  IdfTable idf;  // aligned with vocab when vectorizer == tfidf, else empty
  std::vector<std::string> class_names;
  std::uint32_t format_version = kModelFormatVersion;
  std::variant<NbModel, SvmModel, MlpModel> payload;

  ModelKind kind() const { return static_cast<ModelKind>(payload.index()); }
};

struct Prediction {
  std::uint32_t class_index = 0;
  std::string class_name;
  // NB: log-posteriors; SVM: decision values; MLP: probabilities.
  std::vector<double> scores;

  double top_score() const { return scores[class_index]; }
};

// Binary format: magic "AZTX", format_version u32, kind u8, payload length
// u64, payload. Integers little-endian, reals IEEE-754 binary64.
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);  // FormatError/VersionError/TruncatedFile

// Vectorizes with the model's scheme. For TF-IDF, a document with no
// in-vocabulary token becomes the empty vector instead of an error, so
// downstream predictors fall back to their no-evidence behavior.
SparseVector vectorize_for_model(const TrainedModel& model, const std::vector<Token>& tokens);

Prediction predict_vector(const TrainedModel& model, const SparseVector& x);

// normalize -> tokenize -> stop words -> (stem) -> vectorize -> predict with
// the stored config. Throws EmptyInput when the normalized text contains no
// non-whitespace character.
Prediction predict_text(const TrainedModel& model, std::string_view raw_text);

}  // namespace aztext
