#include "aztext/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

#include "aztext/dataset.hpp"
#include "aztext/errors.hpp"

namespace aztext {

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(cells.begin(), cells.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < classes(); ++i) t += at(i, i);
  return t;
}

namespace {

// Test-set size for a group of n documents; both halves stay non-empty for
// groups of size >= 2, singletons follow plain rounding.
std::size_t test_count(std::size_t n, double fraction) {
  auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * fraction));
  if (n >= 2) k = std::clamp<std::size_t>(k, 1, n - 1);
  return std::min(k, n);
}

}  // namespace

SplitResult split(const Corpus& corpus, double test_fraction, std::uint64_t seed,
                  bool stratified) {
  if (corpus.documents.empty()) throw EmptyCorpus();
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw Error("test_fraction must be in (0, 1)");
  }

  // Groups iterate in sorted label order so the draw sequence is fixed.
  std::map<std::string, std::vector<std::size_t>> groups;
  if (stratified) {
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      groups[corpus.documents[i].category].push_back(i);
    }
  } else {
    auto& all = groups[""];
    all.resize(corpus.documents.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
  }

  std::mt19937_64 rng(seed);
  std::vector<char> in_test(corpus.documents.size(), 0);
  for (auto& [label, indices] : groups) {
    deterministic_shuffle(indices, rng);
    std::size_t k = test_count(indices.size(), test_fraction);
    for (std::size_t j = 0; j < k; ++j) in_test[indices[j]] = 1;
  }

  std::vector<Document> train_docs, test_docs;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    (in_test[i] ? test_docs : train_docs).push_back(corpus.documents[i]);
  }
  return {Corpus::from_documents(std::move(train_docs)),
          Corpus::from_documents(std::move(test_docs))};
}

ConfusionMatrix confusion_matrix(const std::vector<std::uint32_t>& y_true,
                                 const std::vector<std::uint32_t>& y_pred,
                                 std::vector<std::string> class_names) {
  if (y_true.size() != y_pred.size()) throw LengthMismatch(y_true.size(), y_pred.size());
  std::size_t C = class_names.size();
  ConfusionMatrix m;
  m.class_names = std::move(class_names);
  m.cells.assign(C * C, 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] >= C || y_pred[i] >= C) throw Error("class index out of range");
    ++m.at(y_true[i], y_pred[i]);
  }
  return m;
}

EvalReport metrics_from_matrix(ConfusionMatrix matrix) {
  std::size_t C = matrix.classes();
  std::uint64_t total = matrix.total();
  if (C == 0 || total == 0) throw EmptyMatrix();

  EvalReport report;
  report.accuracy = static_cast<double>(matrix.trace()) / static_cast<double>(total);
  report.precision.resize(C);
  report.recall.resize(C);
  report.f1.resize(C);
  for (std::size_t c = 0; c < C; ++c) {
    std::uint64_t col = 0, row = 0;
    for (std::size_t i = 0; i < C; ++i) {
      col += matrix.at(i, c);
      row += matrix.at(c, i);
    }
    std::uint64_t diag = matrix.at(c, c);
    double p = col == 0 ? 0.0 : static_cast<double>(diag) / static_cast<double>(col);
    double r = row == 0 ? 0.0 : static_cast<double>(diag) / static_cast<double>(row);
    report.precision[c] = p;
    report.recall[c] = r;
    report.f1[c] = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    report.macro_precision += p;
    report.macro_recall += r;
    report.macro_f1 += report.f1[c];
  }
  report.macro_precision /= static_cast<double>(C);
  report.macro_recall /= static_cast<double>(C);
  report.macro_f1 /= static_cast<double>(C);
  report.matrix = std::move(matrix);
  return report;
}

std::string format_matrix(const ConfusionMatrix& matrix) {
  std::size_t C = matrix.classes();
  std::size_t width = 1;
  for (std::uint64_t cell : matrix.cells) {
    width = std::max(width, std::to_string(cell).size());
  }
  std::string out;
  for (std::size_t i = 0; i < C; ++i) {
    out += i == 0 ? "[[" : " [";
    for (std::size_t j = 0; j < C; ++j) {
      std::string cell = std::to_string(matrix.at(i, j));
      if (j > 0) out += ' ';
      out.append(width - cell.size(), ' ');
      out += cell;
    }
    out += i + 1 == C ? "]]" : "]\n";
  }
  return out;
}

std::string eval_report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["accuracy"] = report.accuracy;
  j["macro_precision"] = report.macro_precision;
  j["macro_recall"] = report.macro_recall;
  j["macro_f1"] = report.macro_f1;
  nlohmann::ordered_json per_class = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < report.matrix.classes(); ++c) {
    per_class.push_back({{"class", report.matrix.class_names[c]},
                         {"precision", report.precision[c]},
                         {"recall", report.recall[c]},
                         {"f1", report.f1[c]}});
  }
  j["per_class"] = std::move(per_class);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.matrix.classes(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < report.matrix.classes(); ++k) {
      row.push_back(report.matrix.at(i, k));
    }
    rows.push_back(std::move(row));
  }
  j["confusion_matrix"] = {{"class_names", report.matrix.class_names},
                           {"rows", std::move(rows)}};
  return j.dump(2);
}

}  // namespace aztext
