#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aztext/corpus.hpp"

namespace aztext {

// Rows are true classes, columns are predicted classes.
struct ConfusionMatrix {
  std::vector<std::string> class_names;
  std::vector<std::uint64_t> cells;  // C x C row-major

  std::size_t classes() const { return class_names.size(); }
  std::uint64_t at(std::size_t true_cls, std::size_t pred_cls) const {
    return cells[true_cls * classes() + pred_cls];
  }
  std::uint64_t& at(std::size_t true_cls, std::size_t pred_cls) {
    return cells[true_cls * classes() + pred_cls];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
};

struct EvalReport {
  double accuracy = 0.0;
  std::vector<double> precision;  // per class
  std::vector<double> recall;
  std::vector<double> f1;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  ConfusionMatrix matrix;
};

struct SplitResult {
  Corpus train;
  Corpus test;
};

// Seeded shuffle then partition; both halves keep the original corpus order.
// Stratified mode applies the fraction within each class, rounding to nearest
// but keeping at least one test and one train document for classes of size
// >= 2 (singleton classes follow plain rounding).
SplitResult split(const Corpus& corpus, double test_fraction, std::uint64_t seed,
                  bool stratified = true);

ConfusionMatrix confusion_matrix(const std::vector<std::uint32_t>& y_true,
                                 const std::vector<std::uint32_t>& y_pred,
                                 std::vector<std::string> class_names);

// accuracy = trace/total; precision(c) = diag/column sum; recall(c) =
// diag/row sum; f1 = harmonic mean; 0/0 cells are defined as 0; macro metrics
// are unweighted class means.
EvalReport metrics_from_matrix(ConfusionMatrix matrix);

// Aligned bracketed integer grid, one row per true class.
std::string format_matrix(const ConfusionMatrix& matrix);

std::string eval_report_to_json(const EvalReport& report);

}  // namespace aztext
