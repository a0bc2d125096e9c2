#include "aztext/naive_bayes.hpp"

#include <cmath>

#include "aztext/errors.hpp"

namespace aztext {

NbModel train_nb(const LabeledDataset& data, double alpha) {
  validate_for_training(data);
  if (!(alpha > 0.0)) throw Error("alpha must be > 0");
  if (data.vocab_size == 0) throw Error("vocab_size must be set on the dataset");

  std::size_t C = data.class_names.size();
  std::size_t V = data.vocab_size;

  std::vector<double> class_docs(C, 0.0);
  std::vector<double> term_counts(C * V, 0.0);
  std::vector<double> class_totals(C, 0.0);
  for (std::size_t i = 0; i < data.X.size(); ++i) {
    std::uint32_t c = data.y[i];
    class_docs[c] += 1.0;
    for (const auto& e : data.X[i].entries) {
      term_counts[c * V + e.index] += e.value;
      class_totals[c] += e.value;
    }
  }

  NbModel model;
  model.alpha = alpha;
  model.class_count = C;
  model.vocab_size = V;
  model.log_priors.resize(C);
  model.log_likelihoods.resize(C * V);
  double n = static_cast<double>(data.X.size());
  for (std::size_t c = 0; c < C; ++c) {
    // Unseen classes get -inf priors and never win the argmax.
    model.log_priors[c] = std::log(class_docs[c] / n);
    double denom = std::log(class_totals[c] + alpha * static_cast<double>(V));
    for (std::size_t t = 0; t < V; ++t) {
      model.log_likelihoods[c * V + t] = std::log(term_counts[c * V + t] + alpha) - denom;
    }
  }
  return model;
}

std::vector<double> nb_log_posteriors(const NbModel& model, const SparseVector& x) {
  std::vector<double> scores(model.log_priors);
  for (std::size_t c = 0; c < model.class_count; ++c) {
    const double* row = model.log_likelihoods.data() + c * model.vocab_size;
    for (const auto& e : x.entries) scores[c] += e.value * row[e.index];
  }
  return scores;
}

std::uint32_t nb_predict(const NbModel& model, const SparseVector& x) {
  return static_cast<std::uint32_t>(argmax_lowest(nb_log_posteriors(model, x)));
}

}  // namespace aztext
