#pragma once

#include <cstdint>
#include <vector>

#include "aztext/dataset.hpp"

namespace aztext {

struct NbModel {
  std::vector<double> log_priors;        // one per class
  std::vector<double> log_likelihoods;   // classes x vocab, row-major
  double alpha = 1.0;
  std::size_t class_count = 0;
  std::size_t vocab_size = 0;

  double log_likelihood(std::size_t cls, std::size_t term) const {
    return log_likelihoods[cls * vocab_size + term];
  }

  bool operator==(const NbModel&) const = default;
};

// Multinomial Naive Bayes with Laplace smoothing:
//   prior(c)         = n_c / n          over document counts
//   likelihood(t|c)  = (count(t,c) + alpha) / (total_c + alpha * V)
// Feature values are treated as (possibly fractional) event counts.
NbModel train_nb(const LabeledDataset& data, double alpha = 1.0);

// log prior(c) + sum_t x_t * log likelihood(t|c) per class. An empty vector
// reduces to the priors.
std::vector<double> nb_log_posteriors(const NbModel& model, const SparseVector& x);

std::uint32_t nb_predict(const NbModel& model, const SparseVector& x);

}  // namespace aztext
