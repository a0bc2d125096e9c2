#pragma once

#include <cstdint>
#include <vector>

#include "aztext/dataset.hpp"

namespace aztext {

struct SvmModel {
  std::vector<std::vector<double>> weights;  // one dense w_c of length V per class
  std::vector<double> bias;                  // one unregularized b_c per class
  double lambda = 1e-5;
  std::uint32_t epochs = 30;
  std::uint64_t seed = 0;

  std::size_t class_count() const { return weights.size(); }

  bool operator==(const SvmModel&) const = default;
};

// One-vs-rest linear SVM trained per class by the projected stochastic
// subgradient method (Pegasos): step 1/(lambda*t), L2 ball projection of
// radius 1/sqrt(lambda), bias left unregularized. Each binary problem uses
// its own generator seeded seed + class_index, so results are deterministic
// and classes could be trained in parallel.
SvmModel train_svm_ovr(const LabeledDataset& data, double lambda, std::uint32_t epochs,
                       std::uint64_t seed);

// decision(c) = w_c . x + b_c
std::vector<double> svm_decisions(const SvmModel& model, const SparseVector& x);

std::uint32_t svm_predict(const SvmModel& model, const SparseVector& x);

// lambda/2 * |w_c|^2 + mean hinge loss of the binary problem "class cls vs
// rest" over the dataset. Exposed for convergence checks.
double svm_binary_objective(const SvmModel& model, std::size_t cls, const LabeledDataset& data);

}  // namespace aztext
