#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aztext/dataset.hpp"

namespace aztext {

enum class MlpSolver : std::uint8_t {
  quasi_newton = 0,  // full-batch L-BFGS with backtracking line search
  minibatch_sgd = 1,
};

struct MlpOptions {
  std::vector<std::uint32_t> hidden{100};
  MlpSolver solver = MlpSolver::quasi_newton;
  std::uint64_t seed = 42;
  std::uint32_t max_iters = 200;
  double tol = 1e-6;          // stop when the loss decrease falls below this
  std::uint32_t batch_size = 32;  // minibatch solver only
  double learning_rate = 0.5;     // minibatch solver only
};

struct MlpModel {
  std::vector<std::uint32_t> layer_sizes;    // [V, hidden..., C]
  std::vector<std::vector<double>> weights;  // per gap, row-major fan_in x fan_out
  std::vector<std::vector<double>> biases;   // per gap, length fan_out
  std::string activation = "tanh";
  std::uint64_t seed = 0;

  std::size_t layers() const { return layer_sizes.size(); }

  bool operator==(const MlpModel&) const = default;
};

// Glorot-uniform weights in (-r, r) with r = sqrt(6 / (fan_in + fan_out)),
// filled in layer-then-index order from mt19937_64(seed); zero biases.
MlpModel init_mlp(std::uint32_t input_size, const std::vector<std::uint32_t>& hidden,
                  std::uint32_t output_size, std::uint64_t seed);

// Softmax output, mean cross-entropy loss, tanh hidden activations.
MlpModel train_mlp(const LabeledDataset& data, const MlpOptions& options);

std::vector<double> mlp_probabilities(const MlpModel& model, const SparseVector& x);

std::uint32_t mlp_predict(const MlpModel& model, const SparseVector& x);

// Flat parameter view (per gap: weights then biases), shared by the solvers
// and the finite-difference checks.
std::vector<double> mlp_pack(const MlpModel& model);
void mlp_unpack(MlpModel& model, const std::vector<double>& params);

double mlp_loss(const MlpModel& model, const LabeledDataset& data);

// Returns the loss; grad is resized to the packed parameter count.
double mlp_loss_and_gradient(const MlpModel& model, const LabeledDataset& data,
                             std::vector<double>& grad);

}  // namespace aztext
