#include "aztext/svm.hpp"

#include <algorithm>
#include <cmath>

#include "aztext/errors.hpp"

namespace aztext {

namespace {

// Pegasos keeps w = scale * v so the per-step shrink and the margin test are
// O(nnz) instead of O(V). sq tracks |w|^2 incrementally and is recomputed at
// epoch ends to shed rounding drift.
struct ScaledVector {
  std::vector<double> v;
  double scale = 1.0;
  double sq = 0.0;

  explicit ScaledVector(std::size_t dim) : v(dim, 0.0) {}

  double dot(const SparseVector& x) const {
    double d = 0.0;
    for (const auto& e : x.entries) d += e.value * v[e.index];
    return scale * d;
  }

  void shrink(double factor) {
    scale *= factor;
    sq *= factor * factor;
    if (scale == 0.0) {  // t = 1 zeroes w exactly
      std::fill(v.begin(), v.end(), 0.0);
      scale = 1.0;
      sq = 0.0;
    }
  }

  // w += coef * x; wx = w.x before the update, xsq = x.x
  void add(const SparseVector& x, double coef, double wx, double xsq) {
    double inner = coef / scale;
    for (const auto& e : x.entries) v[e.index] += inner * e.value;
    sq += 2.0 * coef * wx + coef * coef * xsq;
    if (sq < 0.0) sq = 0.0;
  }

  void project(double radius) {
    double norm = std::sqrt(sq);
    if (norm > radius) {
      double f = radius / norm;
      scale *= f;
      sq = radius * radius;
    }
  }

  void recompute_sq() {
    double s = 0.0;
    for (double x : v) s += x * x;
    sq = scale * scale * s;
  }

  std::vector<double> materialize() const {
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = scale * v[i];
    return w;
  }
};

}  // namespace

SvmModel train_svm_ovr(const LabeledDataset& data, double lambda, std::uint32_t epochs,
                       std::uint64_t seed) {
  validate_for_training(data);
  if (!(lambda > 0.0)) throw Error("lambda must be > 0");
  if (epochs < 1) throw Error("epochs must be >= 1");

  std::size_t n = data.X.size();
  std::size_t C = data.class_names.size();
  std::size_t V = data.vocab_size;

  std::vector<double> xsq(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : data.X[i].entries) xsq[i] += e.value * e.value;
  }

  SvmModel model;
  model.lambda = lambda;
  model.epochs = epochs;
  model.seed = seed;
  model.weights.resize(C);
  model.bias.assign(C, 0.0);

  double radius = 1.0 / std::sqrt(lambda);
  for (std::size_t c = 0; c < C; ++c) {
    std::mt19937_64 rng(seed + c);
    ScaledVector w(V);
    double b = 0.0;
    std::uint64_t t = 0;
    for (std::uint32_t epoch = 0; epoch < epochs; ++epoch) {
      for (std::size_t step = 0; step < n; ++step) {
        ++t;
        std::size_t i = static_cast<std::size_t>(rng() % n);
        double y = data.y[i] == c ? 1.0 : -1.0;
        double wx = w.dot(data.X[i]);
        double eta = 1.0 / (lambda * static_cast<double>(t));
        w.shrink(1.0 - 1.0 / static_cast<double>(t));
        if (y * (wx + b) < 1.0) {
          // w.x after the shrink, for the incremental |w|^2 bookkeeping
          double wx_shrunk = wx * (1.0 - 1.0 / static_cast<double>(t));
          w.add(data.X[i], eta * y, wx_shrunk, xsq[i]);
          // The unregularized bias uses the harmonic step 1/t: the 1/(lambda*t)
          // step would kick it to +-1/lambda on the first violation.
          b += y / static_cast<double>(t);
        }
        w.project(radius);
      }
      w.recompute_sq();
    }
    model.weights[c] = w.materialize();
    model.bias[c] = b;
  }
  return model;
}

std::vector<double> svm_decisions(const SvmModel& model, const SparseVector& x) {
  std::vector<double> scores(model.weights.size());
  for (std::size_t c = 0; c < model.weights.size(); ++c) {
    scores[c] = x.dot_dense(model.weights[c]) + model.bias[c];
  }
  return scores;
}

std::uint32_t svm_predict(const SvmModel& model, const SparseVector& x) {
  return static_cast<std::uint32_t>(argmax_lowest(svm_decisions(model, x)));
}

double svm_binary_objective(const SvmModel& model, std::size_t cls, const LabeledDataset& data) {
  const std::vector<double>& w = model.weights[cls];
  double wsq = 0.0;
  for (double x : w) wsq += x * x;
  double hinge = 0.0;
  for (std::size_t i = 0; i < data.X.size(); ++i) {
    double y = data.y[i] == cls ? 1.0 : -1.0;
    double margin = y * (data.X[i].dot_dense(w) + model.bias[cls]);
    hinge += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * model.lambda * wsq + hinge / static_cast<double>(data.X.size());
}

}  // namespace aztext
