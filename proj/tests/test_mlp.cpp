#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <aztext/errors.hpp>
#include <aztext/mlp.hpp>

#include <cmath>
#include <random>
#include <vector>

using namespace aztext;

namespace {

SparseVector sparse(std::initializer_list<SparseEntry> entries) {
  SparseVector v;
  v.entries = entries;
  return v;
}

// The XOR pattern over two binary features: not linearly separable.
LabeledDataset xor_dataset() {
  LabeledDataset data;
  data.class_names = {"sıfır", "bir"};
  data.vocab_size = 2;
  data.X = {sparse({}), sparse({{0, 1}}), sparse({{1, 1}}), sparse({{0, 1}, {1, 1}})};
  data.y = {0, 1, 1, 0};
  return data;
}

LabeledDataset gradient_instance(std::uint64_t seed) {
  // 3 samples, V=5, 2 classes, fractional values: the gradient-check instance.
  std::mt19937_64 rng(seed);
  LabeledDataset data;
  data.class_names = {"a", "b"};
  data.vocab_size = 5;
  for (int i = 0; i < 3; ++i) {
    SparseVector x;
    for (std::uint32_t t = 0; t < 5; ++t)
      if (rng() % 2) x.entries.push_back({t, double(1 + rng() % 100) / 50.0});
    data.X.push_back(x);
    data.y.push_back(std::uint32_t(i % 2));
  }
  return data;
}

}  // namespace

TEST_CASE("XOR with one hidden layer of four units trains to 100%") {
  auto data = xor_dataset();
  MlpOptions opt;
  opt.hidden = {4};
  opt.max_iters = 500;
  opt.tol = 1e-10;
  opt.seed = 1;
  auto model = train_mlp(data, opt);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(mlp_predict(model, data.X[i]) == data.y[i]);
}

TEST_CASE("analytic gradient matches central finite differences") {
  auto data = gradient_instance(99);
  auto model = init_mlp(5, {3}, 2, 7);
  std::vector<double> grad;
  double loss = mlp_loss_and_gradient(model, data, grad);
  CHECK(std::isfinite(loss));

  auto params = mlp_pack(model);
  REQUIRE(grad.size() == params.size());

  // 10 random parameter bumps, relative error < 1e-4 against the analytic value.
  std::mt19937_64 rng(2718);
  const double h = 1e-6;
  for (int probe = 0; probe < 10; ++probe) {
    std::size_t p = rng() % params.size();
    auto plus = params, minus = params;
    plus[p] += h;
    minus[p] -= h;
    MlpModel m_plus = model, m_minus = model;
    mlp_unpack(m_plus, plus);
    mlp_unpack(m_minus, minus);
    double numeric = (mlp_loss(m_plus, data) - mlp_loss(m_minus, data)) / (2 * h);
    double denom = std::max({std::fabs(numeric), std::fabs(grad[p]), 1e-8});
    CHECK(std::fabs(numeric - grad[p]) / denom < 1e-4);
  }
}

TEST_CASE("gradient check passes at 10 random points of parameter space") {
  auto data = gradient_instance(5);
  std::mt19937_64 rng(31415);
  const double h = 1e-6;
  for (int point = 0; point < 10; ++point) {
    auto model = init_mlp(5, {3}, 2, rng());
    std::vector<double> grad;
    mlp_loss_and_gradient(model, data, grad);
    auto params = mlp_pack(model);
    std::size_t p = rng() % params.size();
    auto plus = params, minus = params;
    plus[p] += h;
    minus[p] -= h;
    MlpModel m_plus = model, m_minus = model;
    mlp_unpack(m_plus, plus);
    mlp_unpack(m_minus, minus);
    double numeric = (mlp_loss(m_plus, data) - mlp_loss(m_minus, data)) / (2 * h);
    double denom = std::max({std::fabs(numeric), std::fabs(grad[p]), 1e-8});
    CHECK(std::fabs(numeric - grad[p]) / denom < 1e-4);
  }
}

TEST_CASE("identical seeds give identical initial weights") {
  auto a = init_mlp(10, {6, 4}, 3, 123);
  auto b = init_mlp(10, {6, 4}, 3, 123);
  CHECK(a == b);
  auto c = init_mlp(10, {6, 4}, 3, 124);
  CHECK(a.weights != c.weights);
}

TEST_CASE("initial weights respect the Glorot bound and biases start at zero") {
  auto model = init_mlp(8, {5}, 3, 77);
  REQUIRE(model.weights.size() == 2);
  double r0 = std::sqrt(6.0 / (8 + 5));
  double r1 = std::sqrt(6.0 / (5 + 3));
  for (double w : model.weights[0]) CHECK(std::fabs(w) <= r0);
  for (double w : model.weights[1]) CHECK(std::fabs(w) <= r1);
  for (const auto& layer : model.biases)
    for (double b : layer) CHECK(b == 0.0);
}

TEST_CASE("probabilities sum to one on arbitrary inputs") {
  auto data = xor_dataset();
  MlpOptions opt;
  opt.hidden = {4};
  opt.max_iters = 50;
  auto model = train_mlp(data, opt);
  std::mt19937_64 rng(55);
  for (int i = 0; i < 20; ++i) {
    SparseVector x;
    if (rng() % 2) x.entries.push_back({0, double(rng() % 100) / 10.0});
    if (rng() % 2) x.entries.push_back({1, double(rng() % 100) / 10.0});
    auto probs = mlp_probabilities(model, x);
    double sum = 0;
    for (double p : probs) {
      CHECK(p >= 0.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("zero weights and biases give uniform probabilities") {
  auto model = init_mlp(4, {3}, 5, 1);
  auto params = mlp_pack(model);
  std::fill(params.begin(), params.end(), 0.0);
  mlp_unpack(model, params);
  auto probs = mlp_probabilities(model, sparse({{0, 2.0}, {2, 1.0}}));
  REQUIRE(probs.size() == 5);
  for (double p : probs) CHECK(p == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("minibatch SGD also learns XOR") {
  auto data = xor_dataset();
  MlpOptions opt;
  opt.hidden = {8};
  opt.solver = MlpSolver::minibatch_sgd;
  opt.max_iters = 3000;
  opt.tol = 0.0;
  opt.batch_size = 4;
  opt.learning_rate = 0.8;
  opt.seed = 3;
  auto model = train_mlp(data, opt);
  for (std::size_t i = 0; i < data.size(); ++i) CHECK(mlp_predict(model, data.X[i]) == data.y[i]);
}

TEST_CASE("an absurd learning rate raises NonFiniteLoss") {
  auto data = xor_dataset();
  MlpOptions opt;
  opt.hidden = {4};
  opt.solver = MlpSolver::minibatch_sgd;
  opt.max_iters = 5000;
  opt.tol = 0.0;
  opt.learning_rate = 1e12;
  CHECK_THROWS_AS(train_mlp(data, opt), NonFiniteLoss);
}

TEST_CASE("single-class data is rejected") {
  LabeledDataset data;
  data.class_names = {"tək"};
  data.vocab_size = 2;
  data.X = {sparse({{0, 1.0}})};
  data.y = {0};
  MlpOptions opt;
  CHECK_THROWS_AS(train_mlp(data, opt), DegenerateDataset);
}

TEST_CASE("training and prediction are deterministic") {
  auto data = xor_dataset();
  MlpOptions opt;
  opt.hidden = {4};
  opt.max_iters = 100;
  opt.seed = 17;
  auto a = train_mlp(data, opt);
  auto b = train_mlp(data, opt);
  CHECK(a == b);
  auto x = sparse({{0, 1.0}});
  CHECK(mlp_probabilities(a, x) == mlp_probabilities(b, x));
}
