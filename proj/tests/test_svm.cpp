#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <aztext/errors.hpp>
#include <aztext/svm.hpp>
#include <aztext/synthetic.hpp>
#include <aztext/text.hpp>
#include <aztext/vectorize.hpp>

#include <cmath>
#include <string>
#include <vector>

using namespace aztext;

namespace {

SparseVector sparse(std::initializer_list<SparseEntry> entries) {
  SparseVector v;
  v.entries = entries;
  return v;
}

// Two well-separated point clouds on two features.
LabeledDataset toy_separable() {
  LabeledDataset data;
  data.class_names = {"sağ", "yuxarı"};
  data.vocab_size = 2;
  auto add = [&](double a, double b, std::uint32_t label) {
    SparseVector x;
    if (a != 0.0) x.entries.push_back({0, a});
    if (b != 0.0) x.entries.push_back({1, b});
    data.X.push_back(x);
    data.y.push_back(label);
  };
  add(2.0, 0.0, 0);
  add(3.0, 1.0, 0);
  add(2.5, 0.5, 0);
  add(2.0, 0.3, 0);
  add(0.0, 2.0, 1);
  add(1.0, 3.0, 1);
  add(0.5, 2.5, 1);
  add(0.3, 2.0, 1);
  return data;
}

LabeledDataset vectorized_fixture() {
  Corpus corpus = make_separable_fixture(7);
  PipelineConfig pipe;
  std::vector<std::vector<Token>> token_docs;
  for (const auto& doc : corpus.documents) token_docs.push_back(pipeline_tokens(doc.body, pipe));
  auto vocab = build_vocabulary(token_docs, 1);
  LabeledDataset data;
  data.vocab_size = vocab.size();
  data.class_names.assign(corpus.labels.begin(), corpus.labels.end());
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    data.X.push_back(vectorize_count(token_docs[i], vocab));
    for (std::size_t c = 0; c < data.class_names.size(); ++c) {
      if (data.class_names[c] == corpus.documents[i].category) {
        data.y.push_back(std::uint32_t(c));
        break;
      }
    }
  }
  return data;
}

}  // namespace

TEST_CASE("one binary model per class") {
  auto data = vectorized_fixture();
  REQUIRE(data.classes() == 6);
  auto model = train_svm_ovr(data, 1e-4, 3, 11);
  CHECK(model.class_count() == 6);
  CHECK(model.bias.size() == 6);
  for (const auto& w : model.weights) {
    CHECK(w.size() == data.vocab_size);
    for (double v : w) CHECK(std::isfinite(v));
  }
}

TEST_CASE("separable two-feature toy set reaches 100% training accuracy") {
  auto data = toy_separable();
  auto model = train_svm_ovr(data, 1e-3, 200, 42);
  for (std::size_t i = 0; i < data.size(); ++i)
    CHECK(svm_predict(model, data.X[i]) == data.y[i]);
}

TEST_CASE("every training point of the 6-class fixture gets the max decision at its label") {
  auto data = vectorized_fixture();
  auto model = train_svm_ovr(data, 1e-4, 20, 11);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    auto decisions = svm_decisions(model, data.X[i]);
    if (argmax_lowest(decisions) == data.y[i]) ++correct;
  }
  CHECK(correct == data.size());
}

TEST_CASE("identical seed and data give bitwise-identical weights") {
  auto data = toy_separable();
  auto a = train_svm_ovr(data, 1e-3, 50, 9);
  auto b = train_svm_ovr(data, 1e-3, 50, 9);
  CHECK(a == b);
  auto c = train_svm_ovr(data, 1e-3, 50, 10);
  CHECK(a.weights != c.weights);  // a different seed takes a different path
}

TEST_CASE("zero vector scores the biases") {
  auto data = toy_separable();
  auto model = train_svm_ovr(data, 1e-3, 50, 9);
  SparseVector zero;
  auto decisions = svm_decisions(model, zero);
  REQUIRE(decisions.size() == model.bias.size());
  for (std::size_t c = 0; c < decisions.size(); ++c) CHECK(decisions[c] == model.bias[c]);
}

TEST_CASE("positive scaling with zero biases keeps the argmax") {
  SvmModel model;
  model.weights = {{1.0, -0.5}, {-0.3, 0.8}, {0.2, 0.1}};
  model.bias = {0.0, 0.0, 0.0};
  auto x = sparse({{0, 0.7}, {1, 0.4}});
  auto base = svm_decisions(model, x);
  for (double k : {2.0, 10.0, 0.25}) {
    SparseVector scaled;
    for (const auto& e : x.entries) scaled.entries.push_back({e.index, e.value * k});
    auto got = svm_decisions(model, scaled);
    for (std::size_t c = 0; c < got.size(); ++c)
      CHECK(got[c] == doctest::Approx(base[c] * k).epsilon(1e-12));
    CHECK(argmax_lowest(got) == argmax_lowest(base));
  }
}

TEST_CASE("objective at the final epoch is no worse than after the first") {
  auto data = toy_separable();
  std::vector<double> totals;
  for (std::uint32_t epochs : {1u, 5u, 20u, 60u}) {
    auto model = train_svm_ovr(data, 1e-2, epochs, 3);
    double total = 0;
    for (std::size_t c = 0; c < data.classes(); ++c)
      total += svm_binary_objective(model, c, data);
    totals.push_back(total);
  }
  CHECK(totals.back() <= totals.front() + 1e-9);
}

TEST_CASE("objective decreases on the vectorized fixture too") {
  auto data = vectorized_fixture();
  auto early = train_svm_ovr(data, 1e-4, 1, 11);
  auto late = train_svm_ovr(data, 1e-4, 20, 11);
  double j_early = 0, j_late = 0;
  for (std::size_t c = 0; c < data.classes(); ++c) {
    j_early += svm_binary_objective(early, c, data);
    j_late += svm_binary_objective(late, c, data);
  }
  CHECK(j_late <= j_early + 1e-9);
}

TEST_CASE("single-class data is rejected") {
  LabeledDataset data;
  data.class_names = {"tək"};
  data.vocab_size = 2;
  data.X = {sparse({{0, 1.0}})};
  data.y = {0};
  CHECK_THROWS_AS(train_svm_ovr(data, 1e-3, 5, 1), DegenerateDataset);
}

TEST_CASE("prediction is a pure function of model and input") {
  auto data = toy_separable();
  auto model = train_svm_ovr(data, 1e-3, 50, 9);
  auto x = sparse({{0, 1.5}, {1, 0.5}});
  auto first = svm_decisions(model, x);
  for (int i = 0; i < 5; ++i) CHECK(svm_decisions(model, x) == first);
}
