#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aztext/vectorize.hpp"

namespace aztext {

struct LabeledDataset {
  std::vector<SparseVector> X;
  std::vector<std::uint32_t> y;   // class indices into class_names
  std::vector<std::string> class_names;
  std::size_t vocab_size = 0;     // dimensionality of X

  std::size_t size() const { return X.size(); }
  std::size_t classes() const { return class_names.size(); }
};

// Throws LengthMismatch / Error / DegenerateDataset. Training requires at
// least two classes with at least one example each.
void validate_for_training(const LabeledDataset& data);

// Index of the largest value; ties break toward the lowest index.
std::size_t argmax_lowest(const std::vector<double>& values);

// Uniform double in [0, 1) built from the top 53 bits of one raw draw, so the
// stream is identical across platforms (distribution classes are not).
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Fisher-Yates driven by raw draws for the same reason.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace aztext
