#include "aztext/dataset.hpp"

#include "aztext/errors.hpp"

namespace aztext {

void validate_for_training(const LabeledDataset& data) {
  if (data.X.size() != data.y.size()) throw LengthMismatch(data.X.size(), data.y.size());
  if (data.X.empty()) throw EmptyCorpus();
  if (data.class_names.size() < 2) throw DegenerateDataset();
  std::vector<std::uint64_t> counts(data.class_names.size(), 0);
  for (std::uint32_t label : data.y) {
    if (label >= data.class_names.size()) throw Error("label index out of range");
    ++counts[label];
  }
  std::size_t populated = 0;
  for (std::uint64_t c : counts) {
    if (c > 0) ++populated;
  }
  if (populated < 2) throw DegenerateDataset();
}

std::size_t argmax_lowest(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace aztext
