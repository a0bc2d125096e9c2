#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aztext {

// Base class for every error the toolkit raises on purpose. Anything else
// escaping the library is a bug.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MissingFile : Error {
  explicit MissingFile(const std::string& path) : Error("missing file: " + path) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& msg) : Error("schema error: " + msg) {}
};

struct MalformedRow : Error {
  MalformedRow(std::size_t row, const std::string& msg)
      : Error("malformed row " + std::to_string(row) + ": " + msg), row(row) {}
  std::size_t row;
};

struct InvalidPattern : Error {
  InvalidPattern(std::size_t index, const std::string& msg)
      : Error("invalid pattern #" + std::to_string(index) + ": " + msg), index(index) {}
  std::size_t index;
};

struct UnknownCategory : Error {
  explicit UnknownCategory(const std::string& label)
      : Error("unknown category: " + label), label(label) {}
  std::string label;
};

struct EmptyCorpus : Error {
  EmptyCorpus() : Error("empty corpus") {}
};

struct EmptyDocument : Error {
  EmptyDocument() : Error("document has no in-vocabulary tokens") {}
};

struct EmptyInput : Error {
  EmptyInput() : Error("empty input text") {}
};

struct DegenerateDataset : Error {
  explicit DegenerateDataset(const std::string& msg = "needs at least two populated classes")
      : Error("degenerate dataset: " + msg) {}
};

struct NonFiniteLoss : Error {
  explicit NonFiniteLoss(const std::string& msg = "training diverged")
      : Error("non-finite loss: " + msg) {}
};

struct FormatError : Error {
  explicit FormatError(const std::string& msg) : Error("format error: " + msg) {}
};

struct VersionError : Error {
  VersionError(std::uint32_t found, std::uint32_t supported)
      : Error("unsupported model format version " + std::to_string(found) +
              " (this build reads version " + std::to_string(supported) + ")"),
        found(found),
        supported(supported) {}
  std::uint32_t found;
  std::uint32_t supported;
};

struct TruncatedFile : Error {
  explicit TruncatedFile(const std::string& msg = "unexpected end of data")
      : Error("truncated file: " + msg) {}
};

struct LengthMismatch : Error {
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct EmptyMatrix : Error {
  EmptyMatrix() : Error("confusion matrix has no observations") {}
};

}  // namespace aztext
