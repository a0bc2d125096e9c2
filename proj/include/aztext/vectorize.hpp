#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "aztext/text.hpp"

namespace aztext {

struct SparseEntry {
  std::uint32_t index;
  double value;

  bool operator==(const SparseEntry&) const = default;
};

// Indices strictly increasing, no zero values stored.
struct SparseVector {
  std::vector<SparseEntry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t nonzeros() const { return entries.size(); }
  double value_sum() const;
  double dot_dense(const std::vector<double>& dense) const;

  bool operator==(const SparseVector&) const = default;
};

// Dense indices 0..V-1 in first-occurrence order over the corpus, with
// per-term document frequencies and the corpus document count.
struct Vocabulary {
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<std::string> terms;
  std::vector<std::uint64_t> df;
  std::uint64_t doc_count = 0;

  std::size_t size() const { return terms.size(); }
  // Returns the term index or -1 when out of vocabulary.
  std::int64_t lookup(const std::string& term) const;
};

struct IdfTable {
  std::vector<double> idf;  // aligned with vocabulary indices
};

// Terms with document frequency >= min_df, indexed by first occurrence.
// Throws EmptyCorpus when token_docs is empty.
Vocabulary build_vocabulary(const std::vector<std::vector<Token>>& token_docs,
                            std::uint64_t min_df = 1);

// 1.0 at each in-vocabulary term's index; out-of-vocabulary tokens ignored.
SparseVector vectorize_binary(const std::vector<Token>& tokens, const Vocabulary& vocab);

// Raw term counts.
SparseVector vectorize_count(const std::vector<Token>& tokens, const Vocabulary& vocab);

// idf(t) = ln(N / df(t)), natural log. The base is recorded project-wide; the
// value ln(2/2) = 0 for a term in every document holds in any base.
IdfTable fit_idf(const Vocabulary& vocab);

// value(t) = (count(t) / in-vocabulary token total) * idf(t); exact zeros are
// omitted. Throws EmptyDocument when no token is in the vocabulary.
SparseVector vectorize_tfidf(const std::vector<Token>& tokens, const Vocabulary& vocab,
                             const IdfTable& idf);

// Debug dump: one "(doc_index, term_index) value" line per nonzero.
std::string sparse_debug_lines(std::size_t doc_index, const SparseVector& vec);

}  // namespace aztext
