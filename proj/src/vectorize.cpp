#include "aztext/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "aztext/errors.hpp"

namespace aztext {

double SparseVector::value_sum() const {
  double total = 0.0;
  for (const auto& e : entries) total += e.value;
  return total;
}

double SparseVector::dot_dense(const std::vector<double>& dense) const {
  double total = 0.0;
  for (const auto& e : entries) {
    if (e.index < dense.size()) total += e.value * dense[e.index];
  }
  return total;
}

std::int64_t Vocabulary::lookup(const std::string& term) const {
  auto it = index.find(term);
  if (it == index.end()) return -1;
  return static_cast<std::int64_t>(it->second);
}

Vocabulary build_vocabulary(const std::vector<std::vector<Token>>& token_docs,
                            std::uint64_t min_df) {
  if (token_docs.empty()) throw EmptyCorpus();
  if (min_df < 1) throw Error("min_df must be >= 1");

  // First-occurrence order over the whole corpus, then df filtering, so the
  // surviving terms keep their relative order and get dense indices.
  std::vector<std::string> order;
  std::unordered_map<std::string, std::uint64_t> df_map;
  for (const auto& doc : token_docs) {
    std::unordered_set<std::string> seen;
    for (const auto& tok : doc) {
      if (!seen.insert(tok).second) continue;
      auto [it, inserted] = df_map.try_emplace(tok, 0);
      if (inserted) order.push_back(tok);
      ++it->second;
    }
  }

  Vocabulary vocab;
  vocab.doc_count = token_docs.size();
  for (auto& term : order) {
    std::uint64_t df = df_map[term];
    if (df < min_df) continue;
    vocab.index.emplace(term, static_cast<std::uint32_t>(vocab.terms.size()));
    vocab.terms.push_back(std::move(term));
    vocab.df.push_back(df);
  }
  return vocab;
}

namespace {

// Count in-vocabulary tokens into (index, count) pairs sorted by index.
std::vector<SparseEntry> count_entries(const std::vector<Token>& tokens,
                                       const Vocabulary& vocab) {
  std::unordered_map<std::uint32_t, double> counts;
  for (const auto& tok : tokens) {
    std::int64_t idx = vocab.lookup(tok);
    if (idx >= 0) counts[static_cast<std::uint32_t>(idx)] += 1.0;
  }
  std::vector<SparseEntry> entries;
  entries.reserve(counts.size());
  for (const auto& [idx, count] : counts) entries.push_back({idx, count});
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  return entries;
}

}  // namespace

SparseVector vectorize_binary(const std::vector<Token>& tokens, const Vocabulary& vocab) {
  SparseVector vec;
  vec.entries = count_entries(tokens, vocab);
  for (auto& e : vec.entries) e.value = 1.0;
  return vec;
}

SparseVector vectorize_count(const std::vector<Token>& tokens, const Vocabulary& vocab) {
  SparseVector vec;
  vec.entries = count_entries(tokens, vocab);
  return vec;
}

IdfTable fit_idf(const Vocabulary& vocab) {
  IdfTable table;
  table.idf.reserve(vocab.df.size());
  double n = static_cast<double>(vocab.doc_count);
  for (std::uint64_t df : vocab.df) {
    table.idf.push_back(std::log(n / static_cast<double>(df)));
  }
  return table;
}

SparseVector vectorize_tfidf(const std::vector<Token>& tokens, const Vocabulary& vocab,
                             const IdfTable& idf) {
  std::vector<SparseEntry> counts = count_entries(tokens, vocab);
  double total = 0.0;
  for (const auto& e : counts) total += e.value;
  if (total == 0.0) throw EmptyDocument();

  SparseVector vec;
  vec.entries.reserve(counts.size());
  for (const auto& e : counts) {
    double value = (e.value / total) * idf.idf[e.index];
    if (value != 0.0) vec.entries.push_back({e.index, value});
  }
  return vec;
}

std::string sparse_debug_lines(std::size_t doc_index, const SparseVector& vec) {
  std::string out;
  char buf[128];
  for (const auto& e : vec.entries) {
    double rounded = std::nearbyint(e.value);
    if (rounded == e.value && std::abs(e.value) < 1e15) {
      std::snprintf(buf, sizeof(buf), "(%zu, %u) %lld\n", doc_index, e.index,
                    static_cast<long long>(rounded));
    } else {
      std::snprintf(buf, sizeof(buf), "(%zu, %u) %.6g\n", doc_index, e.index, e.value);
    }
    out += buf;
  }
  return out;
}

}  // namespace aztext
