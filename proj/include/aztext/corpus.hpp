#pragma once

#include <cstdint>
#include <regex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "aztext/text.hpp"

namespace aztext {

struct Document {
  std::string id;
  std::string source;
  std::string published_at;
  std::string category;
  std::string title;
  std::string body;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::set<std::string> labels;  // always the exact set of categories present

  void recompute_labels();
  static Corpus from_documents(std::vector<Document> docs);
};

// Keep-bounds are inclusive on both ends.
struct CleanThresholds {
  std::uint64_t min_chars = 30;
  std::uint64_t max_chars = 10000;
  std::uint64_t min_sentences = 3;
  std::uint64_t max_sentences = 100;

  void validate() const;  // throws Error when a min exceeds its max

  bool operator==(const CleanThresholds&) const = default;
};

struct CleanReport {
  std::uint64_t input_count = 0;
  std::uint64_t dropped_duplicates = 0;
  std::uint64_t dropped_too_short_chars = 0;
  std::uint64_t dropped_too_long_chars = 0;
  std::uint64_t dropped_too_few_sentences = 0;
  std::uint64_t dropped_too_many_sentences = 0;
  std::uint64_t output_count = 0;

  std::uint64_t dropped_total() const {
    return dropped_duplicates + dropped_too_short_chars + dropped_too_long_chars +
           dropped_too_few_sentences + dropped_too_many_sentences;
  }
};

// Descriptive statistics of one per-document distribution. Percentiles use
// linear interpolation; stdev uses the sample (n-1) divisor and is 0 for
// n <= 1.
struct StatsReport {
  std::size_t count = 0;
  double mean = 0, stdev = 0, min = 0, p25 = 0, p50 = 0, p75 = 0, max = 0;
};

struct CorpusStats {
  StatsReport sentences;
  StatsReport characters;
  std::uint64_t total_sentences = 0;
  std::uint64_t total_characters = 0;
};

const std::vector<std::string>& default_csv_schema();

// Loads one Document per data row, mapped by header name. The header must
// equal the schema, in order. Rows with a wrong field count, an empty id or
// category, or a duplicate id raise MalformedRow with the 1-based record
// number (header = record 1).
Corpus load_csv(const std::string& path,
                const std::vector<std::string>& schema = default_csv_schema());
void write_csv(const std::string& path, const Corpus& corpus);

struct DedupResult {
  Corpus corpus;
  std::uint64_t dropped = 0;
};

// Drops documents with a byte-identical body, keeping the first occurrence.
DedupResult deduplicate(const Corpus& corpus);

struct CleanResult {
  Corpus corpus;
  CleanReport report;
};

// Keeps documents whose character count (Unicode scalar values, whitespace
// included) and sentence count both lie inside the thresholds. A document
// failing several rules is attributed to the first failing rule in the order
// too_short_chars, too_long_chars, too_few_sentences, too_many_sentences.
CleanResult clean_phase1(const Corpus& corpus, const CleanThresholds& thresholds,
                         const SentenceCounter& count_sentences);

struct ScrubRule {
  std::string pattern;
  std::string replacement;  // what the match becomes; default single space
  std::regex regex;
};

// Rule file: one PATTERN<TAB>REPLACEMENT per line, '#' comments, empty
// replacement means a single space. Bad patterns raise InvalidPattern with
// the 0-based rule index.
std::vector<ScrubRule> parse_scrub_rules(std::string_view text);
std::vector<ScrubRule> load_scrub_rules(const std::string& path);

// The shipped default rule set (data/scrub_rules.txt), compiled.
const std::vector<ScrubRule>& default_scrub_rules();

// Applies every rule in order, then collapses whitespace runs to single
// spaces and trims — but only when some rule changed the text, so a body
// without matches comes back byte-identical.
std::string scrub_text(const std::string& body, const std::vector<ScrubRule>& rules);
Corpus scrub_noise(const Corpus& corpus, const std::vector<ScrubRule>& rules);

enum class MergePolicy { passthrough, strict };

std::unordered_map<std::string, std::string> load_category_mapping(const std::string& path);

// Relabels each document whose category is a mapping key. The mapping is
// applied once, not chained. strict raises UnknownCategory on the first
// label missing from the mapping.
Corpus merge_categories(const Corpus& corpus,
                        const std::unordered_map<std::string, std::string>& mapping,
                        MergePolicy policy);

CorpusStats corpus_stats(const Corpus& corpus, const SentenceCounter& count_sentences);

// buckets[k] = number of documents with exactly k sentences for k <
// max_bucket; buckets[max_bucket] aggregates everything >= max_bucket.
std::vector<std::uint64_t> sentence_histogram(const Corpus& corpus,
                                              const SentenceCounter& count_sentences,
                                              std::size_t max_bucket);

}  // namespace aztext
