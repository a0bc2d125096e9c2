#include "aztext/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "aztext/csv.hpp"
#include "aztext/errors.hpp"
#include "aztext/utf8.hpp"
#include "scrub_rules_data.hpp"

namespace aztext {

void Corpus::recompute_labels() {
  labels.clear();
  for (const auto& doc : documents) labels.insert(doc.category);
}

Corpus Corpus::from_documents(std::vector<Document> docs) {
  Corpus corpus;
  corpus.documents = std::move(docs);
  corpus.recompute_labels();
  return corpus;
}

void CleanThresholds::validate() const {
  if (min_chars > max_chars) throw Error("min_chars exceeds max_chars");
  if (min_sentences > max_sentences) throw Error("min_sentences exceeds max_sentences");
}

const std::vector<std::string>& default_csv_schema() {
  static const std::vector<std::string> schema = {"id",       "source", "published_at",
                                                  "category", "title",  "body"};
  return schema;
}

Corpus load_csv(const std::string& path, const std::vector<std::string>& schema) {
  const auto table = csv::read_file(path);
  if (table.header != schema) {
    std::ostringstream msg;
    msg << "header [";
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      msg << (i ? "," : "") << table.header[i];
    }
    msg << "] does not match schema [";
    for (std::size_t i = 0; i < schema.size(); ++i) msg << (i ? "," : "") << schema[i];
    msg << "]";
    throw SchemaError(msg.str());
  }

  auto column = [&schema](const std::string& name) {
    auto it = std::find(schema.begin(), schema.end(), name);
    if (it == schema.end()) throw SchemaError("schema is missing column: " + name);
    return static_cast<std::size_t>(it - schema.begin());
  };
  const std::size_t id_col = column("id");
  const std::size_t source_col = column("source");
  const std::size_t published_col = column("published_at");
  const std::size_t category_col = column("category");
  const std::size_t title_col = column("title");
  const std::size_t body_col = column("body");

  Corpus corpus;
  corpus.documents.reserve(table.rows.size());
  std::unordered_set<std::string_view> seen_ids;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::size_t record = table.record_numbers[i];
    Document doc{row[id_col],       row[source_col], row[published_col],
                 row[category_col], row[title_col],  row[body_col]};
    if (doc.id.empty()) throw MalformedRow(record, "empty id");
    if (doc.category.empty()) throw MalformedRow(record, "empty category");
    corpus.documents.push_back(std::move(doc));
    if (!seen_ids.insert(corpus.documents.back().id).second) {
      throw MalformedRow(record, "duplicate id: " + corpus.documents.back().id);
    }
  }
  corpus.recompute_labels();
  return corpus;
}

void write_csv(const std::string& path, const Corpus& corpus) {
  csv::Table table;
  table.header = default_csv_schema();
  table.rows.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    table.rows.push_back(
        {doc.id, doc.source, doc.published_at, doc.category, doc.title, doc.body});
  }
  csv::write_file(path, table);
}

DedupResult deduplicate(const Corpus& corpus) {
  DedupResult result;
  std::unordered_set<std::string_view> seen;
  seen.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    if (seen.insert(doc.body).second) {
      result.corpus.documents.push_back(doc);
    } else {
      ++result.dropped;
    }
  }
  result.corpus.recompute_labels();
  return result;
}

CleanResult clean_phase1(const Corpus& corpus, const CleanThresholds& thresholds,
                         const SentenceCounter& count_sentences) {
  thresholds.validate();
  CleanResult result;
  result.report.input_count = corpus.documents.size();
  for (const auto& doc : corpus.documents) {
    const std::uint64_t chars = utf8::length(doc.body);
    if (chars < thresholds.min_chars) {
      ++result.report.dropped_too_short_chars;
      continue;
    }
    if (chars > thresholds.max_chars) {
      ++result.report.dropped_too_long_chars;
      continue;
    }
    const std::uint64_t sentences = count_sentences(doc.body);
    if (sentences < thresholds.min_sentences) {
      ++result.report.dropped_too_few_sentences;
      continue;
    }
    if (sentences > thresholds.max_sentences) {
      ++result.report.dropped_too_many_sentences;
      continue;
    }
    result.corpus.documents.push_back(doc);
  }
  result.report.output_count = result.corpus.documents.size();
  result.corpus.recompute_labels();
  return result;
}

std::vector<ScrubRule> parse_scrub_rules(std::string_view text) {
  std::vector<ScrubRule> rules;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    ScrubRule rule;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      rule.pattern = std::string(line);
      rule.replacement = " ";
    } else {
      rule.pattern = std::string(line.substr(0, tab));
      rule.replacement = std::string(line.substr(tab + 1));
      if (rule.replacement.empty()) rule.replacement = " ";
    }
    try {
      rule.regex = std::regex(rule.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw InvalidPattern(rules.size(), std::string(e.what()) + " in \"" + rule.pattern + "\"");
    }
    rules.push_back(std::move(rule));
    if (end == text.size()) break;
  }
  return rules;
}

std::vector<ScrubRule> load_scrub_rules(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scrub_rules(buf.str());
}

const std::vector<ScrubRule>& default_scrub_rules() {
  static const std::vector<ScrubRule> rules = parse_scrub_rules(detail::kDefaultScrubRules);
  return rules;
}

namespace {

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v' ||
         cp == 0xA0;
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::decode(text, pos);
    if (is_space_cp(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    utf8::append(out, cp);
  }
  return out;
}

}  // namespace

std::string scrub_text(const std::string& body, const std::vector<ScrubRule>& rules) {
  std::string current = body;
  bool changed = false;
  for (const auto& rule : rules) {
    // '$' is special in regex_replace format strings; our replacements are
    // literal text.
    std::string replacement;
    for (char c : rule.replacement) {
      if (c == '$') replacement += "$$";
      else replacement.push_back(c);
    }
    std::string next = std::regex_replace(current, rule.regex, replacement);
    if (next != current) {
      changed = true;
      current = std::move(next);
    }
  }
  return changed ? collapse_whitespace(current) : current;
}

Corpus scrub_noise(const Corpus& corpus, const std::vector<ScrubRule>& rules) {
  Corpus out = corpus;
  for (auto& doc : out.documents) doc.body = scrub_text(doc.body, rules);
  return out;
}

std::unordered_map<std::string, std::string> load_category_mapping(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  std::unordered_map<std::string, std::string> mapping;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      throw Error("mapping line " + std::to_string(line_no) + " is not old<TAB>new: " + line);
    }
    mapping[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return mapping;
}

Corpus merge_categories(const Corpus& corpus,
                        const std::unordered_map<std::string, std::string>& mapping,
                        MergePolicy policy) {
  Corpus out = corpus;
  for (auto& doc : out.documents) {
    auto it = mapping.find(doc.category);
    if (it != mapping.end()) {
      doc.category = it->second;
    } else if (policy == MergePolicy::strict) {
      throw UnknownCategory(doc.category);
    }
  }
  out.recompute_labels();
  return out;
}

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

StatsReport describe(std::vector<double> values) {
  StatsReport report;
  report.count = values.size();
  if (values.empty()) return report;
  double sum = 0;
  for (double v : values) sum += v;
  report.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - report.mean) * (v - report.mean);
    report.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  std::sort(values.begin(), values.end());
  report.min = values.front();
  report.max = values.back();
  report.p25 = percentile(values, 0.25);
  report.p50 = percentile(values, 0.50);
  report.p75 = percentile(values, 0.75);
  return report;
}

}  // namespace

CorpusStats corpus_stats(const Corpus& corpus, const SentenceCounter& count_sentences) {
  if (corpus.documents.empty()) throw EmptyCorpus();
  CorpusStats stats;
  std::vector<double> sentence_counts, char_counts;
  sentence_counts.reserve(corpus.documents.size());
  char_counts.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    const std::size_t sentences = count_sentences(doc.body);
    const std::size_t chars = utf8::length(doc.body);
    sentence_counts.push_back(static_cast<double>(sentences));
    char_counts.push_back(static_cast<double>(chars));
    stats.total_sentences += sentences;
    stats.total_characters += chars;
  }
  stats.sentences = describe(std::move(sentence_counts));
  stats.characters = describe(std::move(char_counts));
  return stats;
}

std::vector<std::uint64_t> sentence_histogram(const Corpus& corpus,
                                              const SentenceCounter& count_sentences,
                                              std::size_t max_bucket) {
  if (max_bucket < 1) throw Error("max_bucket must be at least 1");
  std::vector<std::uint64_t> buckets(max_bucket + 1, 0);
  for (const auto& doc : corpus.documents) {
    const std::size_t n = count_sentences(doc.body);
    ++buckets[std::min(n, max_bucket)];
  }
  return buckets;
}

}  // namespace aztext
