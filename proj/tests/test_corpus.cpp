#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <aztext/corpus.hpp>
#include <aztext/errors.hpp>
#include <aztext/text.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace aztext;

namespace {

Document doc(std::string id, std::string category, std::string body) {
  Document d;
  d.id = std::move(id);
  d.source = "test";
  d.published_at = "2023-01-01";
  d.category = std::move(category);
  d.title = "t";
  d.body = std::move(body);
  return d;
}

// Body with exactly `sentences` dots and at least `min_chars` characters.
std::string body_with(std::size_t sentences, std::size_t min_chars) {
  std::string out;
  for (std::size_t i = 0; i < sentences; ++i) out += "cümlə sözlər burada.";
  while (out.size() < min_chars) out += " uzadılmış mətn";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

double naive_percentile(std::vector<double> sorted, double p) {
  double h = p * double(sorted.size() - 1);
  std::size_t lo = std::size_t(std::floor(h));
  double frac = h - double(lo);
  if (lo + 1 >= sorted.size()) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::size_t utf8_scalar_count(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

}  // namespace

TEST_CASE("deduplicate keeps the first of identical bodies") {
  Corpus corpus = Corpus::from_documents(
      {doc("1", "a", "A"), doc("2", "a", "A"), doc("3", "b", "B")});
  auto result = deduplicate(corpus);
  CHECK(result.dropped == 1);
  REQUIRE(result.corpus.documents.size() == 2);
  CHECK(result.corpus.documents[0].id == "1");
  CHECK(result.corpus.documents[1].id == "3");
}

TEST_CASE("deduplicate leaves an all-unique corpus unchanged") {
  Corpus corpus =
      Corpus::from_documents({doc("1", "a", "X"), doc("2", "a", "Y"), doc("3", "b", "Z")});
  auto result = deduplicate(corpus);
  CHECK(result.dropped == 0);
  CHECK(result.corpus.documents == corpus.documents);
}

TEST_CASE("deduplicate matches a set-based oracle on a planted fixture") {
  std::mt19937_64 rng(11);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 43; ++i)
    docs.push_back(doc("u" + std::to_string(i), "c", "unikal mətn " + std::to_string(i)));
  // Plant 7 exact duplicates of random earlier bodies.
  for (std::size_t i = 0; i < 7; ++i) {
    Document d = docs[rng() % 43];
    d.id = "dup" + std::to_string(i);
    docs.push_back(d);
  }
  // Shuffle so duplicates are interleaved, keeping the first-seen rule visible.
  for (std::size_t i = docs.size() - 1; i > 0; --i) std::swap(docs[i], docs[rng() % (i + 1)]);

  Corpus corpus = Corpus::from_documents(docs);
  auto result = deduplicate(corpus);
  CHECK(result.dropped == 7);

  std::set<std::string> seen;
  std::vector<std::string> expected_ids;
  for (const auto& d : corpus.documents)
    if (seen.insert(d.body).second) expected_ids.push_back(d.id);
  std::vector<std::string> got_ids;
  for (const auto& d : result.corpus.documents) got_ids.push_back(d.id);
  CHECK(got_ids == expected_ids);

  auto again = deduplicate(result.corpus);
  CHECK(again.dropped == 0);
  CHECK(again.corpus.documents == result.corpus.documents);
}

TEST_CASE("clean_phase1 applies the default thresholds") {
  CleanThresholds t;
  Corpus corpus = Corpus::from_documents({
      doc("short", "a", "cəmi iyirmi beş simvol..."),     // 25 chars -> too short
      doc("ok", "a", body_with(10, 500)),                 // inside all bounds
      doc("many", "a", body_with(120, 2000)),             // 120 sentences
  });
  REQUIRE(utf8_scalar_count(corpus.documents[0].body) == 25);
  auto result = clean_phase1(corpus, t, count_dots);
  REQUIRE(result.corpus.documents.size() == 1);
  CHECK(result.corpus.documents[0].id == "ok");
  CHECK(result.report.input_count == 3);
  CHECK(result.report.dropped_too_short_chars == 1);
  CHECK(result.report.dropped_too_many_sentences == 1);
  CHECK(result.report.dropped_too_few_sentences == 0);
  CHECK(result.report.output_count == 1);
}

TEST_CASE("clean_phase1 counts characters in Unicode scalars, spaces included") {
  CleanThresholds t;
  t.min_chars = 10;
  t.max_chars = 12;
  t.min_sentences = 0;
  t.max_sentences = 100;
  // 10 scalars, 16 bytes: require scalar counting to keep it.
  Corpus corpus = Corpus::from_documents({doc("x", "a", "əəəəə əəə.")});
  REQUIRE(utf8_scalar_count(corpus.documents[0].body) == 10);
  auto result = clean_phase1(corpus, t, count_dots);
  CHECK(result.corpus.documents.size() == 1);
}

TEST_CASE("clean_phase1 attributes multi-rule failures to the first rule") {
  CleanThresholds t;  // defaults: min 30 chars, min 3 sentences
  // 5 chars and 0 sentences: fails both, must count as too_short_chars.
  Corpus corpus = Corpus::from_documents({doc("x", "a", "qısa")});
  auto result = clean_phase1(corpus, t, count_dots);
  CHECK(result.report.dropped_too_short_chars == 1);
  CHECK(result.report.dropped_too_few_sentences == 0);
}

TEST_CASE("clean_phase1 conserves counts and is idempotent") {
  CleanThresholds t;
  std::mt19937_64 rng(5);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 60; ++i) {
    std::size_t sentences = rng() % 130;
    std::size_t chars = 10 + rng() % 1200;
    docs.push_back(doc("r" + std::to_string(i), "c", body_with(sentences, chars)));
  }
  Corpus corpus = Corpus::from_documents(docs);
  auto result = clean_phase1(corpus, t, count_dots);
  CHECK(result.report.input_count ==
        result.report.output_count + result.report.dropped_total());
  auto again = clean_phase1(result.corpus, t, count_dots);
  CHECK(again.corpus.documents == result.corpus.documents);
  CHECK(again.report.dropped_total() == 0);
}

TEST_CASE("scrub_noise removes URLs with the shipped rules") {
  Corpus corpus = Corpus::from_documents(
      {doc("1", "a", "mənbə: http://example.com/a?b=1 sonra")});
  Corpus out = scrub_noise(corpus, default_scrub_rules());
  CHECK(out.documents[0].body == "mənbə: sonra");
}

TEST_CASE("scrub output matches the checked-in golden file") {
  std::string input = read_file(std::string(AZTEXT_TEST_DIR) + "/golden/scrub_input.txt");
  std::string expected = read_file(std::string(AZTEXT_TEST_DIR) + "/golden/scrub_expected.txt");
  CHECK(scrub_text(input, default_scrub_rules()) == expected);
}

TEST_CASE("scrub_noise leaves unmatched bodies byte-identical") {
  std::string body = "Sadə xəbər mətni.  İkiqat   boşluqlar da qalır.";
  Corpus corpus = Corpus::from_documents({doc("1", "a", body)});
  Corpus out = scrub_noise(corpus, default_scrub_rules());
  CHECK(out.documents[0].body == body);
  Corpus out2 = scrub_noise(corpus, {});
  CHECK(out2.documents[0].body == body);
}

TEST_CASE("parse_scrub_rules reports bad patterns with their index") {
  CHECK_THROWS_AS(parse_scrub_rules("ok\n[unclosed\n"), InvalidPattern);
  try {
    parse_scrub_rules("ok\n[unclosed\n");
  } catch (const InvalidPattern& e) {
    CHECK(e.index == 1);
  }
}

TEST_CASE("parse_scrub_rules reads PATTERN TAB REPLACEMENT lines") {
  auto rules = parse_scrub_rules("# comment\nfoo\tbar\nbaz\n");
  REQUIRE(rules.size() == 2);
  CHECK(rules[0].pattern == "foo");
  CHECK(rules[0].replacement == "bar");
  CHECK(rules[1].replacement == " ");
  CHECK(scrub_text("a foo baz b", rules) == "a bar b");
}

TEST_CASE("merge_categories maps labels and recomputes the label set") {
  Corpus corpus = Corpus::from_documents({doc("1", "futbol", "b1"), doc("2", "idman", "b2")});
  Corpus merged = merge_categories(corpus, {{"futbol", "idman"}}, MergePolicy::passthrough);
  CHECK(merged.documents[0].category == "idman");
  CHECK(merged.documents[1].category == "idman");
  CHECK(merged.labels == std::set<std::string>{"idman"});
  CHECK(merged.documents.size() == corpus.documents.size());
}

TEST_CASE("merge_categories passthrough keeps unmapped labels") {
  Corpus corpus = Corpus::from_documents({doc("1", "elm", "b")});
  Corpus merged = merge_categories(corpus, {{"futbol", "idman"}}, MergePolicy::passthrough);
  CHECK(merged.documents[0].category == "elm");
}

TEST_CASE("merge_categories strict raises on unmapped labels") {
  Corpus corpus = Corpus::from_documents({doc("1", "elm", "b")});
  CHECK_THROWS_AS(merge_categories(corpus, {{"futbol", "idman"}}, MergePolicy::strict),
                  UnknownCategory);
  try {
    merge_categories(corpus, {{"futbol", "idman"}}, MergePolicy::strict);
  } catch (const UnknownCategory& e) {
    CHECK(e.label == "elm");
  }
}

TEST_CASE("merge_categories preserves document order") {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 20; ++i)
    docs.push_back(doc(std::to_string(i), i % 2 ? "a" : "b", "body" + std::to_string(i)));
  Corpus corpus = Corpus::from_documents(docs);
  Corpus merged = merge_categories(corpus, {{"a", "c"}}, MergePolicy::passthrough);
  REQUIRE(merged.documents.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(merged.documents[i].id == std::to_string(i));
}

TEST_CASE("corpus_stats reproduces the hand-computed example") {
  Corpus corpus = Corpus::from_documents({
      doc("1", "a", body_with(2, 0)),
      doc("2", "a", body_with(4, 0)),
      doc("3", "a", body_with(6, 0)),
  });
  auto stats = corpus_stats(corpus, count_dots);
  CHECK(stats.sentences.count == 3);
  CHECK(stats.sentences.mean == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(stats.sentences.stdev == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(stats.sentences.min == doctest::Approx(2.0));
  CHECK(stats.sentences.p25 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(stats.sentences.p50 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(stats.sentences.p75 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(stats.sentences.max == doctest::Approx(6.0));
  CHECK(stats.total_sentences == 12);
}

TEST_CASE("corpus_stats handles a single document") {
  Corpus corpus = Corpus::from_documents({doc("1", "a", "üç nöqtə. burada. var.")});
  auto stats = corpus_stats(corpus, count_dots);
  CHECK(stats.sentences.stdev == 0.0);
  CHECK(stats.sentences.p25 == stats.sentences.p50);
  CHECK(stats.sentences.p50 == stats.sentences.p75);
  CHECK(stats.sentences.p50 == doctest::Approx(3.0));
  CHECK(stats.characters.stdev == 0.0);
}

TEST_CASE("corpus_stats raises on an empty corpus") {
  Corpus corpus;
  CHECK_THROWS_AS(corpus_stats(corpus, count_dots), EmptyCorpus);
}

TEST_CASE("corpus_stats matches a brute-force oracle on random corpora") {
  std::mt19937_64 rng(77);
  for (std::size_t n : {2, 3, 17, 400, 10000}) {
    std::vector<Document> docs;
    for (std::size_t i = 0; i < n; ++i) {
      std::string body;
      std::size_t sentences = rng() % 40;
      for (std::size_t s = 0; s < sentences; ++s) body += "söz burada.";
      body += std::string(rng() % 90, 'x');
      docs.push_back(doc(std::to_string(i), "c", body));
    }
    Corpus corpus = Corpus::from_documents(docs);
    auto stats = corpus_stats(corpus, count_dots);

    std::vector<double> sent, chars;
    for (const auto& d : corpus.documents) {
      sent.push_back(double(count_dots(d.body)));
      chars.push_back(double(utf8_scalar_count(d.body)));
    }
    for (auto [values, got] : {std::pair{&sent, &stats.sentences}, {&chars, &stats.characters}}) {
      double mean = 0;
      for (double v : *values) mean += v;
      mean /= double(values->size());
      double ss = 0;
      for (double v : *values) ss += (v - mean) * (v - mean);
      double stdev = values->size() > 1 ? std::sqrt(ss / double(values->size() - 1)) : 0.0;
      std::vector<double> sorted = *values;
      std::sort(sorted.begin(), sorted.end());
      CHECK(got->mean == doctest::Approx(mean).epsilon(1e-9));
      CHECK(got->stdev == doctest::Approx(stdev).epsilon(1e-9));
      CHECK(got->min == doctest::Approx(sorted.front()));
      CHECK(got->max == doctest::Approx(sorted.back()));
      CHECK(got->p25 == doctest::Approx(naive_percentile(sorted, 0.25)).epsilon(1e-9));
      CHECK(got->p50 == doctest::Approx(naive_percentile(sorted, 0.50)).epsilon(1e-9));
      CHECK(got->p75 == doctest::Approx(naive_percentile(sorted, 0.75)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sentence_histogram buckets exact counts with a tail bucket") {
  Corpus corpus = Corpus::from_documents({
      doc("1", "a", body_with(1, 0)),
      doc("2", "a", body_with(1, 0)),
      doc("3", "a", body_with(2, 0)),
      doc("4", "a", body_with(5, 0)),
  });
  auto buckets = sentence_histogram(corpus, count_dots, 4);
  REQUIRE(buckets.size() == 5);
  CHECK(buckets[0] == 0);
  CHECK(buckets[1] == 2);
  CHECK(buckets[2] == 1);
  CHECK(buckets[3] == 0);
  CHECK(buckets[4] == 1);  // >= 4 aggregate
}

TEST_CASE("sentence_histogram of an empty corpus is all zero") {
  Corpus corpus;
  auto buckets = sentence_histogram(corpus, count_dots, 6);
  for (auto b : buckets) CHECK(b == 0);
}

TEST_CASE("sentence_histogram matches a brute-force tally on 1000 docs") {
  std::mt19937_64 rng(31);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 1000; ++i) docs.push_back(doc(std::to_string(i), "c", body_with(rng() % 25, 0)));
  Corpus corpus = Corpus::from_documents(docs);
  std::size_t max_bucket = 15;
  auto buckets = sentence_histogram(corpus, count_dots, max_bucket);

  std::vector<std::uint64_t> expected(max_bucket + 1, 0);
  std::uint64_t total = 0;
  for (const auto& d : corpus.documents) {
    std::size_t s = count_dots(d.body);
    ++expected[std::min(s, max_bucket)];
  }
  for (auto b : buckets) total += b;
  CHECK(total == 1000);
  CHECK(buckets == expected);
}

TEST_CASE("load_csv maps rows to documents by header") {
  std::string path = "test_corpus_load.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "id,source,published_at,category,title,body\n"
           "n1,apa,2023-01-01,idman,Başlıq,\"Mətn, vergüllə.\"\n"
           "n2,trend,2023-01-02,siyasət,İkinci,Sadə mətn.\n";
  }
  Corpus corpus = load_csv(path);
  REQUIRE(corpus.documents.size() == 2);
  CHECK(corpus.documents[0].id == "n1");
  CHECK(corpus.documents[0].body == "Mətn, vergüllə.");
  CHECK(corpus.documents[1].category == "siyasət");
  CHECK(corpus.labels == std::set<std::string>{"idman", "siyasət"});
  std::remove(path.c_str());
}

TEST_CASE("load_csv rejects a header missing a schema column") {
  std::string path = "test_corpus_badheader.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "id,source,published_at,title,body\nn1,apa,2023,t,b\n";
  }
  CHECK_THROWS_AS(load_csv(path), SchemaError);
  std::remove(path.c_str());
}

TEST_CASE("load_csv rejects duplicate ids and empty categories with row numbers") {
  std::string path = "test_corpus_badrows.csv";
  {
    std::ofstream out(path, std::ios::binary);
    out << "id,source,published_at,category,title,body\n"
           "n1,apa,2023,idman,t,b\n"
           "n1,apa,2023,idman,t,b2\n";
  }
  CHECK_THROWS_AS(load_csv(path), MalformedRow);
  try {
    load_csv(path);
  } catch (const MalformedRow& e) {
    CHECK(e.row == 3);
  }
  std::remove(path.c_str());

  {
    std::ofstream out(path, std::ios::binary);
    out << "id,source,published_at,category,title,body\nn1,apa,2023,,t,b\n";
  }
  CHECK_THROWS_AS(load_csv(path), MalformedRow);
  std::remove(path.c_str());
}

TEST_CASE("write_csv then load_csv round-trips a corpus") {
  Corpus corpus = Corpus::from_documents({
      doc("1", "idman", "Mətn, vergüllə və \"dırnaq\".\nYeni sətir."),
      doc("2", "siyasət", "Sadə."),
  });
  std::string path = "test_corpus_roundtrip.csv";
  write_csv(path, corpus);
  Corpus back = load_csv(path);
  CHECK(back.documents == corpus.documents);
  CHECK(back.labels == corpus.labels);
  std::remove(path.c_str());
}
