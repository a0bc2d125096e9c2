#include "aztext/synthetic.hpp"

#include <array>
#include <cstdio>
#include <random>

#include "aztext/dataset.hpp"

namespace aztext {

namespace {

const std::array<std::string, 6> kClassNames = {
    "siyasət", "idman", "mədəniyyət", "iqtisadiyyat", "texnologiya", "cəmiyyət"};

const std::array<std::string, 6> kStems = {"siyas", "idman", "medeni",
                                           "iqtisad", "texno", "cemiy"};

const std::array<std::string, 12> kSuffixes = {"at", "et",  "ol", "ar", "ir", "an",
                                               "li", "si", "da", "in", "ak", "uz"};

const std::array<std::string, 6> kFillers = {"və", "bu", "ki", "üçün", "olaraq", "sonra"};

constexpr char kLetters[] = "abcdefghijklmnopqrstuvxyz";

std::vector<std::vector<std::string>> exclusive_words() {
  std::vector<std::vector<std::string>> words(6);
  for (std::size_t c = 0; c < 6; ++c) {
    for (const auto& suffix : kSuffixes) words[c].push_back(kStems[c] + suffix);
  }
  return words;
}

// 5 pools shared between adjacent class pairs (c, c+1), 8 words each.
std::vector<std::vector<std::string>> shared_pair_words() {
  std::vector<std::vector<std::string>> words(5);
  for (std::size_t p = 0; p < 5; ++p) {
    for (std::size_t j = 0; j < 8; ++j) {
      words[p].push_back(std::string("ortaq") + kLetters[p] + kLetters[j] + "ca");
    }
  }
  return words;
}

std::vector<std::string> neutral_words() {
  std::vector<std::string> words;
  for (std::size_t j = 0; j < 10; ++j) words.push_back(std::string("neytral") + kLetters[j]);
  return words;
}

// Present in every document, so their df equals N and their idf is 0.
std::vector<std::string> common_words() {
  std::vector<std::string> words;
  for (std::size_t j = 0; j < 24; ++j) {
    words.push_back(std::string("adi") + kLetters[j % 12] + kLetters[j / 12 + 12]);
  }
  return words;
}

// A long tail of near-hapax words (names, places, one-off terms). Each lands
// in only a handful of documents, so together they blow the vocabulary up to
// a few thousand entries without carrying any class signal.
std::string rare_word(std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "nadir%04zu", index);
  return buf;
}

constexpr std::size_t kRarePool = 3200;

std::string join_sentences(std::vector<std::string> tokens, std::size_t per_sentence,
                           std::mt19937_64& rng) {
  deterministic_shuffle(tokens, rng);
  std::string body;
  std::size_t in_sentence = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (in_sentence > 0) body += ' ';
    body += tokens[i];
    ++in_sentence;
    if (in_sentence >= per_sentence || i + 1 == tokens.size()) {
      body += '.';
      if (i + 1 < tokens.size()) body += ' ';
      in_sentence = 0;
    }
  }
  return body;
}

std::string date_for(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "2023-%02zu-%02zu", 1 + (i / 28) % 12, 1 + i % 28);
  return buf;
}

}  // namespace

Corpus make_separable_fixture(std::uint64_t seed) {
  auto exclusive = exclusive_words();
  std::mt19937_64 rng(seed);
  std::vector<Document> docs;
  std::size_t serial = 0;
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t k = 0; k < 100; ++k) {
      std::vector<std::string> tokens;
      std::size_t length = 12 + rng() % 16;
      for (std::size_t t = 0; t < length; ++t) {
        tokens.push_back(exclusive[c][rng() % exclusive[c].size()]);
      }
      for (const auto& filler : kFillers) {
        std::size_t reps = 1 + rng() % 2;
        for (std::size_t r = 0; r < reps; ++r) tokens.push_back(filler);
      }
      Document doc;
      char id[16];
      std::snprintf(id, sizeof(id), "sp%04zu", serial);
      doc.id = id;
      doc.source = "synth-separable";
      doc.published_at = date_for(serial);
      doc.category = kClassNames[c];
      doc.body = join_sentences(std::move(tokens), 6, rng);
      doc.title = kStems[c] + " xəbəri " + std::to_string(k);
      docs.push_back(std::move(doc));
      ++serial;
    }
  }
  return Corpus::from_documents(std::move(docs));
}

std::size_t adjacent_class(std::size_t c, std::mt19937_64& rng) {
  if (c == 0) return 1;
  if (c == 5) return 4;
  return rng() % 2 ? c + 1 : c - 1;
}

Corpus make_benchmark_corpus(std::uint64_t seed) {
  auto exclusive = exclusive_words();
  auto shared = shared_pair_words();
  auto neutral = neutral_words();
  auto common = common_words();

  // Mildly imbalanced classes, news-style.
  const std::array<std::size_t, 6> kSizes = {650, 600, 550, 450, 400, 350};

  std::mt19937_64 rng(seed);
  std::vector<Document> docs;
  std::size_t serial = 0;
  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t k = 0; k < kSizes[c]; ++k) {
      std::vector<std::string> tokens;

      std::size_t length = 14 + rng() % 20;
      for (std::size_t t = 0; t < length; ++t) {
        double r = uniform_unit(rng);
        const std::string* word;
        if (r < 0.40) {
          // mostly own keywords, with some leakage from a neighbor so
          // exclusive words are strong but not perfect evidence
          std::size_t source = uniform_unit(rng) < 0.82 ? c : adjacent_class(c, rng);
          word = &exclusive[source][rng() % exclusive[source].size()];
        } else if (r < 0.80) {
          std::size_t pair = c == 0 ? 0 : (c == 5 ? 4 : c - 1 + rng() % 2);
          word = &shared[pair][rng() % shared[pair].size()];
        } else {
          word = &neutral[rng() % neutral.size()];
        }
        tokens.push_back(*word);
        if (uniform_unit(rng) < 0.22) {  // bursty repetition
          std::size_t reps = 2 + rng() % 3;
          for (std::size_t b = 0; b < reps; ++b) tokens.push_back(*word);
        }
      }

      // intruder burst: a neighbor's exclusive keyword repeated several times
      if (uniform_unit(rng) < 0.45) {
        std::size_t neighbor = adjacent_class(c, rng);
        const std::string& word = exclusive[neighbor][rng() % exclusive[neighbor].size()];
        std::size_t reps = 6 + rng() % 7;
        for (std::size_t b = 0; b < reps; ++b) tokens.push_back(word);
      }

      // Ubiquitous boilerplate: every one of the 24 words appears in every
      // document (df = N, idf = 0), but the 4-word block of one class runs
      // heavy. The heavy block usually matches the true class — except for
      // borrowed boilerplate, which copies a random class's profile. Raw
      // counts treat the large borrowed mass as evidence; TF-IDF erases
      // these columns exactly.
      std::size_t profile = c;
      if (uniform_unit(rng) < 0.36) profile = rng() % 6;
      for (std::size_t j = 0; j < common.size(); ++j) {
        bool heavy = j / 4 == profile;
        std::size_t reps = heavy ? 10 + rng() % 5 : 1;
        for (std::size_t b = 0; b < reps; ++b) tokens.push_back(common[j]);
      }
      // Entity-style long tail: a couple of near-unique words per document.
      std::size_t rare_count = 3 + rng() % 3;
      for (std::size_t b = 0; b < rare_count; ++b) tokens.push_back(rare_word(rng() % kRarePool));

      for (const auto& filler : kFillers) {
        std::size_t reps = 1 + rng() % 3;
        for (std::size_t b = 0; b < reps; ++b) tokens.push_back(filler);
      }

      std::string category = kClassNames[c];
      if (uniform_unit(rng) < 0.025) category = kClassNames[rng() % 6];  // label noise

      Document doc;
      char id[16];
      std::snprintf(id, sizeof(id), "bm%05zu", serial);
      doc.id = id;
      doc.source = "synth-benchmark";
      doc.published_at = date_for(serial);
      doc.category = std::move(category);
      doc.body = join_sentences(std::move(tokens), 8, rng);
      doc.title = kStems[c] + " icmalı " + std::to_string(k);
      docs.push_back(std::move(doc));
      ++serial;
    }
  }
  return Corpus::from_documents(std::move(docs));
}

}  // namespace aztext
