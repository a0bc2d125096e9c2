#pragma once

#include <cstdint>

#include "aztext/corpus.hpp"

namespace aztext {

// 600 documents, 6 classes, disjoint per-class keyword vocabularies plus a
// handful of shared filler words. Any reasonable classifier separates it.
Corpus make_separable_fixture(std::uint64_t seed = 7);

// 3000 documents, 6 classes, deliberately messy: keywords shared between
// adjacent classes, bursty intruder keywords from neighbor classes, a set of
// style-driven high-count words present in every document (df = N, so TF-IDF
// zeroes them while raw counts are dominated by them), varying document
// length, and a few percent of label noise.
Corpus make_benchmark_corpus(std::uint64_t seed = 99);

}  // namespace aztext
