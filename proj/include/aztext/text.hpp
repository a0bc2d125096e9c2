#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aztext {

using Token = std::string;

// Tokenization and stop-word settings. `stem_suffixes` rides along so a
// serialized model can reproduce the exact pipeline on its own.
struct PipelineConfig {
  std::set<std::string> stopwords;
  bool stemming = false;
  bool keep_digits = false;
  std::uint32_t min_token_len = 1;
  std::vector<std::string> stem_suffixes;

  bool operator==(const PipelineConfig&) const = default;
};

// Lowercases one code point. Azerbaijani rules for the two capital Is
// ('İ' -> 'i', 'I' -> 'ı'); simple Unicode lowercase for Latin, Greek and
// Cyrillic otherwise. Code points outside those scripts pass through.
char32_t fold_case(char32_t cp);

bool is_letter(char32_t cp);

// Case folding only; every non-cased character is untouched.
std::string normalize(std::string_view text);

// Maximal runs of letters (plus ASCII digits when keep_digits) in text order.
// Tokens shorter than min_token_len code points are dropped. Expects
// normalized input; characters are not re-folded here.
std::vector<Token> tokenize(std::string_view text, const PipelineConfig& config);

// Sentence counters. Dot count is the default convention; the terminator-run
// mode counts each maximal run of {. ! ? …} once, which avoids counting
// decimals like "3.14" but deviates from the plain dot-count convention.
std::size_t count_dots(std::string_view text);
std::size_t count_terminator_runs(std::string_view text);

using SentenceCounter = std::function<std::size_t(std::string_view)>;

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens,
                                    const std::set<std::string>& stopwords);

// Longest-match single suffix strip. The result keeps at least 3 code points;
// when no suffix fits, the token is returned unchanged. Suffixes are matched
// longest first (ties broken lexicographically) so the result is
// deterministic regardless of table order.
class Stemmer {
 public:
  Stemmer() = default;
  explicit Stemmer(const std::vector<std::string>& suffixes);
  Token stem(const Token& token) const;

 private:
  struct Suffix {
    std::string bytes;
    std::size_t cp_len;
  };
  std::vector<Suffix> suffixes_;
};

// File loaders: UTF-8, one entry per line, surrounding whitespace trimmed,
// blank lines skipped. Entries are normalized so they match pipeline tokens.
std::set<std::string> load_stopwords(const std::string& path);
std::vector<std::string> load_suffixes(const std::string& path);

// normalize -> tokenize -> remove stop words -> stem (when enabled).
std::vector<Token> pipeline_tokens(std::string_view raw_text, const PipelineConfig& config);

}  // namespace aztext
