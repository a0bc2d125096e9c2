#include "aztext/text.hpp"

#include <algorithm>
#include <fstream>

#include "aztext/errors.hpp"
#include "aztext/utf8.hpp"

namespace aztext {

char32_t fold_case(char32_t cp) {
  // The two capital Is get the Azerbaijani mapping, not the Unicode default.
  if (cp == U'I') return 0x0131;   // I -> ı
  if (cp == 0x0130) return U'i';   // İ -> i
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;  // Latin-1, skip ×
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;                     // Ÿ -> ÿ
  if (cp >= 0x0179 && cp <= 0x017E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x018F) return 0x0259;                     // Ə -> ə
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  return cp;
}

bool is_letter(char32_t cp) {
  if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
  if (cp < 0xC0) return false;
  if (cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;     // Latin-1 letters
  if (cp <= 0x024F) return true;                       // Latin Extended A+B
  if (cp >= 0x0250 && cp <= 0x02AF) return true;       // IPA block (holds ə)
  if (cp >= 0x0370 && cp <= 0x03FF) {                  // Greek
    return cp != 0x0375 && cp != 0x037E && cp != 0x0384 && cp != 0x0385 && cp != 0x0387;
  }
  if (cp >= 0x0400 && cp <= 0x04FF) return true;       // Cyrillic
  return false;
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    utf8::append(out, fold_case(utf8::decode(text, pos)));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text, const PipelineConfig& config) {
  std::vector<Token> tokens;
  std::string current;
  std::size_t current_len = 0;
  auto flush = [&] {
    if (current_len >= config.min_token_len) tokens.push_back(current);
    current.clear();
    current_len = 0;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::decode(text, pos);
    bool token_char = is_letter(cp) || (config.keep_digits && cp >= U'0' && cp <= U'9');
    if (token_char) {
      utf8::append(current, cp);
      ++current_len;
    } else if (!current.empty()) {
      flush();
    }
  }
  if (!current.empty()) flush();
  return tokens;
}

std::size_t count_dots(std::string_view text) {
  // '.' is a single UTF-8 byte and never occurs inside a multi-byte sequence.
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '.'));
}

std::size_t count_terminator_runs(std::string_view text) {
  std::size_t runs = 0;
  bool in_run = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = utf8::decode(text, pos);
    bool terminator = cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x2026;
    if (terminator && !in_run) ++runs;
    in_run = terminator;
  }
  return runs;
}

std::vector<Token> remove_stopwords(const std::vector<Token>& tokens,
                                    const std::set<std::string>& stopwords) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!stopwords.contains(token)) kept.push_back(token);
  }
  return kept;
}

Stemmer::Stemmer(const std::vector<std::string>& suffixes) {
  suffixes_.reserve(suffixes.size());
  for (const auto& s : suffixes) {
    if (!s.empty()) suffixes_.push_back({s, utf8::length(s)});
  }
  std::sort(suffixes_.begin(), suffixes_.end(), [](const Suffix& a, const Suffix& b) {
    if (a.cp_len != b.cp_len) return a.cp_len > b.cp_len;
    return a.bytes < b.bytes;
  });
}

Token Stemmer::stem(const Token& token) const {
  if (suffixes_.empty()) return token;
  const std::size_t token_len = utf8::length(token);
  for (const auto& suffix : suffixes_) {
    if (token_len < suffix.cp_len + 3) continue;
    if (token.size() < suffix.bytes.size()) continue;
    if (token.compare(token.size() - suffix.bytes.size(), suffix.bytes.size(), suffix.bytes) == 0) {
      return token.substr(0, token.size() - suffix.bytes.size());
    }
  }
  return token;
}

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t\r");
    lines.push_back(normalize(line.substr(begin, end - begin + 1)));
  }
  return lines;
}

}  // namespace

std::set<std::string> load_stopwords(const std::string& path) {
  auto lines = read_lines(path);
  return {lines.begin(), lines.end()};
}

std::vector<std::string> load_suffixes(const std::string& path) {
  return read_lines(path);
}

std::vector<Token> pipeline_tokens(std::string_view raw_text, const PipelineConfig& config) {
  auto tokens = tokenize(normalize(raw_text), config);
  if (!config.stopwords.empty()) tokens = remove_stopwords(tokens, config.stopwords);
  if (config.stemming) {
    Stemmer stemmer(config.stem_suffixes);
    for (auto& token : tokens) token = stemmer.stem(token);
  }
  return tokens;
}

}  // namespace aztext
