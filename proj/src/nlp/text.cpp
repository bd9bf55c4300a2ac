#include "signbridge/nlp/text.hpp"

#include <array>
#include <cctype>
#include <utility>

#include "signbridge/nlp/resources.hpp"

namespace signbridge::nlp {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_ascii_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// UTF-8 sequences rewritten before any other processing.
constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kUnicodeRewrites = {{
    {"\xE2\x80\x99", "'"},  // right single quotation mark
    {"\xE2\x80\x98", "'"},  // left single quotation mark
    {"\xCA\xBC", "'"},      // modifier letter apostrophe
    {"\xE2\x80\xB2", "'"},  // prime
    {"\xE2\x80\x9C", " "},  // left double quotation mark
    {"\xE2\x80\x9D", " "},  // right double quotation mark
    {"\xE2\x80\x93", " "},  // en dash
    {"\xE2\x80\x94", " "},  // em dash
    {"\xE2\x80\xA6", " "},  // ellipsis
    {"\xC2\xA0", " "},      // no-break space
    {"\xC2\xBF", " "},      // inverted question mark
}};

std::string rewrite_unicode(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    bool replaced = false;
    if (static_cast<unsigned char>(raw[i]) >= 0x80) {
      for (auto [from, to] : kUnicodeRewrites) {
        if (raw.substr(i, from.size()) == from) {
          out += to;
          i += from.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) {
      out += raw[i] == '`' ? '\'' : raw[i];
      ++i;
    }
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

// Drops punctuation, keeping a hyphen only when both neighbours are alphanumeric.
std::string strip_punctuation(std::string_view word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    char c = word[i];
    if (c == '-') {
      if (i > 0 && i + 1 < word.size() && is_ascii_alnum(word[i - 1]) &&
          is_ascii_alnum(word[i + 1])) {
        out += c;
      }
      continue;
    }
    if (is_ascii_punct(c)) continue;
    out += c;
  }
  return out;
}

std::string_view trim_punctuation(std::string_view word) {
  while (!word.empty() && is_ascii_punct(word.front())) word.remove_prefix(1);
  while (!word.empty() && is_ascii_punct(word.back())) word.remove_suffix(1);
  return word;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (auto& c : out) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string normalize_text(std::string_view raw, const ContractionTable& contractions) {
  const std::string rewritten = rewrite_unicode(raw);
  std::string out;
  auto append = [&out](std::string_view piece) {
    for (auto w : split_whitespace(piece)) {
      if (!out.empty()) out += ' ';
      out += w;
    }
  };

  for (auto word : split_whitespace(rewritten)) {
    auto core = trim_punctuation(word);
    const std::string lowered = to_lower(core);
    if (auto expansion = contractions.expand(lowered)) {
      append(*expansion);
      continue;
    }
    if (ends_with(lowered, "'s") && core.size() > 2) core.remove_suffix(2);
    append(strip_punctuation(core));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  for (auto w : split_whitespace(sentence)) {
    tokens.push_back(Token{std::string(w), tokens.size()});
  }
  return tokens;
}

}  // namespace signbridge::nlp
