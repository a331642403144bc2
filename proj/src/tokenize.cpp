#include "polarlex/tokenize.hpp"

#include <cctype>

namespace polarlex {

namespace {

bool is_url(const std::string& tok) {
  return tok.rfind("http://", 0) == 0 || tok.rfind("https://", 0) == 0 ||
         tok.rfind("www.", 0) == 0;
}

bool keep_char(unsigned char c) {
  // Non-ASCII bytes pass through so UTF-8 words survive.
  return c >= 0x80 || std::isalnum(c) || c == '#' || c == '_';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    std::string raw;
    raw.swap(tok);
    if (raw[0] == '@' || is_url(raw)) return;
    std::string clean;
    clean.reserve(raw.size());
    bool has_word_char = false;
    for (unsigned char c : raw) {
      if (!keep_char(c)) continue;
      clean += static_cast<char>(c);
      if (c != '#') has_word_char = true;
    }
    if (has_word_char) out.push_back(std::move(clean));
  };
  for (char ch : text) {
    unsigned char c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      flush();
    } else {
      tok += static_cast<char>(std::tolower(c));
    }
  }
  flush();
  return out;
}

std::vector<std::string> extract_hashtags(std::string_view bio_text) {
  std::vector<std::string> tags;
  for (auto& tok : tokenize(bio_text))
    if (tok.size() > 1 && tok[0] == '#') tags.push_back(tok);
  return tags;
}

std::string normalize_text(std::string_view text) {
  std::string out;
  for (auto& tok : tokenize(text)) {
    if (!out.empty()) out += ' ';
    out += tok;
  }
  return out;
}

}  // namespace polarlex
