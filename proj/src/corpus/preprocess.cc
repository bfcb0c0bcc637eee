#include "corpus/preprocess.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <vector>

namespace hnet::corpus {

std::string preprocess_code(std::string_view code) {
  std::string out;
  out.reserve(code.size());
  std::size_t i = 0;
  const std::size_t n = code.size();
  auto starts = [&](std::size_t at, std::string_view s) { return code.substr(at, s.size()) == s; };
  while (i < n) {
    if (starts(i, "//")) {
      std::size_t e = code.find('\n', i);
      if (e == std::string_view::npos) e = n;
      out.append(code.substr(i, e - i));
      i = e;
    } else if (starts(i, "/*")) {
      std::size_t e = code.find("*/", i + 2);
      e = e == std::string_view::npos ? n : e + 2;
      out.append(code.substr(i, e - i));
      i = e;
    } else if (starts(i, "\"\"\"")) {
      std::size_t e = code.find("\"\"\"", i + 3);
      while (e != std::string_view::npos && code[e - 1] == '\\') e = code.find("\"\"\"", e + 1);
      if (e == std::string_view::npos) throw UnterminatedString(i);
      out += kStrToken;
      i = e + 3;
    } else if (code[i] == '"') {
      std::size_t j = i + 1;
      while (j < n && code[j] != '"' && code[j] != '\n') j += code[j] == '\\' ? 2 : 1;
      if (j >= n || code[j] != '"') throw UnterminatedString(i);
      out += kStrToken;
      i = j + 1;
    } else if (code[i] == '\'') {
      std::size_t j = i + 1;
      while (j < n && code[j] != '\'' && code[j] != '\n') j += code[j] == '\\' ? 2 : 1;
      j = std::min(j + 1, n);
      out.append(code.substr(i, j - i));
      i = j;
    } else {
      out += code[i++];
    }
  }
  return out;
}

namespace {

// Words ending in a period that do not end a sentence.
constexpr std::array<std::string_view, 14> kAbbreviations = {
    "e.g.", "i.e.", "etc.", "vs.", "cf.", "approx.", "no.", "e.g.,", "i.e.,", "mr.", "dr.", "st.", "inc.", "jr."};

bool is_abbreviation(std::string word) {
  std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::tolower(c); });
  while (!word.empty() && (word.front() == '(' || word.front() == '"')) word.erase(word.begin());
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

}  // namespace

std::string preprocess_summary(std::string_view text, int max_words) {
  std::vector<std::string> words;
  {
    std::istringstream in{std::string(text)};
    std::string w;
    while (in >> w) words.push_back(w);
  }
  std::vector<std::string> kept;
  for (auto& w : words) {
    kept.push_back(w);
    const char last = w.back();
    if ((last == '.' || last == '!' || last == '?') && !is_abbreviation(w)) break;
  }
  if (max_words > 0 && static_cast<int>(kept.size()) > max_words) kept.resize(static_cast<std::size_t>(max_words));
  std::string out;
  for (auto& w : kept) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  if (out.empty()) throw EmptyAfterPreprocess();
  return out;
}

}  // namespace hnet::corpus
