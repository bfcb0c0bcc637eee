#pragma once

#include <string>
#include <string_view>

#include "common/error.h"

namespace hnet::corpus {

class UnterminatedString : public DataError {
 public:
  explicit UnterminatedString(std::size_t offset)
      : DataError("unterminated string literal starting at offset " + std::to_string(offset)) {}
};

class EmptyAfterPreprocess : public DataError {
 public:
  EmptyAfterPreprocess() : DataError("summary is empty after preprocessing") {}
};

inline constexpr const char* kStrToken = "<str>";

// Replaces every string literal (text blocks too) by <str>. Comments and
// char literals are skipped over untouched.
std::string preprocess_code(std::string_view code);

// First sentence, lowercased, whitespace collapsed; at most `max_words`
// words when max_words > 0.
std::string preprocess_summary(std::string_view text, int max_words = 0);

}  // namespace hnet::corpus
