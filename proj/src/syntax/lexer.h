#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "syntax/ast.h"

namespace hnet::syntax {

enum class TokenKind {
  identifier,
  keyword,
  integer_literal,
  floating_point_literal,
  character_literal,
  string_literal,
  boolean_literal,
  null_literal,
  op,
  separator,
  end,
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  Span span;
};

// Java lexer for the supported subset. Comments are dropped. `>` is never fused
// into shift operators here (the parser does that) so that generic type
// arguments close cleanly; `>=` is still a single token.
// The placeholder `<str>` left by literal replacement lexes as a string literal.
std::vector<Token> lex(std::string_view source);

bool is_java_keyword(std::string_view word);

}  // namespace hnet::syntax
