#include "syntax/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace hnet::syntax {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
    "class", "const", "continue", "default", "do", "double", "else", "enum",
    "extends", "final", "finally", "float", "for", "goto", "if", "implements",
    "import", "instanceof", "int", "interface", "long", "native", "new", "package",
    "private", "protected", "public", "return", "short", "static", "strictfp", "super",
    "switch", "synchronized", "this", "throw", "throws", "transient", "try", "void",
    "volatile", "while"};

// Longest first so that greedy matching picks the longest operator.
constexpr std::array<std::string_view, 29> kOperators = {
    "<<=", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=",
    "%=", "&=", "|=", "^=", "<<", "+", "-", "*", "/", "%", "&", "|", "^", "!"};

constexpr std::string_view kSingleOps = "~?:=<>";
constexpr std::string_view kSeparators = "(){}[];,.@";

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool ident_part(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    Token end;
    end.kind = TokenKind::end;
    end.span = {src_.size(), src_.size()};
    out.push_back(end);
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        std::size_t start = pos_;
        pos_ += 2;
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) ++pos_;
        if (pos_ + 1 >= src_.size()) throw SyntaxError({start, src_.size()}, "unterminated comment");
        pos_ += 2;
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start) {
    Token t;
    t.kind = kind;
    t.text = std::string(src_.substr(start, pos_ - start));
    t.span = {start, pos_};
    return t;
  }

  Token next() {
    std::size_t start = pos_;
    char c = peek();
    if (src_.substr(pos_, 5) == "<str>") {
      pos_ += 5;
      return make(TokenKind::string_literal, start);
    }
    if (ident_start(c)) {
      while (pos_ < src_.size() && ident_part(src_[pos_])) ++pos_;
      Token t = make(TokenKind::identifier, start);
      if (t.text == "true" || t.text == "false") t.kind = TokenKind::boolean_literal;
      else if (t.text == "null") t.kind = TokenKind::null_literal;
      else if (is_java_keyword(t.text)) t.kind = TokenKind::keyword;
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(start);
    }
    if (c == '"') return quoted(start, '"', TokenKind::string_literal);
    if (c == '\'') return quoted(start, '\'', TokenKind::character_literal);
    if (src_.substr(pos_, 3) == "...") {
      pos_ += 3;
      return make(TokenKind::separator, start);
    }
    for (auto op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return make(TokenKind::op, start);
      }
    }
    if (kSingleOps.find(c) != std::string_view::npos) {
      ++pos_;
      return make(TokenKind::op, start);
    }
    if (kSeparators.find(c) != std::string_view::npos) {
      ++pos_;
      return make(TokenKind::separator, start);
    }
    throw SyntaxError({start, start + 1}, std::string("unexpected character '") + c + "'");
  }

  Token number(std::size_t start) {
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' || peek(1) == 'B')) {
      pos_ += 2;
      while (std::isxdigit(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        is_float = true;
        ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
      } else if (peek() == '.' && !ident_start(peek(1)) && peek(1) != '.') {
        // "1." is a float literal; "1.foo" never occurs in the subset
        is_float = true;
        ++pos_;
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        ++pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    char s = peek();
    if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
      is_float = true;
      ++pos_;
    } else if (s == 'l' || s == 'L') {
      ++pos_;
    }
    return make(is_float ? TokenKind::floating_point_literal : TokenKind::integer_literal, start);
  }

  Token quoted(std::size_t start, char quote, TokenKind kind) {
    if (quote == '"' && src_.substr(pos_, 3) == "\"\"\"") {
      pos_ += 3;
      std::size_t close = src_.find("\"\"\"", pos_);
      if (close == std::string_view::npos) throw SyntaxError({start, src_.size()}, "unterminated text block");
      pos_ = close + 3;
      return make(kind, start);
    }
    ++pos_;
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\n') break;
      if (src_[pos_] == '\\') ++pos_;
      ++pos_;
    }
    if (pos_ >= src_.size() || src_[pos_] != quote) {
      throw SyntaxError({start, pos_}, "unterminated literal");
    }
    ++pos_;
    return make(kind, start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

}  // namespace hnet::syntax
