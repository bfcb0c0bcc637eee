#include "syntax/parser.h"

#include <algorithm>
#include <array>
#include <initializer_list>
#include <optional>

#include "syntax/lexer.h"

namespace hnet::syntax {

namespace {

constexpr std::array<std::string_view, 9> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};

constexpr std::array<std::string_view, 11> kModifiers = {
    "public", "private", "protected", "static", "final", "abstract",
    "synchronized", "native", "strictfp", "transient", "volatile"};

constexpr std::array<std::string_view, 11> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>="};

bool is_primitive(const Token& t) {
  return t.kind == TokenKind::keyword &&
         std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), t.text) != kPrimitiveTypes.end();
}

bool is_modifier(const Token& t) {
  return t.kind == TokenKind::keyword &&
         std::find(kModifiers.begin(), kModifiers.end(), t.text) != kModifiers.end();
}

bool is_literal(TokenKind k) {
  return k == TokenKind::integer_literal || k == TokenKind::floating_point_literal ||
         k == TokenKind::character_literal || k == TokenKind::string_literal ||
         k == TokenKind::boolean_literal || k == TokenKind::null_literal;
}

const char* literal_type(TokenKind k) {
  switch (k) {
    case TokenKind::integer_literal: return "integer_literal";
    case TokenKind::floating_point_literal: return "floating_point_literal";
    case TokenKind::character_literal: return "character_literal";
    case TokenKind::string_literal: return "string_literal";
    case TokenKind::boolean_literal: return "boolean_literal";
    default: return "null_literal";
  }
}

// A fused operator assembled from adjacent tokens (`>` `>` `>=` -> `>>>=`).
struct Fused {
  std::string text;
  std::size_t count = 0;
};

class Parser {
 public:
  Parser(std::string_view src) : toks_(lex(src)) {}

  Ast run() {
    int root = method_declaration();
    if (cur().kind != TokenKind::end) {
      throw SyntaxError(cur().span, "trailing input after method body");
    }
    tree_.root = root;
    return std::move(tree_);
  }

 private:
  // ---- token access ----
  const Token& cur() const { return toks_[pos_]; }
  const Token& at(std::size_t i) const { return toks_[std::min(i, toks_.size() - 1)]; }
  bool is(std::string_view text) const { return cur().kind != TokenKind::end && cur().text == text && !is_literal(cur().kind); }
  bool is_at(std::size_t i, std::string_view text) const {
    const Token& t = at(i);
    return t.kind != TokenKind::end && !is_literal(t.kind) && t.text == text;
  }
  bool adjacent(std::size_t i) const { return at(i).span.end == at(i + 1).span.begin; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(cur().span, msg); }
  [[noreturn]] void unsupported(const std::string& what) const { throw UnsupportedConstruct(cur().span, what); }

  const Token& advance() { return toks_[pos_++]; }

  // ---- node construction ----
  int leaf(std::string type, const Token& t) { return tree_.add(std::move(type), t.span, t.text); }

  int punct(std::string_view text) {
    if (!is(text)) fail("expected '" + std::string(text) + "' but found '" + cur().text + "'");
    const Token& t = advance();
    const char* type = t.kind == TokenKind::keyword ? "keyword"
                       : t.kind == TokenKind::op ? "operator"
                                                 : "separator";
    return leaf(type, t);
  }

  int keyword(std::string_view text) {
    if (!is(text)) fail("expected '" + std::string(text) + "'");
    return leaf("keyword", advance());
  }

  int make(std::string type, const std::vector<int>& kids) {
    Span span{tree_.at(kids.front()).span.begin, tree_.at(kids.back()).span.end};
    int id = tree_.add(std::move(type), span);
    for (int k : kids) tree_.append_child(id, k);
    return id;
  }

  int identifier() {
    if (cur().kind != TokenKind::identifier) fail("expected identifier but found '" + cur().text + "'");
    return leaf("identifier", advance());
  }

  std::optional<Fused> fused_gt(std::size_t i) const {
    // Runs of adjacent '>' optionally terminated by an adjacent '>='.
    if (!is_at(i, ">") && !is_at(i, ">=")) return std::nullopt;
    Fused f;
    std::size_t j = i;
    while (is_at(j, ">")) {
      f.text += ">";
      ++f.count;
      if (!adjacent(j)) return f;
      ++j;
      if (!is_at(j, ">") && !is_at(j, ">=")) return f;
    }
    if (is_at(j, ">=")) {
      f.text += ">=";
      ++f.count;
    }
    return f;
  }

  int fused_leaf(const Fused& f) {
    Span span{cur().span.begin, at(pos_ + f.count - 1).span.end};
    pos_ += f.count;
    return tree_.add("operator", span, f.text);
  }

  void skip_annotations() {
    while (is("@")) {
      ++pos_;
      if (is("interface")) unsupported("annotation_declaration");
      if (cur().kind != TokenKind::identifier) fail("expected annotation name");
      ++pos_;
      while (is(".") && at(pos_ + 1).kind == TokenKind::identifier) pos_ += 2;
      if (is("(")) {
        int depth = 0;
        do {
          if (cur().kind == TokenKind::end) fail("unterminated annotation");
          if (is("(")) ++depth;
          if (is(")")) --depth;
          ++pos_;
        } while (depth > 0);
      }
    }
  }

  // ---- types ----
  // Returns the index just past a type starting at i, without building nodes.
  std::optional<std::size_t> scan_type(std::size_t i, bool allow_diamond = false) const {
    const Token& t = at(i);
    if (is_primitive(t)) {
      ++i;
    } else if (t.kind == TokenKind::identifier) {
      ++i;
      while (is_at(i, ".") && at(i + 1).kind == TokenKind::identifier) i += 2;
      if (is_at(i, "<")) {
        ++i;
        if (allow_diamond && is_at(i, ">")) {
          ++i;
        } else {
          while (true) {
            if (is_at(i, "?")) return std::nullopt;
            auto next = scan_type(i);
            if (!next) return std::nullopt;
            i = *next;
            if (is_at(i, ",")) { ++i; continue; }
            if (is_at(i, ">")) { ++i; break; }
            return std::nullopt;
          }
        }
      }
    } else {
      return std::nullopt;
    }
    while (is_at(i, "[") && is_at(i + 1, "]")) i += 2;
    return i;
  }

  int type_node(bool allow_diamond = false, bool allow_dims = true) {
    int base;
    if (is_primitive(cur())) {
      base = leaf("primitive_type", advance());
    } else if (cur().kind == TokenKind::identifier) {
      base = leaf("type_identifier", advance());
      while (is(".") && at(pos_ + 1).kind == TokenKind::identifier) {
        int dot = punct(".");
        int name = leaf("type_identifier", advance());
        base = make("scoped_type_identifier", {base, dot, name});
      }
      if (is("<")) {
        std::vector<int> args{punct("<")};
        if (!(allow_diamond && is(">"))) {
          while (true) {
            if (is("?")) unsupported("wildcard_type");
            args.push_back(type_node());
            if (is(",")) { args.push_back(punct(",")); continue; }
            break;
          }
        }
        if (!is(">")) fail("expected '>' closing type arguments");
        args.push_back(punct(">"));
        int targs = make("type_arguments", args);
        base = make("generic_type", {base, targs});
      }
    } else {
      fail("expected a type but found '" + cur().text + "'");
    }
    if (allow_dims && is("[") && is_at(pos_ + 1, "]")) {
      std::vector<int> dims;
      while (is("[") && is_at(pos_ + 1, "]")) {
        dims.push_back(punct("["));
        dims.push_back(punct("]"));
      }
      base = make("array_type", {base, make("dimensions", dims)});
    }
    return base;
  }

  // ---- declarations ----
  int method_declaration() {
    skip_annotations();
    std::vector<int> head;
    while (is_modifier(cur()) || is("@")) {
      if (is("@")) { skip_annotations(); continue; }
      head.push_back(leaf("modifier", advance()));
    }
    if (is("<")) unsupported("type_parameters");
    if (is("class") || is("interface") || is("enum")) unsupported("type_declaration");
    bool constructor = cur().kind == TokenKind::identifier && is_at(pos_ + 1, "(");
    if (!constructor) head.push_back(type_node());
    head.push_back(identifier());
    head.push_back(formal_parameters());
    if (is("[")) unsupported("legacy_array_return_dimensions");
    if (is("throws")) {
      std::vector<int> kids{keyword("throws")};
      kids.push_back(type_node());
      while (is(",")) {
        kids.push_back(punct(","));
        kids.push_back(type_node());
      }
      head.push_back(make("throws_clause", kids));
    }
    int header = make("method_header", head);
    if (is(";")) unsupported("method_without_body");
    std::vector<int> kids{header, punct("{")};
    while (!is("}")) {
      if (cur().kind == TokenKind::end) fail("unterminated method body");
      kids.push_back(statement());
    }
    kids.push_back(punct("}"));
    return make("method_declaration", kids);
  }

  int formal_parameters() {
    std::vector<int> kids{punct("(")};
    if (!is(")")) {
      while (true) {
        kids.push_back(formal_parameter());
        if (is(",")) { kids.push_back(punct(",")); continue; }
        break;
      }
    }
    kids.push_back(punct(")"));
    return make("formal_parameters", kids);
  }

  int formal_parameter() {
    std::vector<int> kids;
    skip_annotations();
    while (is("final")) kids.push_back(leaf("modifier", advance()));
    kids.push_back(type_node());
    if (is("...")) unsupported("varargs_parameter");
    kids.push_back(identifier());
    if (is("[")) unsupported("legacy_array_parameter");
    return make("formal_parameter", kids);
  }

  // ---- statements ----
  bool at_local_declaration() const {
    if (is("final")) return true;
    if (is_primitive(cur())) return true;
    if (cur().kind != TokenKind::identifier) return false;
    auto end = scan_type(pos_);
    return end && at(*end).kind == TokenKind::identifier;
  }

  int statement() {
    skip_annotations();
    const Token& t = cur();
    if (t.kind == TokenKind::end) fail("unexpected end of input");
    if (is("{")) return block();
    if (is(";")) unsupported("empty_statement");
    if (t.kind == TokenKind::keyword) {
      const std::string& k = t.text;
      if (k == "if") return if_statement();
      if (k == "while") return while_statement();
      if (k == "for") return for_statement();
      if (k == "do") return dowhile_statement();
      if (k == "switch") return switch_statement();
      if (k == "try") return try_statement();
      if (k == "return") return return_statement();
      if (k == "break") return jump_statement("break_statement", "break");
      if (k == "continue") return jump_statement("continue_statement", "continue");
      if (k == "throw") return throw_statement();
      if (k == "goto") unsupported("goto_statement");
      if (k == "assert") unsupported("assert_statement");
      if (k == "synchronized") unsupported("synchronized_statement");
      if (k == "class" || k == "interface" || k == "enum" || k == "abstract" || k == "static") {
        unsupported("local_type_declaration");
      }
      if (k == "const") unsupported("const");
    }
    if (t.kind == TokenKind::identifier && is_at(pos_ + 1, ":")) unsupported("labeled_statement");
    if (t.kind == TokenKind::identifier && t.text == "yield" && !is_at(pos_ + 1, "=") && !is_at(pos_ + 1, "(")) {
      unsupported("yield_statement");
    }
    if (at_local_declaration()) {
      return variable_declaration(true);
    }
    int expr = expression();
    int semi = punct(";");
    return make("expression_statement", {expr, semi});
  }

  int block() {
    std::vector<int> kids{punct("{")};
    while (!is("}")) {
      if (cur().kind == TokenKind::end) fail("unterminated block");
      kids.push_back(statement());
    }
    kids.push_back(punct("}"));
    return make("block", kids);
  }

  int variable_declaration(bool with_semicolon) {
    std::vector<int> kids;
    while (is("final")) kids.push_back(leaf("modifier", advance()));
    kids.push_back(type_node());
    while (true) {
      std::vector<int> decl{identifier()};
      if (is("[")) unsupported("legacy_array_declarator");
      if (is("=")) {
        decl.push_back(punct("="));
        decl.push_back(is("{") ? array_initializer() : expression());
      }
      kids.push_back(make("variable_declarator", decl));
      if (is(",")) { kids.push_back(punct(",")); continue; }
      break;
    }
    if (with_semicolon) kids.push_back(punct(";"));
    return make("variable_declaration", kids);
  }

  int if_statement() {
    std::vector<int> kids{keyword("if"), punct("(")};
    kids.push_back(expression());
    kids.push_back(punct(")"));
    kids.push_back(statement());
    if (is("else")) {
      kids.push_back(keyword("else"));
      kids.push_back(statement());
    }
    return make("if_statement", kids);
  }

  int while_statement() {
    std::vector<int> kids{keyword("while"), punct("(")};
    kids.push_back(expression());
    kids.push_back(punct(")"));
    kids.push_back(statement());
    return make("while_statement", kids);
  }

  int for_statement() {
    std::vector<int> kids{keyword("for"), punct("(")};
    {
      std::size_t i = pos_;
      while (is_at(i, "final")) ++i;
      auto end = scan_type(i);
      if (end && at(*end).kind == TokenKind::identifier && is_at(*end + 1, ":")) {
        unsupported("enhanced_for_statement");
      }
    }
    if (!is(";")) {
      if (at_local_declaration()) {
        kids.push_back(variable_declaration(false));
      } else {
        kids.push_back(expression());
        while (is(",")) {
          kids.push_back(punct(","));
          kids.push_back(expression());
        }
      }
    }
    kids.push_back(punct(";"));
    if (!is(";")) kids.push_back(expression());
    kids.push_back(punct(";"));
    if (!is(")")) {
      kids.push_back(expression());
      while (is(",")) {
        kids.push_back(punct(","));
        kids.push_back(expression());
      }
    }
    kids.push_back(punct(")"));
    kids.push_back(statement());
    return make("for_statement", kids);
  }

  int dowhile_statement() {
    std::vector<int> kids{keyword("do")};
    kids.push_back(statement());
    kids.push_back(keyword("while"));
    kids.push_back(punct("("));
    kids.push_back(expression());
    kids.push_back(punct(")"));
    kids.push_back(punct(";"));
    return make("dowhile_statement", kids);
  }

  int switch_statement() {
    std::vector<int> kids{keyword("switch"), punct("(")};
    kids.push_back(expression());
    kids.push_back(punct(")"));
    std::vector<int> body{punct("{")};
    while (!is("}")) {
      if (!is("case") && !is("default")) fail("expected 'case' or 'default'");
      std::vector<int> group;
      while (is("case") || is("default")) {
        std::vector<int> label;
        if (is("case")) {
          label.push_back(keyword("case"));
          label.push_back(expression());
        } else {
          label.push_back(keyword("default"));
        }
        if (is("->")) unsupported("switch_rule");
        label.push_back(punct(":"));
        group.push_back(make("switch_label", label));
      }
      while (!is("case") && !is("default") && !is("}")) {
        if (cur().kind == TokenKind::end) fail("unterminated switch");
        group.push_back(statement());
      }
      body.push_back(make("switch_group", group));
    }
    body.push_back(punct("}"));
    kids.push_back(make("switch_block", body));
    return make("switchcase_statement", kids);
  }

  int try_statement() {
    std::vector<int> kids{keyword("try")};
    bool resources = is("(");
    if (resources) kids.push_back(resource_specification());
    kids.push_back(block());
    bool handlers = false;
    while (is("catch")) {
      handlers = true;
      std::vector<int> c{keyword("catch"), punct("(")};
      std::vector<int> param;
      while (is("final")) param.push_back(leaf("modifier", advance()));
      param.push_back(type_node());
      while (is("|")) {
        param.push_back(punct("|"));
        param.push_back(type_node());
      }
      param.push_back(identifier());
      c.push_back(make("catch_parameter", param));
      c.push_back(punct(")"));
      c.push_back(block());
      kids.push_back(make("catch_clause", c));
    }
    if (is("finally")) {
      handlers = true;
      int kw = keyword("finally");
      int body = block();
      kids.push_back(make("finally_clause", {kw, body}));
    }
    if (!handlers && !resources) fail("try without catch or finally");
    return make(resources ? "try_with_resources_statement" : "try_statement", kids);
  }

  int resource_specification() {
    std::vector<int> kids{punct("(")};
    while (true) {
      std::vector<int> res;
      if (at_local_declaration()) {
        while (is("final")) res.push_back(leaf("modifier", advance()));
        res.push_back(type_node());
        res.push_back(identifier());
        res.push_back(punct("="));
        res.push_back(expression());
      } else {
        res.push_back(expression());
      }
      kids.push_back(make("resource", res));
      if (is(";")) {
        kids.push_back(punct(";"));
        if (is(")")) break;
        continue;
      }
      break;
    }
    kids.push_back(punct(")"));
    return make("resource_specification", kids);
  }

  int return_statement() {
    std::vector<int> kids{keyword("return")};
    if (!is(";")) kids.push_back(expression());
    kids.push_back(punct(";"));
    return make("return_statement", kids);
  }

  int jump_statement(const char* type, std::string_view kw) {
    std::vector<int> kids{keyword(kw)};
    if (cur().kind == TokenKind::identifier) unsupported("labeled_jump");
    kids.push_back(punct(";"));
    return make(type, kids);
  }

  int throw_statement() {
    std::vector<int> kids{keyword("throw")};
    kids.push_back(expression());
    kids.push_back(punct(";"));
    return make("throw_statement", kids);
  }

  // ---- expressions ----
  int expression() { return assignment(); }

  std::optional<Fused> assignment_op() const {
    if (auto f = fused_gt(pos_); f && (f->text == ">>=" || f->text == ">>>=")) return f;
    if (cur().kind == TokenKind::op &&
        std::find(kAssignOps.begin(), kAssignOps.end(), cur().text) != kAssignOps.end()) {
      return Fused{cur().text, 1};
    }
    return std::nullopt;
  }

  int assignment() {
    int lhs = ternary();
    if (auto op = assignment_op()) {
      int o = fused_leaf(*op);
      int rhs = assignment();
      return make("assignment_expression", {lhs, o, rhs});
    }
    return lhs;
  }

  int ternary() {
    int cond = binary(0);
    if (is("?")) {
      int q = punct("?");
      int a = expression();
      int colon = punct(":");
      int b = ternary();
      return make("ternary_expression", {cond, q, a, colon, b});
    }
    return cond;
  }

  // Operator at the current position for binary precedence level `level`, or empty.
  std::optional<Fused> binary_op(int level) const {
    static const std::vector<std::vector<std::string_view>> levels = {
        {"||"}, {"&&"}, {"|"}, {"^"}, {"&"}, {"==", "!="},
        {"<", ">", "<=", ">=", "instanceof"}, {"<<", ">>", ">>>"}, {"+", "-"}, {"*", "/", "%"}};
    const auto& ops = levels[static_cast<std::size_t>(level)];
    if (auto f = fused_gt(pos_)) {
      if (std::find(ops.begin(), ops.end(), f->text) != ops.end()) return f;
      return std::nullopt;
    }
    if (cur().kind == TokenKind::op || (cur().kind == TokenKind::keyword && cur().text == "instanceof")) {
      if (std::find(ops.begin(), ops.end(), cur().text) != ops.end()) return Fused{cur().text, 1};
    }
    return std::nullopt;
  }

  int binary(int level) {
    if (level == 10) return unary();
    int left = binary(level + 1);
    while (auto op = binary_op(level)) {
      if (op->text == "instanceof") {
        int kw = keyword("instanceof");
        if (is("final")) unsupported("instanceof_pattern");
        int type = type_node();
        if (cur().kind == TokenKind::identifier) unsupported("instanceof_pattern");
        left = make("instanceof_expression", {left, kw, type});
        continue;
      }
      int o = fused_leaf(*op);
      int right = binary(level + 1);
      left = make("binary_expression", {left, o, right});
    }
    return left;
  }

  bool starts_cast_operand(std::size_t i) const {
    const Token& t = at(i);
    if (t.kind == TokenKind::identifier || is_literal(t.kind)) return true;
    if (t.kind == TokenKind::keyword) return t.text == "this" || t.text == "super" || t.text == "new" || is_primitive(t);
    return is_at(i, "(") || is_at(i, "!") || is_at(i, "~");
  }

  std::optional<std::size_t> matching_paren(std::size_t i) const {
    int depth = 0;
    for (std::size_t j = i; j < toks_.size(); ++j) {
      if (is_at(j, "(")) ++depth;
      if (is_at(j, ")") && --depth == 0) return j;
    }
    return std::nullopt;
  }

  int unary() {
    if (is("+") || is("-") || is("!") || is("~")) {
      int op = punct(cur().text);
      int operand = unary();
      return make("unary_expression", {op, operand});
    }
    if (is("++") || is("--")) {
      int op = punct(cur().text);
      int operand = unary();
      return make("update_expression", {op, operand});
    }
    if (is("(")) {
      if (auto close = matching_paren(pos_); close && is_at(*close + 1, "->")) {
        unsupported("lambda_expression");
      }
      const Token& next = at(pos_ + 1);
      if (is_primitive(next) || next.kind == TokenKind::identifier) {
        auto end = scan_type(pos_ + 1);
        if (end && is_at(*end, ")") &&
            (is_primitive(next) || starts_cast_operand(*end + 1))) {
          int open = punct("(");
          int type = type_node();
          int close = punct(")");
          int operand = unary();
          return make("cast_expression", {open, type, close, operand});
        }
      }
    }
    return postfix();
  }

  int postfix() {
    int e = primary();
    while (is("++") || is("--")) {
      int op = punct(cur().text);
      e = make("update_expression", {e, op});
    }
    return e;
  }

  int argument_list() {
    std::vector<int> kids{punct("(")};
    if (!is(")")) {
      while (true) {
        kids.push_back(expression());
        if (is(",")) { kids.push_back(punct(",")); continue; }
        break;
      }
    }
    kids.push_back(punct(")"));
    return make("argument_list", kids);
  }

  int primary() {
    const Token& t = cur();
    int e;
    if (is_literal(t.kind)) {
      e = leaf(literal_type(t.kind), advance());
    } else if (t.kind == TokenKind::keyword && t.text == "this") {
      if (is_at(pos_ + 1, "(")) unsupported("explicit_constructor_invocation");
      e = leaf("this", advance());
    } else if (t.kind == TokenKind::keyword && t.text == "super") {
      if (is_at(pos_ + 1, "(")) unsupported("explicit_constructor_invocation");
      e = leaf("super", advance());
    } else if (t.kind == TokenKind::identifier) {
      if (is_at(pos_ + 1, "->")) unsupported("lambda_expression");
      if (is_at(pos_ + 1, "::")) unsupported("method_reference");
      int name = identifier();
      if (is("(")) {
        int args = argument_list();
        e = make("method_invocation", {name, args});
      } else {
        e = name;
      }
    } else if (is("(")) {
      int open = punct("(");
      int inner = expression();
      int close = punct(")");
      e = make("parenthesized_expression", {open, inner, close});
    } else if (t.kind == TokenKind::keyword && t.text == "new") {
      e = creation();
    } else if (is_primitive(t) && is_at(pos_ + 1, ".") && is_at(pos_ + 2, "class")) {
      int type = leaf("primitive_type", advance());
      int dot = punct(".");
      int kw = keyword("class");
      e = make("class_literal", {type, dot, kw});
    } else if (t.kind == TokenKind::keyword && t.text == "switch") {
      unsupported("switch_expression");
    } else {
      fail("unexpected token '" + t.text + "' in expression");
    }
    return selectors(e);
  }

  int selectors(int e) {
    while (true) {
      if (is(".")) {
        if (is_at(pos_ + 1, "<")) unsupported("generic_method_invocation");
        if (is_at(pos_ + 1, "new")) unsupported("qualified_instance_creation");
        if (is_at(pos_ + 1, "class")) {
          int dot = punct(".");
          int kw = keyword("class");
          e = make("class_literal", {e, dot, kw});
          continue;
        }
        if (is_at(pos_ + 1, "this")) unsupported("qualified_this");
        int dot = punct(".");
        int name = identifier();
        if (is("(")) {
          int args = argument_list();
          e = make("method_invocation", {e, dot, name, args});
        } else {
          e = make("field_access", {e, dot, name});
        }
      } else if (is("[")) {
        int open = punct("[");
        int index = expression();
        int close = punct("]");
        e = make("array_access", {e, open, index, close});
      } else if (is("::")) {
        unsupported("method_reference");
      } else {
        return e;
      }
    }
  }

  int creation() {
    int kw = keyword("new");
    int type = type_node(/*allow_diamond=*/true, /*allow_dims=*/false);
    if (is("(")) {
      int args = argument_list();
      if (is("{")) unsupported("anonymous_class");
      return make("object_creation_expression", {kw, type, args});
    }
    if (!is("[")) fail("expected '(' or '[' after 'new T'");
    std::vector<int> kids{kw, type};
    bool sized = false;
    while (is("[") && !is_at(pos_ + 1, "]")) {
      sized = true;
      kids.push_back(punct("["));
      kids.push_back(expression());
      kids.push_back(punct("]"));
    }
    if (is("[")) {
      std::vector<int> dims;
      while (is("[") && is_at(pos_ + 1, "]")) {
        dims.push_back(punct("["));
        dims.push_back(punct("]"));
      }
      kids.push_back(make("dimensions", dims));
    }
    if (!sized) {
      if (!is("{")) fail("array creation needs a size or an initializer");
      kids.push_back(array_initializer());
    }
    return make("array_creation_expression", kids);
  }

  int array_initializer() {
    std::vector<int> kids{punct("{")};
    while (!is("}")) {
      kids.push_back(is("{") ? array_initializer() : expression());
      if (is(",")) {
        kids.push_back(punct(","));
        continue;
      }
      break;
    }
    kids.push_back(punct("}"));
    return make("array_initializer", kids);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Ast tree_;
};

}  // namespace

Ast parse_method(std::string_view source) { return Parser(source).run(); }

}  // namespace hnet::syntax
