#include "syntax/ast.h"

#include <algorithm>
#include <sstream>

namespace hnet::syntax {

int Ast::add(std::string type, Span span, std::string token) {
  AstNode node;
  node.id = static_cast<int>(nodes.size());
  node.type = std::move(type);
  node.token = std::move(token);
  node.span = span;
  nodes.push_back(std::move(node));
  return nodes.back().id;
}

void Ast::append_child(int parent, int child) {
  at(parent).children.push_back(child);
  at(child).parent = parent;
}

std::vector<int> Ast::preorder(int id) const {
  std::vector<int> order;
  std::vector<int> stack{id};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    order.push_back(cur);
    const auto& kids = at(cur).children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

namespace {
std::string located(Span span, const std::string& message) {
  std::ostringstream os;
  os << "[" << span.begin << "," << span.end << ") " << message;
  return os.str();
}
}  // namespace

SyntaxError::SyntaxError(Span span, const std::string& message)
    : DataError("syntax error at " + located(span, message)), span_(span) {}

UnsupportedConstruct::UnsupportedConstruct(Span span, const std::string& construct)
    : DataError("unsupported construct at " + located(span, construct)),
      span_(span),
      construct_(construct) {}

const std::vector<std::string>& node_type_vocabulary() {
  static const std::vector<std::string> vocab = {
      "method_declaration", "method_header", "modifier", "formal_parameters",
      "formal_parameter", "throws_clause", "primitive_type", "type_identifier",
      "scoped_type_identifier", "generic_type", "type_arguments", "array_type",
      "dimensions", "identifier", "block", "variable_declaration", "variable_declarator",
      "return_statement", "break_statement", "continue_statement", "throw_statement",
      "expression_statement", "if_statement", "while_statement", "for_statement",
      "dowhile_statement", "switchcase_statement", "switch_block", "switch_group",
      "switch_label", "try_statement", "try_with_resources_statement", "catch_clause",
      "catch_parameter", "finally_clause", "resource_specification", "resource",
      "ternary_expression", "assignment_expression", "instanceof_expression",
      "cast_expression", "binary_expression", "unary_expression", "update_expression",
      "parenthesized_expression", "method_invocation", "argument_list", "field_access",
      "array_access", "object_creation_expression", "array_creation_expression",
      "array_initializer", "class_literal", "integer_literal", "floating_point_literal",
      "character_literal", "string_literal", "boolean_literal", "null_literal", "this",
      "super", "keyword", "operator", "separator", "sub_token"};
  return vocab;
}

bool is_known_node_type(std::string_view type) {
  const auto& vocab = node_type_vocabulary();
  return std::find(vocab.begin(), vocab.end(), type) != vocab.end();
}

}  // namespace hnet::syntax
