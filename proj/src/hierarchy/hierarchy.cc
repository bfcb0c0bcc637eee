#include "hierarchy/hierarchy.h"

#include <algorithm>
#include <array>
#include <string_view>

namespace hnet::hierarchy {

namespace {

using syntax::Ast;

constexpr std::array<std::string_view, 6> kSimpleStatements = {
    "variable_declaration", "return_statement", "break_statement",
    "continue_statement", "throw_statement", "expression_statement"};

constexpr std::array<std::string_view, 23> kExpressions = {
    "ternary_expression", "assignment_expression", "instanceof_expression",
    "cast_expression", "binary_expression", "unary_expression", "update_expression",
    "parenthesized_expression", "method_invocation", "field_access", "array_access",
    "object_creation_expression", "array_creation_expression", "class_literal",
    "identifier", "integer_literal", "floating_point_literal", "character_literal",
    "string_literal", "boolean_literal", "null_literal", "this", "super"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

bool is_head_position(const Ast& tree, int node) {
  const auto& n = tree.at(node);
  if (n.parent < 0) return false;
  const auto& parent = tree.at(n.parent);
  const auto& kids = parent.children;
  auto pos = static_cast<std::size_t>(std::find(kids.begin(), kids.end(), node) - kids.begin());
  const std::string& p = parent.type;
  if (p == "if_statement" || p == "while_statement" || p == "switchcase_statement") return pos == 2;
  if (p == "dowhile_statement") return pos == 4;
  if (p == "for_statement") return pos + 1 < kids.size();  // everything but the body
  return false;
}

}  // namespace

const char* category_name(SubtreeCategory c) {
  switch (c) {
    case SubtreeCategory::method_header: return "method_header";
    case SubtreeCategory::simple_statement: return "simple_statement";
    case SubtreeCategory::expression: return "expression";
  }
  return "expression";
}

SubtreeCategory parse_category(const std::string& name) {
  if (name == "method_header") return SubtreeCategory::method_header;
  if (name == "simple_statement") return SubtreeCategory::simple_statement;
  if (name == "expression") return SubtreeCategory::expression;
  throw DataError("unknown subtree category '" + name + "'");
}

const ReducedNode* ReducedTree::find(int id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::size_t ReducedTree::index_of(int id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id == id) return i;
  }
  throw InternalError("no node " + std::to_string(id) + " in reduced tree");
}

std::optional<SubtreeKind> classify_subtree_root(const Ast& tree, int node) {
  const auto& n = tree.at(node);
  if (n.type == "method_header") return SubtreeKind{SubtreeCategory::method_header, "method_header"};
  if (contains(kSimpleStatements, n.type)) {
    std::string variant = n.type;
    if (n.type == "expression_statement") {
      const std::string& inner = tree.at(n.children.front()).type;
      if (inner == "method_invocation") variant = "method_invocation";
      else if (inner == "assignment_expression") variant = "assignment_statement";
    }
    return SubtreeKind{SubtreeCategory::simple_statement, variant};
  }
  if (n.type == "resource_specification") {
    return SubtreeKind{SubtreeCategory::expression, "resource_specification"};
  }
  if (contains(kExpressions, n.type) && is_head_position(tree, node)) {
    return SubtreeKind{SubtreeCategory::expression, n.type};
  }
  return std::nullopt;
}

namespace {

class Extractor {
 public:
  Extractor(const Ast& tree, Hierarchy& out) : tree_(tree), out_(out) {}

  int visit(int node, int parent_tprime) {
    if (auto kind = classify_subtree_root(tree_, node)) {
      Subtree st;
      st.id = static_cast<int>(out_.subtrees.size());
      st.kind = *kind;
      st.root = node;
      st.nodes = tree_.preorder(node);
      st.placeholder = static_cast<int>(tree_.size()) + st.id;
      ReducedNode ph;
      ph.id = st.placeholder;
      ph.type = kPlaceholderType;
      ph.parent = parent_tprime;
      ph.subtree = st.id;
      out_.reduced.nodes.push_back(ph);
      add_unit({st.placeholder, st.id, -1});
      out_.subtrees.push_back(std::move(st));
      return ph.id;
    }
    const auto& n = tree_.at(node);
    ReducedNode rn;
    rn.id = node;
    rn.original = node;
    rn.type = n.type;
    rn.token = n.token;
    rn.parent = parent_tprime;
    std::size_t slot = out_.reduced.nodes.size();
    out_.reduced.nodes.push_back(rn);
    add_unit({node, -1, node});
    std::vector<int> kids;
    for (int c : n.children) kids.push_back(visit(c, node));
    out_.reduced.nodes[slot].children = std::move(kids);
    return node;
  }

 private:
  void add_unit(CoarseUnit u) { out_.alignment.units.push_back(u); }

  const Ast& tree_;
  Hierarchy& out_;
};

}  // namespace

Hierarchy extract_hierarchy(const Ast& tree, const std::vector<int>& sequence) {
  Hierarchy h;
  Extractor ex(tree, h);
  h.reduced.root = ex.visit(tree.root, -1);

  auto& align = h.alignment;
  align.unit_of_subtree.assign(h.subtrees.size(), -1);
  std::vector<int> unit_of_node(tree.size(), -1);
  for (std::size_t u = 0; u < align.units.size(); ++u) {
    const auto& unit = align.units[u];
    if (unit.is_subtree()) {
      align.unit_of_subtree[static_cast<std::size_t>(unit.subtree)] = static_cast<int>(u);
      for (int n : h.subtrees[static_cast<std::size_t>(unit.subtree)].nodes) {
        unit_of_node[static_cast<std::size_t>(n)] = static_cast<int>(u);
      }
    } else {
      unit_of_node[static_cast<std::size_t>(unit.ast_node)] = static_cast<int>(u);
    }
  }
  align.owner.reserve(sequence.size());
  for (int n : sequence) align.owner.push_back(unit_of_node.at(static_cast<std::size_t>(n)));
  return h;
}

}  // namespace hnet::hierarchy
