#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syntax/ast.h"

namespace hnet::hierarchy {

enum class SubtreeCategory { method_header, simple_statement, expression };

const char* category_name(SubtreeCategory c);
SubtreeCategory parse_category(const std::string& name);

struct SubtreeKind {
  SubtreeCategory category = SubtreeCategory::expression;
  // Rule-table production that fired: e.g. "return_statement", "binary_expression".
  std::string variant;

  bool operator==(const SubtreeKind&) const = default;
};

struct Subtree {
  int id = 0;
  SubtreeKind kind;
  int root = 0;             // node id in T
  std::vector<int> nodes;   // root and all descendants, pre-order
  int placeholder = 0;      // node id in T'
};

inline constexpr const char* kPlaceholderType = "subtree_placeholder";

struct ReducedNode {
  int id = 0;
  int original = -1;  // node id in T, or -1 for a placeholder
  std::string type;
  std::string token;
  std::vector<int> children;
  int parent = -1;
  int subtree = -1;   // subtree id for placeholders

  bool is_placeholder() const { return subtree >= 0; }
};

// T': surviving nodes keep their T ids, placeholders are numbered |T| + subtree id.
struct ReducedTree {
  std::vector<ReducedNode> nodes;  // pre-order
  int root = -1;

  const ReducedNode* find(int id) const;
  std::size_t index_of(int id) const;
};

// A graph-level node: either a subtree (via its placeholder) or a surviving T node.
struct CoarseUnit {
  int tprime_id = 0;
  int subtree = -1;
  int ast_node = -1;

  bool is_subtree() const { return subtree >= 0; }
};

struct AlignmentMap {
  std::vector<CoarseUnit> units;   // pre-order position in T'
  std::vector<int> owner;          // per position of L -> unit index
  std::vector<int> unit_of_subtree;
};

struct Hierarchy {
  ReducedTree reduced;
  std::vector<Subtree> subtrees;
  AlignmentMap alignment;
};

std::optional<SubtreeKind> classify_subtree_root(const syntax::Ast& tree, int node);

// Depth-first extraction; descent stops at every extracted subtree root.
// `sequence` is the linearized node order of `tree`.
Hierarchy extract_hierarchy(const syntax::Ast& tree, const std::vector<int>& sequence);

}  // namespace hnet::hierarchy
