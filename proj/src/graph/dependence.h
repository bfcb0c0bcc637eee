#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hierarchy/hierarchy.h"
#include "syntax/ast.h"

namespace hnet::graph {

// Intraprocedural control-flow graph over subtrees. Node i < unit_count is
// subtree i; `entry` and `exit` are the two extra markers.
struct Cfg {
  std::size_t unit_count = 0;
  std::vector<std::vector<int>> succ;  // size unit_count + 2, sorted, unique
  int entry = 0;
  int exit = 0;

  std::size_t size() const { return succ.size(); }
  static Cfg with_units(std::size_t units);
  void add_edge(int from, int to);
};

Cfg build_cfg(const syntax::Ast& tree, const hierarchy::Hierarchy& h);

struct DefsUses {
  std::set<std::string> defs;
  std::set<std::string> uses;
};

// Per-subtree variable definitions and uses, collected from the subtree's nodes.
// Identifier names are read from `source` through node spans.
std::vector<DefsUses> collect_defs_uses(const syntax::Ast& tree, const hierarchy::Hierarchy& h,
                                        std::string_view source);

struct DefUse {
  int def = 0;
  int use = 0;
  std::string var;

  auto operator<=>(const DefUse&) const = default;
};

// May-reach reaching definitions by forward fixed-point iteration. `defs_uses`
// is indexed by CFG node and covers the unit nodes (markers define nothing).
std::vector<DefUse> reaching_definitions(const Cfg& cfg, const std::vector<DefsUses>& defs_uses);

// Subtree-id pairs (governor, dependent).
struct UnitEdge {
  int src = 0;
  int dst = 0;

  auto operator<=>(const UnitEdge&) const = default;
};

std::vector<UnitEdge> control_dependence_edges(const syntax::Ast& tree, const hierarchy::Hierarchy& h);
std::vector<UnitEdge> next_subtree_edges(const hierarchy::Hierarchy& h);

enum class EdgeType { ast, cd, df, ns, ast_rev, cd_rev, df_rev, ns_rev };
inline constexpr std::size_t kEdgeTypeCount = 8;

const char* edge_type_name(EdgeType t);
EdgeType parse_edge_type(std::string_view name);
EdgeType reverse_of(EdgeType t);
bool is_reverse(EdgeType t);

struct EdgeFlags {
  bool use_ast = true;
  bool use_ns = true;
  bool use_cd = true;
  bool use_df = true;
  bool reverse = true;

  bool enabled(EdgeType t) const;
  // "ast,ns,cd,df" subset syntax used by the CLI and configs.
  static EdgeFlags parse(std::string_view csv, bool reverse = true);
  std::string to_string() const;
};

struct GraphNode {
  int id = 0;  // T' node id
  std::string type;
  std::optional<hierarchy::SubtreeKind> subtree_kind;
};

struct GraphEdge {
  int src = 0;  // unit indices
  int dst = 0;
  EdgeType type = EdgeType::ast;

  auto operator<=>(const GraphEdge&) const = default;
};

// Nodes are the coarse units in alignment order; edges reference unit indices.
struct HetGraph {
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;

  std::size_t count(EdgeType t) const;
  HetGraph filtered(const EdgeFlags& flags) const;
};

struct SemanticEdges {
  std::vector<UnitEdge> cd;
  std::vector<DefUse> df;
  std::vector<UnitEdge> ns;
};

SemanticEdges analyze(const syntax::Ast& tree, const hierarchy::Hierarchy& h, std::string_view source);

HetGraph assemble_graph(const hierarchy::Hierarchy& h, const SemanticEdges& semantic, const EdgeFlags& flags);

}  // namespace hnet::graph
